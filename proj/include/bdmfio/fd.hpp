/**
 * @file fd.hpp
 * @brief Finite-difference helpers: 6th-order central first derivatives and
 *        nested mixed partials for smooth user-supplied maps.
 */
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "bdmfio/common.hpp"

namespace bdmfio::fd {

/// 6th-order central first derivative g′(t0) with step h.
double central7(const std::function<double(double)>& g, double t0, double h);

/**
 * Mixed partial ∂_{dirs} F(z): `dirs` lists coordinate indices with
 * repetition (order = dirs.size()), evaluated by nesting central7 stencils.
 * Accurate to ~h⁶ per level for analytic F; intended for low total orders.
 */
double partial(const std::function<double(const Eigen::VectorXd&)>& F,
               const Eigen::VectorXd& z, const std::vector<int>& dirs,
               double h);

/// Complex-valued variant of `partial`.
cplx cpartial(const std::function<cplx(const Eigen::VectorXd&)>& F,
              const Eigen::VectorXd& z, const std::vector<int>& dirs,
              double h);

}  // namespace bdmfio::fd

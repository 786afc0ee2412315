/**
 * @file expint.hpp
 * @brief Closed-form oscillatory tail integrals ∫_Ξ^∞ ξ^{−r} e^{isξ} dξ.
 *
 * r = 1 is an exponential integral of purely imaginary argument; r ≥ 2
 * follows by a downward recurrence; r ≤ 0 (polynomially growing integrands)
 * uses the Abel-regularized value obtained by repeated integration by parts,
 * which reproduces the distributional evaluation: summed with the matching
 * finite window, polynomial integrands pair to exactly zero off s = 0.
 */
#pragma once

#include <vector>

#include "bdmfio/common.hpp"

namespace bdmfio::quad {

/// E₁-type integral ∫_1^∞ e^{iwt}/t dt for real w ≠ 0.
cplx expint_osc(double w);

/**
 * Tail integrals I_r = ∫_Ξ^∞ ξ^{−r} e^{isξ} dξ for r = r_min..r_max
 * (r_min may be negative: ξ^{|r|} growth, Abel-regularized).
 * Returns values indexed by (r − r_min).  Requires s ≠ 0 and Ξ > 0.
 */
std::vector<cplx> osc_tails(double s, double Xi, int r_min, int r_max);

}  // namespace bdmfio::quad

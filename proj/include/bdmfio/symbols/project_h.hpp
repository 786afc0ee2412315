/**
 * @file project_h.hpp
 * @brief Decomposition of a polynomially bounded function of one frequency
 *        variable into polynomial ⊕ upper ⊕ lower transform-side parts.
 *
 * The polynomial part is identified on the outer band |ξ| ∈ [Ξ/2, Ξ], where
 * decaying parts have died down to first order; decaying nuisance terms
 * ξ^{−1}..ξ^{−3} are fitted alongside and discarded so they cannot
 * contaminate the coefficients.  The remainder decays to first order, i.e.
 * its spatial representative jumps at x = 0; the jump content is captured by
 * rational templates (1±iξ)^{−m} (transforms of x^{m−1}e^{−x}θ(±x)/(m−1)!)
 * matched to the Laurent coefficients at |ξ| = ∞ and to the one-sided value
 * jets at x = 0.  What is left is jump-free, so masking the sign of the
 * spatial variable after an exact discrete transform splits it without
 * aliasing: the plus part is supported in x ≥ 0, the minus part in x ≤ 0,
 * and poly + plus + minus reproduces the input exactly on the grid.
 */
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "bdmfio/common.hpp"

namespace bdmfio::symbols {

struct HExpansion {
  Eigen::VectorXcd poly;         // s_k, k = 0..degree
  std::vector<cplx> plus_part;   // frequency samples, standard grid
  std::vector<cplx> minus_part;  // frequency samples, standard grid
  // rational tail templates baked into the sampled parts: coefficients of
  // (1+iξ)^{−m} (upper) and (1−iξ)^{−m} (lower), m = 1..size; they carry the
  // boundary-jump content whose transforms are known in closed form, so the
  // sampled residue is jump-free and alias-free
  Eigen::VectorXcd plus_tail;
  Eigen::VectorXcd minus_tail;

  cplx eval_poly(double xi) const;
  /// poly + plus + minus interpolated at ξ.
  cplx eval(double xi) const;
  /// Relative spatial mass of the plus part at x < 0 (and mirrored); both
  /// are zero by construction and pinned by tests.
  double purity_defect() const;
};

/// Least-squares polynomial part of f on the outer band (with decaying
/// nuisance terms); coefficients for k = 0..degree.
Eigen::VectorXcd poly_part(const std::function<cplx(double)>& f, int degree);

/**
 * Split f = poly ⊕ plus ⊕ minus.  max_degree bounds the polynomial part;
 * throws h_split.poly_overflow when the remainder after the degree-capped
 * fit still grows toward the band edge.
 */
HExpansion project_H(const std::function<cplx(double)>& f, int max_degree);

}  // namespace bdmfio::symbols

/**
 * @file operator_matrix.hpp
 * @brief Dense matrices of one-dimensional model operators at a frozen
 *        tangential point, over the half-line spectral bases.
 *
 * Domain and codomain are the plus basis φ_k (or its mirror χ_k on ℝ₋);
 * entries are bilinear pairings ⟨basis_i, T basis_k⟩.  Because the bases are
 * real orthonormal, the L² operator norm is the largest singular value, and
 * dilation normalization is conjugation by the unitary κ_λ on coefficients.
 */
#pragma once

#include <Eigen/Dense>

#include "bdmfio/halfline/line_vector.hpp"

namespace bdmfio::normal_ops {

struct OperatorMatrix {
  Eigen::MatrixXcd mat;  // codomain coefficients × domain coefficients
  halfline::Side domain = halfline::Side::Plus;
  halfline::Side codomain = halfline::Side::Plus;
  double xp = 0.0, xip = 1.0;  // frozen tangential point
  double order = 0.0;
  bool dilation_normalized = false;

  halfline::LineVector apply(const halfline::LineVector& u) const;
  /// Largest singular value (L² → L² operator norm on the spectral span).
  double op_norm() const;
  /// κ_λ^{-1} · T · κ_λ on coefficients (λ = ⟨ξ′⟩ for symbol estimates).
  OperatorMatrix normalized(double lambda) const;
};

/// Operator norm measured H^{s_in} → H^{s_out} on the spectral span, via
/// Cholesky factors of the Sobolev Gram matrices I + Σ (D^r)ᵀD^r.
double sobolev_op_norm(const Eigen::MatrixXcd& mat, int s_out, int s_in);

}  // namespace bdmfio::normal_ops

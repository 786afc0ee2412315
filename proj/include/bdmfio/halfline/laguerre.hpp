/**
 * @file laguerre.hpp
 * @brief Orthonormal scaled-Laguerre basis on L²(ℝ₊) with exact
 *        zero-extension Fourier transforms.
 *
 * Basis: φ_k(x) = √2 · L_k(2x) · e^{−x},  k = 0..N−1 (orthonormal, spans the
 * e^{−x}·polynomial Schwartz core).  Key exact facts used throughout:
 *
 *   - quadrature: Gauss nodes/weights exact for e^{−2x}·poly, so the Gram
 *     matrix is the identity to rounding;
 *   - differentiation is closed on the span: φ_k′ = −φ_k − 2Σ_{j<k} φ_j;
 *   - transform of the zero extension:
 *       (e⁺φ_k)^(ξ) = √2·(−1)^k (1−iξ)^k / (1+iξ)^{k+1},
 *     a unimodular-ratio recurrence (ratio −(1−iξ)/(1+iξ)), which the
 *     quadrature kernels exploit via fused dot+advance passes;
 *   - mirrored basis on ℝ₋: χ_k(x) = φ_k(−x), with conjugate transforms.
 */
#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "bdmfio/common.hpp"

namespace bdmfio::halfline {

class HalfLineBasis {
public:
  /// Shared, cached basis instance for a given mode count.
  static const HalfLineBasis& get(int N);

  int size() const { return N_; }
  int quad_size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

  /// φ_0..φ_{N−1}(x) (stable Laguerre-function recurrence).
  void eval_basis(double x, double* out) const;

  /// Value matrix E[i][k] = φ_k(node_i), cached.
  const Eigen::MatrixXd& value_matrix() const { return values_; }

  /// Coefficient-space differentiation matrix D (u′ = D u exactly on span).
  const Eigen::MatrixXd& deriv_matrix() const { return deriv_; }

  /// Gram matrix by quadrature (tests pin this to identity at 1e-10).
  Eigen::MatrixXd gram() const;

  /// Project samples at the quadrature nodes onto coefficients.
  Eigen::VectorXcd project(const Eigen::VectorXcd& node_values) const;

  /// Evaluate a coefficient vector at an arbitrary point.
  cplx eval(const Eigen::VectorXcd& coeff, double x) const;

  /// u^{(j)}(0⁺) of a coefficient vector (exact basis derivative formulas).
  cplx jet(const Eigen::VectorXcd& coeff, int j) const;

  /// Matrix of the unitary dilation κ_λu(x) = λ^{1/2}u(λx) on the basis.
  Eigen::MatrixXd dilation_matrix(double lambda) const;

  // -- exact frequency-side closed forms (zero extension e⁺, mirror e⁻) -----
  /// (e⁺φ_0)^(ξ) = √2/(1+iξ)
  static cplx ft_plus_first(double xi) {
    return std::sqrt(2.0) / cplx(1.0, xi);
  }
  /// ratio (e⁺φ_{k+1})^/(e⁺φ_k)^ = −(1−iξ)/(1+iξ), |ratio| = 1
  static cplx ft_plus_ratio(double xi) {
    return -cplx(1.0, -xi) / cplx(1.0, xi);
  }
  /// (e⁻χ_0)^(ξ) = √2/(1−iξ)   (χ_k(x) = φ_k(−x) on ℝ₋)
  static cplx ft_minus_first(double xi) {
    return std::sqrt(2.0) / cplx(1.0, -xi);
  }
  static cplx ft_minus_ratio(double xi) {
    return -cplx(1.0, xi) / cplx(1.0, -xi);
  }
  /// (e⁺φ_k)^(ξ) for a single k (tests / tail sampling).
  static cplx ft_plus(int k, double xi);
  static cplx ft_minus(int k, double xi);
  /// Transform of a plus-side coefficient vector's zero extension.
  static cplx ft_plus_coeff(const Eigen::VectorXcd& coeff, double xi);
  static cplx ft_minus_coeff(const Eigen::VectorXcd& coeff, double xi);

private:
  explicit HalfLineBasis(int N);

  int N_;
  std::vector<double> nodes_;    // x_i on ℝ₊
  std::vector<double> weights_;  // W_i with ∫₀^∞ f ≈ Σ W_i f(x_i)
  Eigen::MatrixXd values_;       // quad_size × N
  Eigen::MatrixXd deriv_;        // N × N
};

}  // namespace bdmfio::halfline

/**
 * @file line_vector.hpp
 * @brief Discretized functions on ℝ, ℝ₊, ℝ₋ plus boundary-singular duals.
 *
 * Half-line vectors are spectral (coefficients in the scaled-Laguerre basis
 * or its mirror), so boundary jets, derivatives, and the transforms of their
 * zero extensions are exact.  Full-line vectors are grid samples on the
 * shared symmetric Fourier grid, in either the space or frequency domain.
 *
 * Dual vectors carry a regular part plus symbolic Dirac-derivative atoms
 * (j, weight): atoms pair with smooth vectors through exact jet formulas and
 * are never sampled, which preserves the half-line restriction r⁺ killing
 * boundary atoms identically.
 */
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "bdmfio/halfline/fourier_grid.hpp"
#include "bdmfio/halfline/laguerre.hpp"

namespace bdmfio::halfline {

enum class Side { Full, Plus, Minus };
enum class Rep { Space, Frequency };

struct LineVector {
  Side side = Side::Plus;
  Rep rep = Rep::Space;
  // Plus/Minus: spectral coefficients (basis_n modes). Minus-side basis is
  // the mirror χ_k(x) = φ_k(−x).
  Eigen::VectorXcd coeff;
  int basis_n = 0;
  // Full: samples on FourierGrid::standard() (space or frequency domain).
  std::vector<cplx> samples;

  static LineVector plus_from_coeff(Eigen::VectorXcd c);
  static LineVector minus_from_coeff(Eigen::VectorXcd c);
  /// Project a callable on ℝ₊ onto N modes.
  static LineVector plus_from_function(const std::function<cplx(double)>& f,
                                       int N);
  static LineVector full_from_function(const std::function<cplx(double)>& f);

  /// Point evaluation (Plus: x ≥ 0; Minus: x ≤ 0; Full: nearest grid node).
  cplx eval(double x) const;
  /// u^{(j)}(0⁺) for plus-side vectors (exact), (−1-sided) for minus.
  cplx jet(int j) const;
  /// Exact transform of the zero extension e^{±}u at a single frequency.
  cplx ft_extension(double xi) const;
  /// Derivative within the spectral span (plus/minus sides).
  LineVector derivative() const;
};

enum class ExtendRestrict { EPlus, RPlus, EMinus, RMinus };

/// e⁺/e⁻ (half → full grid samples), r⁺/r⁻ (full grid → half coefficients).
LineVector extend_restrict(const LineVector& u, ExtendRestrict op);

/// Discrete Fourier pair on full-line vectors (Plancherel-exact).
LineVector transform(const LineVector& u, bool forward);

/// Unitary dilation κ_λ u(x) = λ^{1/2} u(λx).
LineVector dilate(const LineVector& u, double lambda);

enum class MeasureKind { L2, L2w, Hs, SchwartzSeminorm, Jet };
struct MeasureSpec {
  MeasureKind kind = MeasureKind::L2;
  double s1 = 0.0, s2 = 0.0;  // H(s1,s2) orders
  int delta = 0, gamma = 0;   // sup |x^δ u^{(γ)}|
  int jet_order = 0;
};

/// Norm / seminorm / jet evaluation. L²_w uses w(x) = (1+|x|)^{−2}.
double measure(const LineVector& u, const MeasureSpec& spec);

struct DualVector {
  /// Regular part paired by ⟨v,u⟩ = ∫ v̄... — kept as a plus-side vector
  /// paired bilinearly (∫ v u); empty when absent.
  std::optional<LineVector> regular;
  /// Dirac-derivative atoms Σ w_j δ₀^{(j)}.
  std::vector<std::pair<int, cplx>> atoms;

  /// Bilinear pairing ⟨·,u⟩ with atoms contributing (−1)^j w_j u^{(j)}(0).
  cplx pair(const LineVector& u) const;
  /// Transform of the singular part at frequency ξ: Σ w_j (iξ)^j.
  cplx ft_singular(double xi) const;
};

/// δ₀^{(j)} as a symbolic dual vector.
DualVector delta_rep(int j);

}  // namespace bdmfio::halfline

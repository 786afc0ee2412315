/**
 * @file scalar_symbol.hpp
 * @brief Scalar amplitudes a(x′,x_n,ξ′,ξ_n) with order bookkeeping and the
 *        dilation-scaled seminorms of the boundary symbol classes.
 *
 * The seminorm measured here is
 *   sup |∂^γ_{ξ_n}∂^δ_{x_n}[∂^α_{ξ′}∂^β_{x′} a](x′, x_n/⟨ξ′⟩, ξ′, ξ_n⟨ξ′⟩)|
 *       / (⟨ξ_n⟩^{l−γ} ⟨ξ′⟩^{m−|α|}),
 * i.e. the operator-norm growth of the dilation-normalized amplitude: finite
 * for every tested multi-index exactly when the amplitude behaves like an
 * order-m operator-valued symbol whose fiber action has ξ_n-order l.
 */
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "bdmfio/common.hpp"

namespace bdmfio::symbols {

using Amplitude = std::function<cplx(double, double, double, double)>;

struct ScalarSymbol {
  double order = 0.0;  // m
  Amplitude amplitude;  // a(x′, x_n, ξ′, ξ_n)
  Amplitude principal;  // optional homogeneous degree-m part (empty if unset)
  bool excised = false;
  double support_radius = 1.0;

  bool has_principal() const { return static_cast<bool>(principal); }

  // -- built-in families ----------------------------------------------------
  /// Σ_k c_k ξ_n^k with constant coefficients; order = top degree.
  static ScalarSymbol normal_polynomial(std::vector<cplx> coeffs);
  /// |ξ| = √(ξ′² + ξ_n²) — the classical transmission-violating control.
  static ScalarSymbol absolute_value();
  /// (1 − iξ_n)/(1 + iξ_n): order 0, no principal registered (exercises the
  /// transform-side membership route).
  static ScalarSymbol cayley();
  /// ⟨ξ′⟩-weighted resolvent 1/(⟨ξ′⟩ + iξ_n): order −1.
  static ScalarSymbol resolvent();
  /// x_n ξ_n — polynomial with a base-dependent coefficient.
  static ScalarSymbol normal_product();
};

/// Sample grid entry for seminorm sweeps.
struct SymbolPoint {
  double xp = 0.0, xn = 0.0, xip = 0.0, xin = 0.0;
};

std::vector<SymbolPoint> default_symbol_grid();

/**
 * Dilation-scaled seminorm (see file header); l defaults to m when the
 * caller passes l = order.
 */
double bs_seminorm(const ScalarSymbol& a, int alpha, int beta, int gamma,
                   int delta, double l, const std::vector<SymbolPoint>& grid);

}  // namespace bdmfio::symbols

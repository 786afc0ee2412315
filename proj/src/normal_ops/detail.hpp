/**
 * @file detail.hpp
 * @brief Shared quadrature plumbing for the normal-direction operators:
 *        ladder-quantized oscillatory windows and deep Laurent tail rules.
 *
 * The basis transforms (e⁺φ_k)^(ξ) carry the slow unimodular phase
 * ((1−iξ)/(1+iξ))^k ≈ e^{2ik/ξ} at the window edge, so the generic
 * 4-power tail fit of the quad module is far too shallow for the top modes:
 * the Laurent expansion of the de-oscillated integrand needs ≈ e·2k/Ξ terms
 * to converge.  The rules here fit down to ξ^{−depth} with depth chosen from
 * 2N/Ξ, reuse one positive-η Vandermonde QR for both sides, and integrate
 * the fitted powers with the closed-form (Abel-regularized) tail integrals.
 */
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "bdmfio/common.hpp"
#include "bdmfio/quad/oscillatory.hpp"

namespace bdmfio::normal_ops::detail {

/// x^e for integer e (negative exponents included, negative bases exact).
inline double ipow(double x, int e) {
  double acc = 1.0;
  const int n = e < 0 ? -e : e;
  for (int i = 0; i < n; ++i) acc *= x;
  return e < 0 ? 1.0 / acc : acc;
}

/// Tail fit depth for a given ratio r = 2N/Ξ of top mode phase rate to
/// window edge (truncation error ~ r^depth/depth!).
inline int depth_for(double r) {
  int d = 12;
  if (r > 0.3) d += 3;
  if (r > 1.0) d += 2;
  return d;
}

/// Window whose oscillation rate is quantized to the next power of two, so
/// sweeps over output nodes share a handful of cached windows (and the
/// basis-transform tables built on them).  `nmodes` adds the local phase
/// rate 2·nmodes/(1+ξ²) of the basis transforms to the panel grading.
const quad::OscWindow& ladder_window(double s_abs, int nmodes);

/// Same Ξ, doubled panel count — convergence probes.
quad::OscWindow refine(const quad::OscWindow& win);

/// Cached sample grid + QR factor for a deep one-sided Laurent fit at
/// (Ξ, p, depth): G(η)η^{−p} ≈ Σ_r d_r (Ξ/η)^r on η ∈ [Ξ, 10Ξ], r < R.
struct TailRule {
  double Xi = 256.0;
  int p = 0;      // de-oscillated growth: G = O(η^p)
  int depth = 9;  // deepest fitted power η^{−depth}
  int R = 0;      // fitted powers η^{p}..η^{−depth}
  int S = 0;      // samples
  std::vector<double> eta;  // positive sample magnitudes
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr;
};
const TailRule& tail_rule(double Xi, int p, int depth);

/**
 * One-sided tail ∫_Ξ^∞ F dξ (sign=+1) or ∫_{−∞}^{−Ξ} F dξ (sign=−1).
 * `Fv` holds F(sign·η_q) at the rule's samples; s is the asymptotic phase
 * slope of F on that side (F ≈ e^{isξ}·Laurent).  Growing powers are
 * Abel-regularized; at s = 0 non-integrable powers must carry negligible
 * coefficients (throws quadrature.tail_divergence otherwise).
 */
cplx tail_apply(const TailRule& rule, double s, int sign, const cplx* Fv);

/// ∫_ℝ F dξ: ladder window + deep tails on both sides (no 1/2π factor).
/// `nmodes` is the top basis mode carried by F (0 when none): it sets the
/// tail depth through depth_for(2·nmodes/Ξ).
cplx integrate_full(const std::function<cplx(double)>& F, double s_plus,
                    double s_minus, int p, int nmodes = 0);

}  // namespace bdmfio::normal_ops::detail

#include "bdmfio/normal_ops/model_ops.hpp"

namespace bdmfio::normal_ops::detail {

/**
 * Plain-route value table of Op^ψ_n(a)e⁺ on the quadrature nodes: row i is
 * the output at x = out_sign·node_i, column k the input mode φ_k.  `dense`
 * doubles the window panel count (convergence probes).
 */
Eigen::MatrixXcd plain_values(const symbols::ScalarSymbol& a,
                              const NormalPhase& ph, double xp, double xip,
                              int N, int out_sign, bool dense);

}  // namespace bdmfio::normal_ops::detail

/**
 * @file oscillatory.hpp
 * @brief Tail-corrected quadrature for oscillatory frequency integrals
 *        ∫ F(ξ) dξ with F = amplitude · e^{iθ(ξ)}, amplitude of polynomial
 *        growth and θ asymptotically linear (θ ≈ s±·ξ + O(1) as ξ → ±∞).
 *
 * Strategy: Gauss–Legendre panels on a finite window [−Ξ, Ξ] at
 * oscillation-resolving density, plus analytic tails.  On each side the
 * integrand is de-oscillated by e^{−is±ξ}, fitted to a short Laurent
 * expansion Σ c_m ξ^{−m} (m from −p down to 3, p = growth order), and the
 * tail contributions ∫_Ξ^∞ ξ^{−m} e^{is±ξ} dξ are added in closed form
 * (Abel-regularized for m ≤ 0).  Polynomially growing integrands therefore
 * integrate to their distributional values: pure polynomials × e^{isξ} give
 * exactly zero for s ≠ 0, matching the boundary-restriction calculus.
 */
#pragma once

#include <functional>
#include <vector>

#include "bdmfio/common.hpp"

namespace bdmfio::quad {

/// Cached Gauss–Legendre rule on [−1,1].
void gauss_legendre(int n, std::vector<double>& nodes,
                    std::vector<double>& weights);

/// Frequency window with panelized nodes resolving oscillation rate s_max.
struct OscWindow {
  double Xi = 256.0;
  std::vector<double> nodes;
  std::vector<double> weights;

  /**
   * Build a window: Ξ shrinks as the oscillation rate grows (the analytic
   * tails gain a 1/s factor per power, so accuracy is kept), capped to
   * [xi_min, xi_cap]; panel width resolves e^{i s_max ξ} with GL-12 panels.
   */
  static OscWindow build(double s_max, double xi_cap = 256.0,
                         double xi_min = 16.0);
};

struct TailSpec {
  double s_plus = 0.0;   // asymptotic phase slope as ξ → +∞
  double s_minus = 0.0;  // asymptotic phase slope as ξ → −∞
  int growth = -1;       // p with F·e^{∓is±ξ} = O(ξ^p)
};

/**
 * One-sided analytic tail ∫_{Ξ}^{∞} F dξ (sign=+1) or ∫_{−∞}^{−Ξ} F dξ
 * (sign=−1), via Laurent fit of the de-oscillated integrand.
 */
cplx tail_correction(const std::function<cplx(double)>& F, double s,
                     int sign, int growth, double Xi);

/**
 * Joint two-sided tail for non-oscillatory integrands (both slopes zero):
 * ∫_Ξ^∞ [F(ξ) + F(−ξ)] dξ in the principal-value sense, so odd ξ^{−1}-type
 * parts cancel between the sides.  Throws when the combination diverges.
 */
cplx tail_correction_pair_pv(const std::function<cplx(double)>& F, int growth,
                             double Xi);

/// Full integral ∫_ℝ F dξ = window quadrature + both tails.
cplx osc_integrate(const std::function<cplx(double)>& F, const TailSpec& tail,
                   const OscWindow& win);

}  // namespace bdmfio::quad

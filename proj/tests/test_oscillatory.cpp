// Tail-corrected oscillatory quadrature: exponential-integral tails against
// brute-force oracles, closed-form frequency integrals, and the exact
// annihilation of polynomial integrands away from the stationary slope.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bdmfio/halfline/laguerre.hpp"
#include "bdmfio/quad/expint.hpp"
#include "bdmfio/quad/oscillatory.hpp"

using namespace bdmfio;
using namespace bdmfio::quad;

namespace {

// Contour-rotated oracle for ∫_Ξ^∞ ξ^{−r} e^{isξ} dξ, r ≥ 1.  Rotate the
// path into the half-plane where e^{isξ} decays (ξ = Ξ + iσu, σ = sign s):
//   ∫_Ξ^∞ = iσ e^{isΞ} ∫_0^∞ e^{−|s|u} (Ξ + iσu)^{−r} du,
// a smooth exponentially decaying real integral, done by dense Simpson.
cplx brute_tail(double s, double Xi, int r) {
  const double sigma = (s > 0.0) ? 1.0 : -1.0;
  const double U = 60.0 / std::abs(s);
  const int n = 1 << 20;
  const double h = U / n;
  cplx acc = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double u = k * h;
    const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    acc += w * std::exp(-std::abs(s) * u) /
           std::pow(cplx(Xi, sigma * u), r);
  }
  acc *= h / 3.0;
  return cplx(0.0, sigma) * std::exp(kI * s * Xi) * acc;
}

}  // namespace

TEST_CASE("expint_osc matches the brute-force oscillatory integral") {
  for (double w : {0.7, 2.0, -3.5, 25.0, -100.0}) {
    const cplx oracle = brute_tail(w, 1.0, 1);
    CHECK(std::abs(expint_osc(w) - oracle) < 1e-8);
  }
  // small-argument series region sanity: E₁(−iw) imaginary part tends to
  // −sign(w)·π/2 + w-odd corrections; just cross-check the oracle there too
  CHECK(std::abs(expint_osc(0.05) - brute_tail(0.05, 1.0, 1)) < 1e-7);
}

TEST_CASE("osc_tails decaying orders match the oracle") {
  for (double s : {1.3, -2.0, 8.0}) {
    for (double Xi : {16.0, 64.0}) {
      const auto I = osc_tails(s, Xi, -3, 3);
      for (int r = 1; r <= 3; ++r)
        CHECK(std::abs(I[r + 3] - brute_tail(s, Xi, r)) < 1e-9);
    }
  }
}

TEST_CASE("Abel-regularized growing tails cancel the finite window") {
  // For a pure power ξ^p·e^{isξ} the regularized value of ∫_ℝ is 0 when
  // s ≠ 0 (distributionally it is a derivative of δ at s).  So the window
  // integral ∫_{−Ξ}^{Ξ} must exactly cancel the two tails.
  for (double s : {0.9, -1.7, 4.0}) {
    for (int p : {0, 1, 2}) {
      const double Xi = 32.0;
      // window part by closed form: ∫_{−Ξ}^{Ξ} ξ^p e^{isξ} dξ via
      // antiderivatives; easier to Simpson it very finely.
      const int n = 400000;
      const double h = 2.0 * Xi / n;
      cplx win = 0.0;
      for (int k = 0; k <= n; ++k) {
        const double x = -Xi + k * h;
        const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
        win += w * std::pow(x, p) * std::exp(kI * s * x);
      }
      win *= h / 3.0;
      const auto Iplus = osc_tails(s, Xi, -p, -p);
      const auto Iminus = osc_tails(-s, Xi, -p, -p);
      const double sgn = (p % 2 == 0) ? 1.0 : -1.0;
      const cplx total = win + Iplus[0] + sgn * Iminus[0];
      CHECK(std::abs(total) < 1e-9 * std::pow(Xi, p + 1));
    }
  }
}

TEST_CASE("osc_integrate reproduces e^{-x} from its transform") {
  // u(x) = (1/2π)∫ e^{ixξ}/(1+iξ) dξ = e^{−x}θ(x).  The integrand decays
  // like ξ^{−1} only, so the analytic tails carry real weight.
  for (double x : {0.0, 0.25, 1.0, 3.0, 7.0}) {
    auto F = [x](double xi) {
      return std::exp(kI * x * xi) / cplx(1.0, xi) / kTwoPi;
    };
    TailSpec tail;
    tail.s_plus = x;
    tail.s_minus = x;
    tail.growth = -1;
    const auto win = OscWindow::build(std::abs(x));
    const cplx got = osc_integrate(F, tail, win);
    const double want = (x == 0.0) ? 0.5 : std::exp(-x);
    CHECK(std::abs(got - want) < 1e-7);
  }
  // and on the shadow side x < 0 the integral vanishes
  for (double x : {-0.5, -2.0, -9.0}) {
    auto F = [x](double xi) {
      return std::exp(kI * x * xi) / cplx(1.0, xi) / kTwoPi;
    };
    TailSpec tail;
    tail.s_plus = x;
    tail.s_minus = x;
    tail.growth = -1;
    const auto win = OscWindow::build(std::abs(x));
    CHECK(std::abs(osc_integrate(F, tail, win)) < 1e-7);
  }
}

TEST_CASE("polynomial amplitudes integrate to zero off the boundary") {
  // ∫ ξ^p e^{ixξ} dξ is a Dirac derivative at x; for x ≠ 0 the regularized
  // quadrature must return (near-)exact zero.  This is the discrete form of
  // half-line restriction killing boundary atoms.
  for (double x : {0.5, 1.5, -2.0}) {
    for (int p : {0, 1, 2, 3}) {
      auto F = [x, p](double xi) {
        return std::pow(xi, p) * std::exp(kI * x * xi);
      };
      TailSpec tail;
      tail.s_plus = x;
      tail.s_minus = x;
      tail.growth = p;
      const auto win = OscWindow::build(std::abs(x));
      const cplx got = osc_integrate(F, tail, win);
      CHECK(std::abs(got) < 1e-6 * std::pow(win.Xi, p));
    }
  }
}

TEST_CASE("osc_integrate handles basis transforms with mixed slopes") {
  // (e⁺φ_0)^(ξ) = √2/(1+iξ): inverting at x > 0 recovers √2·e^{−x}·... i.e.
  // φ_0(x) = √2 e^{−x}; at x < 0 it recovers 0.
  for (double x : {0.3, 1.2, 4.0}) {
    auto F = [x](double xi) {
      return std::exp(kI * x * xi) *
             bdmfio::halfline::HalfLineBasis::ft_plus(0, xi) / kTwoPi;
    };
    TailSpec tail;
    tail.s_plus = x;
    tail.s_minus = x;
    tail.growth = -1;
    const auto win = OscWindow::build(std::abs(x));
    CHECK(std::abs(osc_integrate(F, tail, win) -
                   std::sqrt(2.0) * std::exp(-x)) < 1e-7);
  }
}

TEST_CASE("Gaussian integrand needs no tails and matches the closed form") {
  // ∫ e^{−ξ²/2} dξ = √(2π); decay is super-polynomial so growth=-1,s=0 tails
  // contribute nothing measurable.
  auto F = [](double xi) { return cplx(std::exp(-0.5 * xi * xi), 0.0); };
  TailSpec tail;  // zero slopes
  tail.growth = -1;
  const auto win = OscWindow::build(0.0);
  CHECK(std::abs(osc_integrate(F, tail, win) - std::sqrt(kTwoPi)) < 1e-10);
}

TEST_CASE("non-oscillatory divergent tails are refused") {
  auto F = [](double xi) { return cplx(xi * xi, 0.0); };
  CHECK_THROWS_AS((void)tail_correction(F, 0.0, +1, 2, 32.0), CheckError);
  // 1/|ξ| decay without sign flip cannot cancel in principal value
  auto G = [](double xi) { return cplx(1.0 / std::sqrt(1.0 + xi * xi), 0.0); };
  CHECK_THROWS_AS((void)tail_correction_pair_pv(G, -1, 32.0), CheckError);
  // whereas genuinely odd 1/ξ-type decay does: PV ∫ ξ/(1+ξ²) dξ = 0
  auto H = [](double xi) { return cplx(xi / (1.0 + xi * xi), 0.0); };
  TailSpec tail;
  tail.growth = -1;
  const auto win = OscWindow::build(0.0);
  CHECK(std::abs(osc_integrate(H, tail, win)) < 1e-8);
}

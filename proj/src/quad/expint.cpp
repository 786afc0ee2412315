#include "bdmfio/quad/expint.hpp"

#include <cmath>
#include <stdexcept>

namespace bdmfio::quad {

namespace {

// E₁(z) for z = −iw (Re z = 0): series −γ − ln z + Σ (−1)^{k+1} z^k /(k·k!)
// for small |z|, modified Lentz continued fraction otherwise.
cplx e1_complex(cplx z) {
  const double gamma_e = 0.57721566490153286060651209;
  if (std::abs(z) <= 4.0) {
    cplx sum = 0.0, term = 1.0;
    for (int k = 1; k <= 60; ++k) {
      term *= -z / static_cast<double>(k);
      sum += term / static_cast<double>(k);
      if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return -gamma_e - std::log(z) - sum;
  }
  // CF: E₁(z) = e^{−z} / (z + 1/(1 + 1/(z + 2/(1 + 2/(z + …)))))
  const double tiny = 1e-300;
  cplx b = z + 1.0, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int i = 1; i <= 200; ++i) {
    const double a = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const cplx del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-z);
}

}  // namespace

cplx expint_osc(double w) {
  if (w == 0.0)
    throw std::invalid_argument("expint_osc: w must be nonzero");
  // ∫_1^∞ e^{iwt}/t dt = E₁(−iw)
  return e1_complex(cplx(0.0, -w));
}

std::vector<cplx> osc_tails(double s, double Xi, int r_min, int r_max) {
  if (s == 0.0 || Xi <= 0.0)
    throw std::invalid_argument("osc_tails: need s != 0 and Xi > 0");
  std::vector<cplx> out(r_max - r_min + 1);
  const cplx eisX = std::exp(kI * s * Xi);
  // I₁ = ∫_Ξ^∞ e^{isξ}/ξ dξ = ∫_1^∞ e^{i(sΞ)t}/t dt
  const cplx I1 = expint_osc(s * Xi);
  auto put = [&](int r, cplx v) {
    if (r >= r_min && r <= r_max) out[r - r_min] = v;
  };
  if (std::abs(s) * Xi <= std::max(4.0, 0.5 * r_max)) {
    put(1, I1);
    // upward: I_r = [Ξ^{1−r} e^{isΞ} + i s I_{r−1}]/(r−1); the partial sums
    // cancel by at most e^{|s|Ξ}, harmless with |s|Ξ ≤ r_max/2
    cplx prev = I1;
    for (int r = 2; r <= r_max; ++r) {
      const cplx cur =
          (std::pow(Xi, 1.0 - r) * eisX + kI * s * prev) / (r - 1.0);
      put(r, cur);
      prev = cur;
    }
  } else {
    // fast phase: the recurrence loses ~log10((sΞ)^r/r!) digits, so use
    // I_r = Ξ^{1−r} E_r(−isΞ) with the continued fraction
    //   E_n(z) = e^{−z}/(z+n − 1·n/(z+n+2 − 2(n+1)/(z+n+4 − …)))
    // (modified Lentz), which is stable for |z| ≳ 1 off the negative axis.
    const cplx z = -kI * (s * Xi);
    const double tiny = 1e-300;
    for (int r = std::max(1, r_min); r <= r_max; ++r) {
      cplx b = z + static_cast<double>(r), c = 1.0 / tiny, d = 1.0 / b, h = d;
      for (int i = 1; i <= 400; ++i) {
        const double a = -static_cast<double>(i) * (r - 1 + i);
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const cplx del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
      }
      put(r, std::pow(Xi, 1.0 - r) * eisX * h);
    }
  }
  // upward from I₀ (Abel-regularized): I₀ = −e^{isΞ}/(is);
  // I_{−p} = −Ξ^p e^{isΞ}/(is) − (p/(is)) I_{−(p−1)}
  if (r_min <= 0) {
    cplx cur = -eisX / (kI * s);
    put(0, cur);
    for (int p = 1; p <= -r_min; ++p) {
      cur = -std::pow(Xi, p) * eisX / (kI * s) -
            (static_cast<double>(p) / (kI * s)) * cur;
      put(-p, cur);
    }
  }
  return out;
}

}  // namespace bdmfio::quad

/**
 * @file assemble.cpp
 * @brief Quadrature plumbing and the plain assembly route for the
 *        normal-direction model operators.
 *
 * Every operator here is an oscillatory frequency integral
 *   (1/2π) ∫ e^{iθ(x,ξ)} a(x′,x,ξ′,ξ) ĝ(ξ) dξ
 * with θ asymptotically linear in ξ.  The finite window uses the panelized
 * Gauss–Legendre rules of the quad module (quantized to a power-of-two
 * oscillation ladder so node sweeps share windows); the tails use the deep
 * Laurent rules of detail.hpp, Abel-regularized for growing integrands.
 */
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "bdmfio/halfline/laguerre.hpp"
#include "bdmfio/kernels.hpp"
#include "bdmfio/quad/expint.hpp"
#include "detail.hpp"

namespace bdmfio::normal_ops {

using halfline::HalfLineBasis;
using quad::OscWindow;

namespace detail {

namespace {
std::mutex cache_mutex;
}

namespace {

// Graded panelization: the integrands carry e^{isξ} (rate s everywhere)
// times the basis-transform phases ((1−iξ)/(1+iξ))^k (local rate
// 2k/(1+ξ²), fast only near ξ = 0), so panel widths widen with |ξ|.
OscWindow build_graded(double s, int nmodes) {
  OscWindow out;
  // keep the window edge at Ξ ≥ max(64, nmodes) so the deep tail fits stay
  // inside the convergence region of the mode-transform phases e^{2ik/ξ}
  // (the fitted powers resolve e^{i(2k/Ξ)(Ξ/η)} only while 2k/Ξ ≲ 2)
  const double floor = std::max(64.0, static_cast<double>(nmodes));
  out.Xi = std::max(floor, std::min(256.0, 1024.0 / (1.0 + s)));
  std::vector<double> gx, gw;
  quad::gauss_legendre(12, gx, gw);
  std::vector<double> edges{0.0};
  while (edges.back() < out.Xi) {
    const double xl = edges.back();
    const double rate = s + 2.0 * nmodes / (1.0 + xl * xl);
    // width cap 1: GL-12 panels stay ~1e-15 accurate against amplitude
    // poles at unit distance (e.g. 1/(1 ± iξ))
    edges.push_back(std::min(out.Xi, xl + std::min(1.0, 4.0 / (1.0 + rate))));
  }
  for (int side : {-1, +1})
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
      const double mid = side * 0.5 * (edges[e] + edges[e + 1]);
      const double h = edges[e + 1] - edges[e];
      for (std::size_t q = 0; q < gx.size(); ++q) {
        out.nodes.push_back(mid + 0.5 * h * gx[q]);
        out.weights.push_back(0.5 * h * gw[q]);
      }
    }
  return out;
}

}  // namespace

const OscWindow& ladder_window(double s_abs, int nmodes) {
  int lev = 0;
  double s = 0.5;
  while (s < s_abs && lev < 13) {
    s *= 2.0;
    ++lev;
  }
  int nlev = 0;
  while ((1 << nlev) < nmodes) ++nlev;
  std::lock_guard<std::mutex> lock(cache_mutex);
  static std::map<std::pair<int, int>, OscWindow> cache;
  const auto key = std::make_pair(lev, nmodes > 0 ? nlev : -1);
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, build_graded(s, nmodes > 0 ? (1 << nlev) : 0))
             .first;
  return it->second;
}

OscWindow refine(const OscWindow& win) {
  OscWindow out;
  out.Xi = win.Xi;
  // recover each 12-point panel from its node group, then halve it
  std::vector<double> gx, gw;
  quad::gauss_legendre(12, gx, gw);
  const int npanels = static_cast<int>(win.nodes.size()) / 12;
  out.nodes.reserve(win.nodes.size() * 2);
  out.weights.reserve(win.weights.size() * 2);
  for (int pnl = 0; pnl < npanels; ++pnl) {
    double mid = 0.0, h = 0.0;
    for (int q = 0; q < 12; ++q) {
      mid += win.nodes[12 * pnl + q] / 12.0;
      h += win.weights[12 * pnl + q];
    }
    for (int half : {0, 1}) {
      const double hmid = mid + (half - 0.5) * 0.5 * h;
      for (std::size_t q = 0; q < gx.size(); ++q) {
        out.nodes.push_back(hmid + 0.25 * h * gx[q]);
        out.weights.push_back(0.25 * h * gw[q]);
      }
    }
  }
  return out;
}

const TailRule& tail_rule(double Xi, int p, int depth) {
  std::lock_guard<std::mutex> lock(cache_mutex);
  static std::map<std::tuple<long, int, int>, TailRule> cache;
  const auto key = std::make_tuple(std::lround(Xi * 16.0), p, depth);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  TailRule rule;
  rule.Xi = Xi;
  rule.p = p;
  rule.depth = depth;
  rule.R = p + depth + 1;
  if (rule.R > 0) {
    rule.S = rule.R + 8;
    rule.eta.resize(rule.S);
    Eigen::MatrixXd V(rule.S, rule.R);
    for (int q = 0; q < rule.S; ++q) {
      const double v = 0.1 + 0.9 * (q + 0.5) / rule.S;
      rule.eta[q] = Xi / v;
      double vm = 1.0;
      for (int r = 0; r < rule.R; ++r) {
        V(q, r) = vm;
        vm *= v;
      }
    }
    rule.qr.compute(V);
  }
  return cache.emplace(key, std::move(rule)).first->second;
}

cplx tail_apply(const TailRule& rule, double s, int sign, const cplx* Fv) {
  if (rule.R <= 0) return 0.0;
  // de-oscillate on the sampled side: G(η) = F(sign·η) e^{−is·sign·η}
  Eigen::VectorXd gr(rule.S), gi(rule.S);
  for (int q = 0; q < rule.S; ++q) {
    const double eta = rule.eta[q];
    const cplx G =
        Fv[q] * std::exp(-kI * s * (sign * eta)) / ipow(eta, rule.p);
    gr(q) = G.real();
    gi(q) = G.imag();
  }
  const Eigen::VectorXd dr = rule.qr.solve(gr), di = rule.qr.solve(gi);
  // c_m = d_r Ξ^r with m = r − p; for sign = −1 the substitution ξ = −η
  // turns the tail into Σ c_m ∫_Ξ^∞ η^{−m} e^{−isη} dη
  const double se = sign > 0 ? s : -s;
  if (se != 0.0) {
    const std::vector<cplx> I =
        quad::osc_tails(se, rule.Xi, -rule.p, rule.depth);
    cplx tail = 0.0;
    double Xr = 1.0;
    for (int r = 0; r < rule.R; ++r) {
      tail += cplx(dr(r), di(r)) * Xr * I[r];
      Xr *= rule.Xi;
    }
    return tail;
  }
  // non-oscillatory side: only m ≥ 2 converges
  double scale = 1e-300;
  for (int r = 0; r < rule.R; ++r)
    scale = std::max(scale, std::hypot(dr(r), di(r)));
  cplx tail = 0.0;
  for (int r = 0; r < rule.R; ++r) {
    const int m = r - rule.p;
    const cplx c = cplx(dr(r), di(r)) * ipow(rule.Xi, r);
    if (m >= 2)
      tail += static_cast<double>(sign) * c * ipow(rule.Xi, 1 - m) /
              static_cast<double>(m - 1);
    else if (std::abs(c) > 1e-8 * scale * ipow(rule.Xi, r))
      throw CheckError("quadrature.tail_divergence",
                       "non-oscillatory tail with non-decaying integrand");
  }
  return tail;
}

cplx integrate_full(const std::function<cplx(double)>& F, double s_plus,
                    double s_minus, int p, int nmodes) {
  const OscWindow& win =
      ladder_window(std::max(std::abs(s_plus), std::abs(s_minus)), nmodes);
  cplx acc = 0.0;
  for (std::size_t q = 0; q < win.nodes.size(); ++q)
    acc += win.weights[q] * F(win.nodes[q]);
  const TailRule& rule = tail_rule(win.Xi, p, depth_for(2.0 * nmodes / win.Xi));
  if (rule.R > 0) {
    std::vector<cplx> Fp(rule.S), Fm(rule.S);
    for (int q = 0; q < rule.S; ++q) {
      Fp[q] = F(rule.eta[q]);
      Fm[q] = F(-rule.eta[q]);
    }
    acc += tail_apply(rule, s_plus, +1, Fp.data());
    acc += tail_apply(rule, s_minus, -1, Fm.data());
  }
  return acc;
}

Eigen::MatrixXcd plain_values(const symbols::ScalarSymbol& a,
                              const NormalPhase& ph, double xp, double xip,
                              int N, int out_sign, bool dense) {
  const auto& basis = HalfLineBasis::get(N);
  const int M = basis.quad_size();
  const int p = static_cast<int>(std::ceil(a.order)) - 1;
  Eigen::MatrixXcd vals(M, N);
  for (int i = 0; i < M; ++i) {
    // nodes beyond every mode's support contribute nothing to the
    // projection; skipping them avoids resolving extreme oscillation rates
    if (basis.value_matrix().row(i).cwiseAbs().maxCoeff() < 1e-14) {
      vals.row(i).setZero();
      continue;
    }
    const double x = out_sign * basis.nodes()[i];
    const double sp = ph.slope_plus(x), sm = ph.slope_minus(x);
    const OscWindow* win =
        &ladder_window(std::max(std::abs(sp), std::abs(sm)), N);
    OscWindow refined;
    if (dense) {
      refined = refine(*win);
      win = &refined;
    }
    const int Q = static_cast<int>(win->nodes.size());
    // window factor (weight · phase · amplitude) shared by all columns;
    // the basis transforms advance through the unimodular ratio recurrence
    std::vector<cplx> E(Q), v(Q), r(Q);
    for (int q = 0; q < Q; ++q) {
      const double xi = win->nodes[q];
      E[q] = win->weights[q] * std::exp(kI * ph.theta(x, xi)) *
             a.amplitude(xp, x, xip, xi);
      v[q] = HalfLineBasis::ft_plus_first(xi);
      r[q] = HalfLineBasis::ft_plus_ratio(xi);
    }
    const int depth = depth_for(2.0 * N / win->Xi);
    const TailRule& rule = tail_rule(win->Xi, p, depth);
    const int S = rule.S;
    std::vector<cplx> Ap(S), Am(S), vp(S), vm(S), rp(S), rm(S), Fp(S), Fm(S);
    for (int q = 0; q < S; ++q) {
      const double eta = rule.eta[q];
      Ap[q] = std::exp(kI * ph.theta(x, eta)) * a.amplitude(xp, x, xip, eta);
      Am[q] =
          std::exp(kI * ph.theta(x, -eta)) * a.amplitude(xp, x, xip, -eta);
      vp[q] = HalfLineBasis::ft_plus_first(eta);
      rp[q] = HalfLineBasis::ft_plus_ratio(eta);
      vm[q] = HalfLineBasis::ft_plus_first(-eta);
      rm[q] = HalfLineBasis::ft_plus_ratio(-eta);
    }
    for (int k = 0; k < N; ++k) {
      const cplx wsum = kernels::dot_and_advance(E.data(), v.data(), r.data(),
                                                 static_cast<std::size_t>(Q));
      for (int q = 0; q < S; ++q) {
        Fp[q] = Ap[q] * vp[q];
        Fm[q] = Am[q] * vm[q];
        vp[q] *= rp[q];
        vm[q] *= rm[q];
      }
      vals(i, k) = (wsum + tail_apply(rule, sp, +1, Fp.data()) +
                    tail_apply(rule, sm, -1, Fm.data())) /
                   kTwoPi;
    }
  }
  return vals;
}

}  // namespace detail

NormalPhase NormalPhase::linear_phase() {
  NormalPhase ph;
  ph.theta = [](double x, double xi) { return x * xi; };
  ph.slope_plus = [](double x) { return x; };
  ph.slope_minus = [](double x) { return x; };
  ph.linear = true;
  return ph;
}

NormalPhase NormalPhase::scaled(double f) {
  NormalPhase ph;
  ph.theta = [f](double x, double xi) { return f * x * xi; };
  ph.slope_plus = [f](double x) { return f * x; };
  ph.slope_minus = [f](double x) { return f * x; };
  ph.linear = (f == 1.0);
  return ph;
}

NormalPhase NormalPhase::freeze(const geometry::PhaseFunction& psi, double xp,
                                double xip) {
  geometry::Vec x0(2), t0(2);
  x0 << xp, 0.0;
  t0 << xip, 1.0;
  const double base = psi.eval(x0, t0);  // ψ_∂: ξ_n-independent at x_n = 0
  NormalPhase ph;
  ph.theta = [psi, xp, xip, base](double x, double xi) {
    geometry::Vec X(2), T(2);
    X << xp, x;
    T << xip, xi;
    return psi.eval(X, T) - base;
  };
  // asymptotic slopes from the degree-1 homogeneity: θ = s±ξ + O(1)
  auto slope = [theta = ph.theta](double x, double sign) {
    const double R = 1e6;
    return (theta(x, sign * 2.0 * R) - theta(x, sign * R)) / (sign * R);
  };
  ph.slope_plus = [slope](double x) { return slope(x, +1.0); };
  ph.slope_minus = [slope](double x) { return slope(x, -1.0); };
  return ph;
}

Eigen::VectorXcd op_apply_points(const symbols::ScalarSymbol& a,
                                 const NormalPhase& ph, double xp, double xip,
                                 const halfline::LineVector& u,
                                 const std::vector<double>& xs) {
  const int p = static_cast<int>(std::ceil(a.order)) - 1;
  Eigen::VectorXcd out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    auto F = [&](double xi) {
      return std::exp(kI * ph.theta(x, xi)) * a.amplitude(xp, x, xip, xi) *
             u.ft_extension(xi);
    };
    out(i) = detail::integrate_full(F, ph.slope_plus(x), ph.slope_minus(x), p,
                                    u.basis_n) /
             kTwoPi;
  }
  return out;
}

OperatorMatrix op_psi_n(const symbols::ScalarSymbol& a, const NormalPhase& ph,
                        double xp, double xip, int N, bool verify) {
  const auto& basis = HalfLineBasis::get(N);
  const Eigen::MatrixXcd vals =
      detail::plain_values(a, ph, xp, xip, N, +1, false);
  Eigen::MatrixXcd mat(N, N);
  for (int k = 0; k < N; ++k) mat.col(k) = basis.project(vals.col(k));
  if (verify) {
    const Eigen::MatrixXcd vals2 =
        detail::plain_values(a, ph, xp, xip, N, +1, true);
    Eigen::MatrixXcd mat2(N, N);
    for (int k = 0; k < N; ++k) mat2.col(k) = basis.project(vals2.col(k));
    if ((mat2 - mat).cwiseAbs().maxCoeff() > 1e-6)
      throw CheckError("op.quadrature_nonconvergence",
                       "doubling the panel density moved matrix entries");
  }
  OperatorMatrix out;
  out.mat = std::move(mat);
  out.xp = xp;
  out.xip = xip;
  out.order = a.order;
  return out;
}

double fit_slope(const std::vector<double>& xips,
                 const std::vector<double>& values) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = static_cast<int>(xips.size());
  for (int i = 0; i < n; ++i) {
    const double lx = std::log(japanese_bracket(xips[i]));
    const double ly = std::log(std::max(values[i], 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace bdmfio::normal_ops

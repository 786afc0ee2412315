#include "bdmfio/symbols/transmission.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "bdmfio/fd.hpp"
#include "bdmfio/halfline/fourier_grid.hpp"

namespace bdmfio::symbols {

namespace {
using halfline::FourierGrid;
constexpr double kJetStep = 0.02;
constexpr double kSymStep = 0.05;
}  // namespace

std::vector<BoundaryPoint> default_boundary_grid() {
  std::vector<BoundaryPoint> grid;
  for (double xp : {-0.7, 0.0, 0.4})
    for (double xip : {-8.0, -2.0, 1.0, 4.0, 16.0}) grid.push_back({xp, xip});
  return grid;
}

TransmissionReport check_transmission(const ScalarSymbol& a,
                                      const std::vector<BoundaryPoint>& grid,
                                      const TransmissionCaps& caps) {
  TransmissionReport rep;
  if (a.has_principal()) {
    // symmetry route: even/odd matching of the principal part between the
    // two conormal directions (ξ′, ξ_n) = (0, ±1)
    rep.route = "symmetry";
    const long m = std::lround(a.order);
    double worst = 0.0;
    for (const auto& pt : grid) {
      for (int k = 0; k <= caps.max_k; ++k)
        for (int al = 0; al <= caps.max_alpha; ++al)
          for (int be = 0; be <= caps.max_beta; ++be) {
            if (k + al + be > caps.max_total) continue;
            std::vector<int> dirs;
            for (int i = 0; i < k; ++i) dirs.push_back(1);   // x_n
            for (int i = 0; i < al; ++i) dirs.push_back(2);  // ξ′
            for (int i = 0; i < be; ++i) dirs.push_back(0);  // x′
            Eigen::VectorXd z(3);
            z << pt.xp, 0.0, 0.0;
            auto at = [&](double xin) {
              auto g = [&](const Eigen::VectorXd& v) {
                return a.principal(v(0), v(1), v(2), xin);
              };
              return dirs.empty() ? g(z) : fd::cpartial(g, z, dirs, kSymStep);
            };
            const cplx lhs = at(1.0), rhs = at(-1.0);
            const double sign = ((m - al) % 2 == 0) ? 1.0 : -1.0;
            const double res =
                std::abs(lhs - sign * rhs) / (1.0 + std::abs(lhs) + std::abs(rhs));
            worst = std::max(worst, res);
          }
    }
    rep.worst = worst;
    rep.pass = worst <= 1e-7;
    return rep;
  }
  if (!a.amplitude)
    throw CheckError("transmission.missing_principal",
                     "symbol has neither a principal part nor an amplitude");
  // transform route: the boundary family ξ_n ↦ a(x′,0,ξ′,⟨ξ′⟩ξ_n) must split
  // into polynomial ⊕ upper ⊕ lower parts with exact grid reconstruction
  rep.route = "transform";
  const auto& g = FourierGrid::standard();
  const int degree = std::max(0, static_cast<int>(std::floor(a.order + 1e-9)));
  double worst = 0.0;
  try {
    for (const auto& pt : grid) {
      const double lam = japanese_bracket(pt.xip);
      auto h = [&](double xin) {
        return a.amplitude(pt.xp, 0.0, pt.xip, lam * xin);
      };
      const HExpansion exp = project_H(h, degree);
      worst = std::max(worst, exp.purity_defect());
      double scale = 1e-30;
      for (int j = 0; j < g.size(); j += 97)
        scale = std::max(scale, std::abs(h(g.xi(j))));
      for (int j = 0; j < g.size(); j += 97)
        worst = std::max(worst, std::abs(h(g.xi(j)) - exp.eval(g.xi(j))) / scale);
    }
    rep.worst = worst;
    rep.pass = worst <= 1e-6;
  } catch (const CheckError&) {
    rep.worst = 1.0;
    rep.pass = false;
  }
  return rep;
}

TaylorSplit taylor_split(const ScalarSymbol& a, int N) {
  if (!a.amplitude)
    throw CheckError("transmission.missing_principal",
                     "taylor_split needs an evaluable amplitude");
  const int degree = std::max(0, static_cast<int>(std::floor(a.order + 1e-9)));

  // c[j] at a fixed (x′, ξ′): polynomial part (degree-capped) of the j-th
  // normal derivative of a at x_n = 0, as coefficients in ξ_n
  struct Cache {
    std::map<std::pair<double, double>, std::vector<Eigen::VectorXcd>> jets;
    std::mutex mu;
  };
  auto cache = std::make_shared<Cache>();
  const Amplitude amp = a.amplitude;
  auto jets_at = [cache, amp, N, degree](double xp, double xip) {
    {
      std::lock_guard<std::mutex> lk(cache->mu);
      auto it = cache->jets.find({xp, xip});
      if (it != cache->jets.end()) return it->second;
    }
    std::vector<Eigen::VectorXcd> c(N + 1);
    for (int j = 0; j <= N; ++j) {
      auto dj = [&](double xin) {
        if (j == 0) return amp(xp, 0.0, xip, xin);
        Eigen::VectorXd z(1);
        z << 0.0;
        const std::vector<int> dirs(j, 0);
        return fd::cpartial(
            [&](const Eigen::VectorXd& v) { return amp(xp, v(0), xip, xin); },
            z, dirs, kJetStep);
      };
      c[j] = poly_part(dj, degree);
    }
    std::lock_guard<std::mutex> lk(cache->mu);
    cache->jets[{xp, xip}] = c;
    return c;
  };

  // divergence guard: successive normal jets must not outgrow the earlier
  // ones by more than the 2^j cutoff schedule can absorb — a jump of many
  // orders of magnitude between consecutive jet sizes means the truncated
  // sum no longer approximates the amplitude it came from
  for (const auto& pt : default_boundary_grid()) {
    const auto c = jets_at(pt.xp, pt.xip);
    double ref = 1.0;
    for (int j = 0; j <= N; ++j) {
      const double cmax =
          c[j].size() > 0 ? c[j].cwiseAbs().maxCoeff() : 0.0;
      if (cmax > 1e6 * ref)
        throw CheckError("taylor.series_divergence",
                         "normal jets grow faster than the cutoff schedule tames");
      ref = std::max(ref, cmax);
    }
  }

  TaylorSplit out;
  out.a_d.order = a.order;
  out.a_d.excised = a.excised;
  out.a_d.support_radius = a.support_radius;
  out.a_d.amplitude = [jets_at, N](double xp, double xn, double xip, double xin) {
    const auto c = jets_at(xp, xip);
    cplx acc = 0.0;
    double xpow = 1.0, fact = 1.0;
    for (int j = 0; j <= N; ++j) {
      if (j > 0) {
        xpow *= xn;
        fact *= j;
      }
      const double cut = bump_phi(std::ldexp(xn, j));
      if (cut != 0.0) {
        cplx pj = 0.0;
        double p = 1.0;
        for (int k = 0; k < c[j].size(); ++k) {
          pj += c[j](k) * p;
          p *= xin;
        }
        acc += xpow / fact * pj * cut;
      }
    }
    return acc;
  };
  out.a_0.order = a.order;
  out.a_0.excised = a.excised;
  out.a_0.support_radius = a.support_radius;
  const Amplitude ad = out.a_d.amplitude;
  out.a_0.amplitude = [amp, ad](double xp, double xn, double xip, double xin) {
    return amp(xp, xn, xip, xin) - ad(xp, xn, xip, xin);
  };
  return out;
}

}  // namespace bdmfio::symbols

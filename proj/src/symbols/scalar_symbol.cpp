#include "bdmfio/symbols/scalar_symbol.hpp"

#include <cmath>

#include "bdmfio/fd.hpp"

namespace bdmfio::symbols {

ScalarSymbol ScalarSymbol::normal_polynomial(std::vector<cplx> coeffs) {
  ScalarSymbol s;
  s.order = coeffs.empty() ? 0.0 : static_cast<double>(coeffs.size() - 1);
  s.amplitude = [coeffs](double, double, double, double xin) {
    cplx acc = 0.0;
    double p = 1.0;
    for (const cplx& c : coeffs) {
      acc += c * p;
      p *= xin;
    }
    return acc;
  };
  if (!coeffs.empty()) {
    const cplx top = coeffs.back();
    const int deg = static_cast<int>(coeffs.size()) - 1;
    s.principal = [top, deg](double, double, double, double xin) {
      return top * std::pow(xin, deg);
    };
  }
  return s;
}

ScalarSymbol ScalarSymbol::absolute_value() {
  ScalarSymbol s;
  s.order = 1.0;
  s.amplitude = [](double, double, double xip, double xin) {
    return cplx(std::hypot(xip, xin), 0.0);
  };
  s.principal = s.amplitude;
  return s;
}

ScalarSymbol ScalarSymbol::cayley() {
  ScalarSymbol s;
  s.order = 0.0;
  s.amplitude = [](double, double, double, double xin) {
    return (cplx(1.0, -xin)) / (cplx(1.0, xin));
  };
  return s;
}

ScalarSymbol ScalarSymbol::resolvent() {
  ScalarSymbol s;
  s.order = -1.0;
  s.amplitude = [](double, double, double xip, double xin) {
    return 1.0 / cplx(japanese_bracket(xip), xin);
  };
  return s;
}

ScalarSymbol ScalarSymbol::normal_product() {
  ScalarSymbol s;
  s.order = 1.0;
  s.amplitude = [](double, double xn, double, double xin) {
    return cplx(xn * xin, 0.0);
  };
  s.principal = s.amplitude;
  return s;
}

std::vector<SymbolPoint> default_symbol_grid() {
  std::vector<SymbolPoint> grid;
  for (double xp : {-0.5, 0.0, 0.5})
    for (double xn : {0.0, 0.3, 0.9})
      for (double xip : {-16.0, -4.0, -1.0, 1.0, 4.0, 16.0})
        for (double xin : {-8.0, -2.0, -0.5, 0.5, 2.0, 8.0})
          grid.push_back({xp, xn, xip, xin});
  return grid;
}

double bs_seminorm(const ScalarSymbol& a, int alpha, int beta, int gamma,
                   int delta, double l, const std::vector<SymbolPoint>& grid) {
  double sup = 0.0;
  for (const auto& pt : grid) {
    const double lam = japanese_bracket(pt.xip);
    // inner derivative b = ∂^α_{ξ′}∂^β_{x′} a, then the dilation-normalized
    // composite B(x_n, ξ_n) = b(x′, x_n/λ, ξ′, ξ_n λ), then ∂^γ_{ξ_n}∂^δ_{x_n}B
    auto composite = [&](const Eigen::VectorXd& w) {
      // w = (x_n, ξ_n) in normalized coordinates
      Eigen::VectorXd q(2);
      q << pt.xp, pt.xip;
      std::vector<int> inner;
      for (int i = 0; i < beta; ++i) inner.push_back(0);
      for (int i = 0; i < alpha; ++i) inner.push_back(1);
      auto base = [&](const Eigen::VectorXd& v) {
        return a.amplitude(v(0), w(0) / lam, v(1), w(1) * lam);
      };
      if (inner.empty()) return base(q);
      return fd::cpartial(base, q, inner, 2e-2);
    };
    std::vector<int> outer;
    for (int i = 0; i < delta; ++i) outer.push_back(0);
    for (int i = 0; i < gamma; ++i) outer.push_back(1);
    Eigen::VectorXd w(2);
    w << pt.xn, pt.xin;
    const cplx val =
        outer.empty() ? composite(w) : fd::cpartial(composite, w, outer, 2e-2);
    const double denom = std::pow(japanese_bracket(w(1)), l - gamma) *
                         std::pow(lam, a.order - alpha);
    sup = std::max(sup, std::abs(val) / denom);
  }
  return sup;
}

}  // namespace bdmfio::symbols

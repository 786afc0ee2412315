// Scalar amplitudes: boundary symmetry checking, the polynomial ⊕ upper ⊕
// lower frequency split, the normal-Taylor decomposition, and scaled
// seminorm sweeps.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bdmfio/halfline/fourier_grid.hpp"
#include "bdmfio/symbols/project_h.hpp"
#include "bdmfio/symbols/scalar_symbol.hpp"
#include "bdmfio/symbols/transmission.hpp"

using namespace bdmfio;
using namespace bdmfio::symbols;
using halfline::FourierGrid;

TEST_CASE("xi_n passes the symmetry route: 1 = (-1)^1 * (-1)") {
  auto a = ScalarSymbol::normal_polynomial({0.0, 1.0});
  auto rep = check_transmission(a, default_boundary_grid());
  CHECK(rep.pass);
  CHECK(rep.route == "symmetry");
  CHECK(rep.worst < 1e-9);
}

TEST_CASE("|xi| fails at order zero derivatives: 1 != -1") {
  auto a = ScalarSymbol::absolute_value();
  auto rep = check_transmission(a, default_boundary_grid());
  CHECK_FALSE(rep.pass);
  CHECK(rep.route == "symmetry");
  // residual |1 - (-1)*1| / (1 + 1 + 1) = 2/3 at k=alpha=beta=0
  CHECK(rep.worst == doctest::Approx(2.0 / 3.0).epsilon(1e-6));
}

TEST_CASE("x_n*xi_n passes (boundary value vanishes, jet matches oddly)") {
  auto a = ScalarSymbol::normal_product();
  auto rep = check_transmission(a, default_boundary_grid());
  CHECK(rep.pass);
}

TEST_CASE("Cayley-type quotient passes through the transform route") {
  auto a = ScalarSymbol::cayley();
  auto rep = check_transmission(a, default_boundary_grid());
  CHECK(rep.pass);
  CHECK(rep.route == "transform");
}

TEST_CASE("symbol with neither principal nor amplitude is rejected") {
  ScalarSymbol a;
  CHECK_THROWS_WITH_AS(check_transmission(a, default_boundary_grid()),
                       doctest::Contains("transmission.missing_principal"),
                       CheckError);
}

TEST_CASE("project_H of xi^2 is purely polynomial [0,0,1]") {
  auto h = [](double xi) { return cplx(xi * xi, 0.0); };
  auto e = project_H(h, 2);
  REQUIRE(e.poly.size() == 3);
  CHECK(std::abs(e.poly(0)) < 1e-8);
  CHECK(std::abs(e.poly(1)) < 1e-8);
  CHECK(std::abs(e.poly(2) - 1.0) < 1e-10);
  double rem = 0.0;
  for (const cplx& v : e.plus_part) rem = std::max(rem, std::abs(v));
  for (const cplx& v : e.minus_part) rem = std::max(rem, std::abs(v));
  CHECK(rem < 1e-6);
}

TEST_CASE("project_H of 1/(1+i xi) lands entirely in the upper part") {
  auto h = [](double xi) { return 1.0 / cplx(1.0, xi); };
  auto e = project_H(h, 0);
  CHECK(std::abs(e.poly(0)) < 1e-8);
  CHECK(e.purity_defect() < 1e-10);
  double minus = 0.0;
  for (const cplx& v : e.minus_part) minus = std::max(minus, std::abs(v));
  CHECK(minus < 1e-6);
  // upper part reproduces the transform of e^{-x} on the half line
  const auto& g = FourierGrid::standard();
  double err = 0.0;
  for (int j = 0; j < g.size(); j += 57)
    err = std::max(err, std::abs(e.plus_part[j] - 1.0 / cplx(1.0, g.xi(j))));
  CHECK(err < 1e-6);
}

TEST_CASE("project_H splits 2xi/(1+xi^2) by partial fractions") {
  // 2xi/(1+xi^2) = i/(1+i xi) + (-i)/(1-i xi): first term upper, second lower
  auto h = [](double xi) { return cplx(2.0 * xi / (1.0 + xi * xi), 0.0); };
  auto e = project_H(h, 0);
  CHECK(std::abs(e.poly(0)) < 1e-8);
  const auto& g = FourierGrid::standard();
  double errp = 0.0, errm = 0.0;
  for (int j = 0; j < g.size(); j += 57) {
    const double xi = g.xi(j);
    errp = std::max(errp, std::abs(e.plus_part[j] - kI / cplx(1.0, xi)));
    errm = std::max(errm, std::abs(e.minus_part[j] + kI / cplx(1.0, -xi)));
  }
  CHECK(errp < 1e-6);
  CHECK(errm < 1e-6);
}

TEST_CASE("project_H refuses a quadratic under a degree-0 cap") {
  auto h = [](double xi) { return cplx(xi * xi, 0.0); };
  CHECK_THROWS_WITH_AS(project_H(h, 0),
                       doctest::Contains("h_split.poly_overflow"), CheckError);
}

TEST_CASE("project_H is idempotent on its own reconstruction") {
  auto h = [](double xi) {
    return cplx(xi, 0.5) + 2.0 * xi / (1.0 + xi * xi) + 1.0 / cplx(1.0, xi);
  };
  auto e1 = project_H(h, 1);
  auto e2 = project_H([&](double xi) { return e1.eval(xi); }, 1);
  CHECK((e1.poly - e2.poly).cwiseAbs().maxCoeff() < 1e-8);
  const auto& g = FourierGrid::standard();
  double err = 0.0;
  for (int j = 0; j < g.size(); j += 31) {
    err = std::max(err, std::abs(e1.plus_part[j] - e2.plus_part[j]));
    err = std::max(err, std::abs(e1.minus_part[j] - e2.minus_part[j]));
  }
  CHECK(err < 1e-8);
}

TEST_CASE("reconstruction at grid frequencies is exact by construction") {
  auto h = [](double xi) { return 1.0 / cplx(2.0, xi) + cplx(0.0, 3.0 * xi); };
  auto e = project_H(h, 1);
  const auto& g = FourierGrid::standard();
  double err = 0.0;
  for (int j = 0; j < g.size(); j += 13)
    err = std::max(err, std::abs(e.eval(g.xi(j)) - h(g.xi(j))));
  CHECK(err < 1e-10);
}

TEST_CASE("taylor_split of xi_n keeps everything in the polynomial part") {
  auto a = ScalarSymbol::normal_polynomial({0.0, 1.0});
  auto split = taylor_split(a, 2);
  for (double xn : {0.0, 0.1, 0.3})
    for (double xin : {-4.0, 0.5, 8.0}) {
      CHECK(std::abs(split.a_d.amplitude(0.0, xn, 1.0, xin) - cplx(xin)) < 1e-8);
      CHECK(std::abs(split.a_0.amplitude(0.0, xn, 1.0, xin)) < 1e-8);
    }
}

TEST_CASE("taylor_split of 1/(<xi'>+i xi_n) has no polynomial part") {
  auto a = ScalarSymbol::resolvent();
  auto split = taylor_split(a, 2);
  for (double xn : {0.0, 0.2})
    for (double xin : {-2.0, 1.0, 16.0}) {
      CHECK(std::abs(split.a_d.amplitude(0.3, xn, 2.0, xin)) < 1e-7);
      CHECK(std::abs(split.a_0.amplitude(0.3, xn, 2.0, xin) -
                     a.amplitude(0.3, xn, 2.0, xin)) < 1e-7);
    }
}

TEST_CASE("taylor_split of x_n*xi_n: cutoff-damped first-order term") {
  auto a = ScalarSymbol::normal_product();
  auto split = taylor_split(a, 2);
  // inside x_n <= 1/4 the order-1 cutoff phi(2 x_n) is identically 1
  for (double xn : {0.0, 0.1, 0.2})
    for (double xin : {-3.0, 1.0, 5.0})
      CHECK(std::abs(split.a_d.amplitude(0.0, xn, 1.0, xin) - cplx(xn * xin)) <
            1e-8);
  // beyond the cutoff support the polynomial part is switched off entirely
  CHECK(std::abs(split.a_d.amplitude(0.0, 0.6, 1.0, 3.0)) < 1e-10);
  // jet match at the boundary: d/dx_n of a_d at 0 equals xi_n
  const double h = 1e-3;
  for (double xin : {-2.0, 4.0}) {
    const cplx der = (split.a_d.amplitude(0.0, h, 1.0, xin) -
                      split.a_d.amplitude(0.0, -h, 1.0, xin)) /
                     (2.0 * h);
    CHECK(std::abs(der - cplx(xin)) < 1e-8);
  }
}

TEST_CASE("taylor_split is additive on the sample grid") {
  ScalarSymbol a;
  a.order = 1.0;
  a.amplitude = [](double xp, double xn, double xip, double xin) {
    return cplx(xn * xin, 0.0) + std::cos(xp) / cplx(japanese_bracket(xip), xin);
  };
  auto split = taylor_split(a, 2);
  for (const auto& pt : default_symbol_grid()) {
    const cplx lhs = a.amplitude(pt.xp, pt.xn, pt.xip, pt.xin);
    const cplx rhs = split.a_d.amplitude(pt.xp, pt.xn, pt.xip, pt.xin) +
                     split.a_0.amplitude(pt.xp, pt.xn, pt.xip, pt.xin);
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("taylor_split a_0 boundary value has empty polynomial part") {
  ScalarSymbol a;
  a.order = 1.0;
  a.amplitude = [](double, double xn, double, double xin) {
    return cplx(2.0, 1.0) * xin + cplx(xn, 0.0) + 1.0 / cplx(1.0, xin);
  };
  auto split = taylor_split(a, 1);
  auto e = project_H(
      [&](double xin) { return split.a_0.amplitude(0.0, 0.0, 1.0, xin); }, 1);
  CHECK(e.poly.cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("taylor_split rejects jets the cutoff schedule cannot tame") {
  ScalarSymbol a;
  a.order = 1.0;
  a.amplitude = [](double, double xn, double, double xin) {
    return cplx((1.0 + 1.0e12 * xn * xn) * xin, 0.0);
  };
  CHECK_THROWS_WITH_AS(taylor_split(a, 3),
                       doctest::Contains("taylor.series_divergence"),
                       CheckError);
}

TEST_CASE("constant amplitude has every scaled seminorm at most one") {
  ScalarSymbol a;
  a.order = 0.0;
  a.amplitude = [](double, double, double, double) { return cplx(1.0, 0.0); };
  const auto grid = default_symbol_grid();
  for (int al = 0; al <= 1; ++al)
    for (int be = 0; be <= 1; ++be)
      for (int ga = 0; ga <= 1; ++ga)
        for (int de = 0; de <= 1; ++de) {
          const double s = bs_seminorm(a, al, be, ga, de, 0.0, grid);
          if (al + be + ga + de == 0)
            CHECK(s == doctest::Approx(1.0));
          else
            CHECK(s < 1e-6);
        }
}

TEST_CASE("bracket weight <xi> stays in class: finite seminorm ratios") {
  ScalarSymbol a;
  a.order = 1.0;
  a.amplitude = [](double, double, double xip, double xin) {
    return cplx(std::sqrt(1.0 + xip * xip + xin * xin), 0.0);
  };
  const auto grid = default_symbol_grid();
  for (int al = 0; al <= 1; ++al)
    for (int ga = 0; ga <= 1; ++ga) {
      const double s = bs_seminorm(a, al, 0, ga, 0, 1.0, grid);
      CHECK(std::isfinite(s));
      CHECK(s < 10.0);
    }
}

TEST_CASE("resolvent family is order -1 with xi_n-order -1") {
  auto a = ScalarSymbol::resolvent();
  const auto grid = default_symbol_grid();
  CHECK(bs_seminorm(a, 0, 0, 0, 0, -1.0, grid) < 4.0);
  CHECK(bs_seminorm(a, 0, 0, 1, 0, -1.0, grid) < 4.0);
  CHECK(bs_seminorm(a, 1, 0, 0, 0, -1.0, grid) < 4.0);
}

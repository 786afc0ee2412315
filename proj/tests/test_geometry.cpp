// Canonical charts: admissibility criteria, boundary reduction, graph-type
// phases, and Hamiltonian deformations of the identity.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bdmfio/geometry/chart.hpp"
#include "bdmfio/geometry/phase.hpp"

using namespace bdmfio;
using namespace bdmfio::geometry;

namespace {

SymplectomorphismChart sine_scaling() {
  return SymplectomorphismChart::normal_scaling(
      [](double y1) { return 2.0 + std::sin(y1); },
      [](double y1) { return std::cos(y1); });
}

ChartBox unit_box(int n) {
  ChartBox b;
  b.y_lo = Vec::Constant(n, -1.0);
  b.y_hi = Vec::Constant(n, 1.0);
  b.y_lo(n - 1) = 0.0;
  return b;
}

}  // namespace

TEST_CASE("identity chart passes every criterion with zero residuals") {
  auto chart = SymplectomorphismChart::identity(2);
  auto rep = check_admissible(chart, default_sample_grid(chart));
  CHECK(rep.pass());
  CHECK(rep.find("homogeneity").worst == doctest::Approx(0.0));
  CHECK(rep.find("boundary_preservation").worst == doctest::Approx(0.0));
  CHECK(rep.find("symplecticity").worst == doctest::Approx(0.0));
  CHECK(rep.find("component_symmetry").worst < 1e-12);
}

TEST_CASE("normal-scaling chart with f = 2 + sin is admissible") {
  auto chart = sine_scaling();
  auto rep = check_admissible(chart, default_sample_grid(chart));
  for (const auto& c : rep.criteria) {
    INFO(c.name, " residual ", c.worst);
    CHECK(c.pass);
  }
  // inverse round trip
  Vec z(4);
  z << 0.3, 0.4, -0.7, 1.2;
  const Vec w = chart.apply(z);
  CHECK((chart.invert(w) - z).norm() < 1e-10);
  // Newton inversion agrees with the registered analytic inverse
  auto no_inv = chart;
  no_inv.inverse_fn = nullptr;
  CHECK((no_inv.invert(w) - z).norm() < 1e-8);
}

TEST_CASE("doubling the base breaks symplecticity") {
  auto chart = SymplectomorphismChart::base_doubling(2);
  auto rep = check_admissible(chart, default_sample_grid(chart));
  CHECK_FALSE(rep.find("symplecticity").pass);
  CHECK(rep.find("symplecticity").worst > 1.0);
}

TEST_CASE("degenerate fiber samples are rejected") {
  auto chart = SymplectomorphismChart::identity(2);
  std::vector<Vec> bad{Vec::Zero(4)};
  CHECK_THROWS_AS((void)check_admissible(chart, bad), CheckError);
}

TEST_CASE("boundary reduction of the normal-scaling chart is the identity lift") {
  auto red = induce_boundary_map(sine_scaling());
  Vec yp(1);
  yp << 0.37;
  CHECK((red.base_map(yp) - yp).norm() < 1e-12);
  CHECK(std::abs(red.fiber_lin(yp)(0, 0) - 1.0) < 1e-9);
  // the induced boundary chart acts as the identity on T*∂
  Vec z(2);
  z << 0.37, -1.3;
  CHECK((red.boundary_chart.forward_fn(z) - z).norm() < 1e-9);
}

TEST_CASE("boundary reduction extracts a genuine base rotation") {
  // interior extension of the cotangent lift of y1 ↦ y1 + c (n = 2 has a
  // 1-d boundary, so take a translation as the nontrivial diffeomorphism)
  const double c = 0.31;
  SymplectomorphismChart chart = SymplectomorphismChart::identity(2);
  chart.forward_fn = [c](const Vec& z) {
    Vec w = z;
    w(0) += c;
    return w;
  };
  chart.jacobian_fn = nullptr;
  chart.inverse_fn = nullptr;
  auto red = induce_boundary_map(chart);
  Vec yp(1);
  yp << -0.2;
  CHECK(std::abs(red.base_map(yp)(0) - (-0.2 + c)) < 1e-12);
  CHECK(std::abs(red.fiber_lin(yp)(0, 0) - 1.0) < 1e-9);
}

TEST_CASE("non-lift boundary behavior is refused") {
  // fiber part quadratic in η′ at the boundary
  SymplectomorphismChart chart = SymplectomorphismChart::identity(2);
  chart.forward_fn = [](const Vec& z) {
    Vec w = z;
    w(2) = z(2) + 0.1 * z(2) * std::abs(z(2));  // η_n-free but not linear
    return w;
  };
  chart.jacobian_fn = nullptr;
  chart.inverse_fn = nullptr;
  CHECK_THROWS_WITH_AS((void)induce_boundary_map(chart),
                       doctest::Contains("linear"), CheckError);
}

TEST_CASE("identity chart generates the linear phase") {
  auto phase = build_phase(SymplectomorphismChart::identity(2),
                           QuantSide::Left);
  Vec x(2), eta(2);
  x << 0.3, 0.7;
  eta << -1.1, 0.4;
  CHECK(phase.eval(x, eta) == doctest::Approx(x.dot(eta)).epsilon(1e-10));
}

TEST_CASE("normal-scaling chart generates psi = x'eta' + f(x') x_n eta_n") {
  auto phase = build_phase(sine_scaling(), QuantSide::Left);
  auto closed = PhaseFunction::normal_scaling(
      [](double x1) { return 2.0 + std::sin(x1); });
  for (double x1 : {-0.4, 0.2}) {
    for (double xn : {0.0, 0.5}) {
      for (double e1 : {-1.0, 0.7}) {
        for (double en : {-1.2, 0.9}) {
          Vec x(2), eta(2);
          x << x1, xn;
          eta << e1, en;
          CHECK(std::abs(phase.eval(x, eta) - closed.eval(x, eta)) < 1e-9);
        }
      }
    }
  }
}

TEST_CASE("left and right phases parametrize the same graph") {
  auto chart = sine_scaling();
  auto left = build_phase(chart, QuantSide::Left);
  auto right = build_phase(chart, QuantSide::Right);
  for (const auto& z : default_sample_grid(chart)) {
    if (z(1) < 0.05) continue;
    const Vec w = chart.apply(z);
    const Vec y = z.head(2), eta = z.tail(2);
    const Vec x = w.head(2), xi = w.tail(2);
    CHECK((left.grad_theta(x, eta) - y).norm() < 1e-6);
    CHECK((left.grad_x(x, eta) - xi).norm() < 1e-6);
    CHECK((right.grad_theta(y, xi) - x).norm() < 1e-6);
    CHECK((right.grad_x(y, xi) - eta).norm() < 1e-6);
  }
}

TEST_CASE("boundary part extraction and its violation check") {
  auto closed = PhaseFunction::normal_scaling(
      [](double x1) { return 2.0 + std::sin(x1); });
  auto bd = phase_boundary_part(closed);
  Vec xp(1), kp(1);
  xp << 0.3;
  kp << -1.7;
  CHECK(bd(xp, kp) == doctest::Approx(0.3 * (-1.7)).epsilon(1e-12));

  PhaseFunction bad = PhaseFunction::linear(2);
  bad.psi = [](const Vec& x, const Vec& th) {
    return x.dot(th) + th(1) * std::sin(x(0));
  };
  CHECK_THROWS_AS((void)phase_boundary_part(bad), CheckError);
}

TEST_CASE("zero generator flows to the identity") {
  auto chart = hamiltonian_flow_chart(
      [](const Vec&, const Vec&) { return 0.0; }, 0.1, 2, unit_box(2));
  Vec z(4);
  z << 0.2, 0.5, 0.8, -0.6;
  CHECK((chart.apply(z) - z).norm() < 1e-12);
}

TEST_CASE("tangential-momentum generator translates the base") {
  auto chart = hamiltonian_flow_chart(
      [](const Vec&, const Vec& eta) { return eta(0); }, 0.25, 2,
      unit_box(2));
  Vec z(4);
  z << 0.1, 0.4, 1.3, -0.7;
  Vec expect = z;
  expect(0) += 0.25;
  CHECK((chart.apply(z) - expect).norm() < 1e-9);
}

TEST_CASE("rational fiber generator damped at the boundary is admissible") {
  // h = 0.2·y_n²·η₁²η_n/(η₁²+η_n²): fiber-homogeneous of degree 1, normal
  // derivatives vanish on {y_n = 0}, satisfies the symmetry condition
  auto h = [](const Vec& y, const Vec& eta) {
    const double e1 = eta(0), en = eta(1);
    return 0.2 * y(1) * y(1) * e1 * e1 * en / (e1 * e1 + en * en);
  };
  auto chart = hamiltonian_flow_chart(h, 0.1, 2, unit_box(2));
  auto rep = check_admissible(chart, default_sample_grid(chart));
  AdmissibilityTolerances relaxed;
  relaxed.homogeneity = relaxed.boundary = relaxed.symplectic = 1e-6;
  relaxed.jacobian_pattern = relaxed.symmetry = 1e-6;
  rep = check_admissible(chart, default_sample_grid(chart), relaxed);
  for (const auto& c : rep.criteria) {
    INFO(c.name, " residual ", c.worst);
    CHECK(c.pass);
  }
  // its graph-type phase exists and reproduces the chart
  CHECK_NOTHROW((void)build_phase(chart, QuantSide::Left));
}

TEST_CASE("generators moving the boundary are rejected") {
  // ∂_{η_n}h ≠ 0 at y_n = 0 ⇒ flow does not preserve the boundary
  auto h = [](const Vec&, const Vec& eta) {
    const double e1 = eta(0), en = eta(1);
    return e1 * e1 * en / (e1 * e1 + en * en);
  };
  CHECK_THROWS_AS((void)hamiltonian_flow_chart(h, 0.1, 2, unit_box(2)),
                  CheckError);
}

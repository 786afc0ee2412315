/**
 * @file test_bdm.cpp
 * @brief Block-calculus tests: assembly gates, composition bookkeeping
 *        (including the 12 part-pair cases), adjoints, principal boundary
 *        symbols, ellipticity, parametrices, and conjugation.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bdmfio/bdm/block_symbol.hpp"
#include "bdmfio/bdm/calculus.hpp"
#include "bdmfio/halfline/laguerre.hpp"

using namespace bdmfio;
using namespace bdmfio::bdm;
using normal_ops::NormalPhase;
using symbols::ScalarSymbol;

namespace {

double max_abs(const Eigen::MatrixXcd& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Degree-0 homogeneous shift principal (ξ′−iξ_n)/(ξ′+iξ_n); at the frozen
/// point ξ′ = 1 this is the unit-scale unilateral shift.
cplx shift_principal(double, double, double xip, double xin) {
  return (xip - kI * xin) / (xip + kI * xin);
}

/// Shift principal plus a subprincipal correction (w/lam)/(1−iξ) that leaks
/// to the minus side.
ScalarSymbol shift_with_lower(double lam, cplx w) {
  ScalarSymbol a;
  a.order = 0.0;
  a.amplitude = [lam, w](double xp, double xn, double xip,
                         double xin) -> cplx {
    return shift_principal(xp, xn, xip, xin) + (w / lam) / (1.0 - kI * xin);
  };
  a.principal = shift_principal;
  return a;
}

/// Same principal with a plus-side (no-leak) correction.
ScalarSymbol shift_with_upper(double lam, cplx w) {
  ScalarSymbol a;
  a.order = 0.0;
  a.amplitude = [lam, w](double xp, double xn, double xip,
                         double xin) -> cplx {
    return shift_principal(xp, xn, xip, xin) + (w / lam) / (1.0 + kI * xin);
  };
  a.principal = shift_principal;
  return a;
}

/// Plus-type rational symbol c + w/(s+iξ): empty leak, gentle composition.
ScalarSymbol plus_rational(cplx c, cplx w, double s) {
  ScalarSymbol a;
  a.order = 0.0;
  a.amplitude = [c, w, s](double, double, double, double xin) -> cplx {
    return c + w / (s + kI * xin);
  };
  a.principal = [c](double, double, double, double) -> cplx { return c; };
  return a;
}

BdMBlockSymbol identity_block(int N) {
  BlockParts parts;
  parts.interior.present = true;
  parts.interior.symbol.order = 0.0;
  parts.interior.symbol.amplitude = [](double, double, double,
                                       double) -> cplx { return 1.0; };
  parts.interior.symbol.principal = parts.interior.symbol.amplitude;
  parts.scalar = 1.0;
  return assemble_block(parts, 0.0, 0, {}, 0.0, 1.0, N);
}

Eigen::VectorXcd smooth_column(int N, double rate, double phase) {
  Eigen::VectorXcd v(N);
  for (int i = 0; i < N; ++i)
    v(i) = std::exp(-rate * i) * std::exp(kI * (phase * i));
  return v;
}

/// A full block with every part populated (order 0, type 0).
BdMBlockSymbol full_block(int N) {
  BlockParts parts;
  parts.interior.present = true;
  parts.interior.symbol = plus_rational(cplx(1.0, 0.3), cplx(0.5, -0.2), 1.0);
  parts.green.regular = smooth_column(N, 0.3, 0.7) *
                        smooth_column(N, 0.4, -0.4).transpose();
  parts.potential = smooth_column(N, 0.5, 0.2);
  parts.trace.regular = smooth_column(N, 0.45, -0.8).transpose();
  parts.scalar = cplx(0.8, 0.1);
  return assemble_block(parts, 0.0, 0, {}, 0.0, 1.0, N);
}

}  // namespace

TEST_CASE("assembly gates: identity, boundary-jet trace, type bound") {
  const int N = 16;
  auto id = identity_block(N);
  CHECK(id.order == 0.0);
  CHECK(id.type == 0);
  CHECK(max_abs(id.total_matrix() -
                Eigen::MatrixXcd::Identity(N + 1, N + 1)) < 1e-8);

  // (0, 0; gamma_0, 0) is a valid order-1/2 type-1 block
  BlockParts tr;
  tr.trace.jet_weights = {cplx(1.0)};
  auto t0 = assemble_block(tr, 0.5, 1, {}, 0.0, 1.0, N);
  CHECK(t0.type == 1);
  // the row realizes the boundary-value functional: phi_k(0) = sqrt(2)
  CHECK(max_abs(t0.lower_left() -
                std::sqrt(2.0) * Eigen::RowVectorXcd::Ones(N)) < 1e-12);

  // type 2 with order 1 violates d <= max{ceil(m), 0}
  BlockParts bad;
  bad.green.jet_cols = {Eigen::VectorXcd::Zero(N), Eigen::VectorXcd::Zero(N)};
  CHECK_THROWS_WITH_AS(assemble_block(bad, 1.0, 2, {}, 0.0, 1.0, N),
                       doctest::Contains("bdm.type_bound_violated"),
                       CheckError);
}

TEST_CASE("identity composes neutrally on a fully populated block") {
  const int N = 32;
  auto id = identity_block(N);
  auto A = full_block(N);
  auto left = compose(id, A);
  auto right = compose(A, id);
  CHECK(left.order == A.order);
  CHECK(left.type == A.type);
  CHECK(max_abs(left.total_matrix() - A.total_matrix()) < 1e-10);
  CHECK(max_abs(right.total_matrix() - A.total_matrix()) < 1e-10);
}

TEST_CASE("potential after trace produces the rank-one boundary-jet part") {
  const int N = 16;
  BlockParts kp;
  kp.potential = smooth_column(N, 0.35, 0.5);
  auto K = assemble_block(kp, 0.5, 0, {}, 0.0, 1.0, N);
  BlockParts tp;
  tp.trace.jet_weights = {cplx(2.0, -1.0)};
  auto T = assemble_block(tp, 0.5, 1, {}, 0.0, 1.0, N);

  auto C = compose(K, T);
  CHECK(C.order == doctest::Approx(1.0));
  CHECK(C.type == 1);
  REQUIRE(C.green.jet_cols.size() == 1);
  CHECK(max_abs(C.green.jet_cols[0] - cplx(2.0, -1.0) * kp.potential) <
        1e-12);
  // the dense upper-left equals k * (w * gamma_0 row)
  Eigen::MatrixXcd expect =
      kp.potential * (cplx(2.0, -1.0) * jet_row(0, N));
  CHECK(max_abs(C.upper_left().mat - expect) < 1e-12);
}

TEST_CASE("composition matches the product-symbol assembly up to a decaying "
          "remainder") {
  const int N = 16;
  std::vector<double> lams = {4.0, 8.0, 16.0, 32.0};
  std::vector<double> defects, mult_defects;
  for (double lam : lams) {
    BlockParts pa;
    pa.interior.present = true;
    pa.interior.symbol = shift_with_lower(lam, cplx(0.4, 0.1));
    auto A = assemble_block(pa, 0.0, 0, {}, 0.0, 1.0, N);
    BlockParts pb;
    pb.interior.present = true;
    pb.interior.symbol = shift_with_upper(lam, cplx(0.3, -0.2));
    auto B = assemble_block(pb, 0.0, 0, {}, 0.0, 1.0, N);

    auto C = compose(B, A);
    // direct assembly from the product amplitude
    ScalarSymbol prod;
    prod.order = 0.0;
    auto ba = pb.interior.symbol.amplitude, aa = pa.interior.symbol.amplitude;
    prod.amplitude = [ba, aa](double xp, double xn, double xip,
                              double xin) -> cplx {
      return ba(xp, xn, xip, xin) * aa(xp, xn, xip, xin);
    };
    auto direct =
        normal_ops::truncated_op(prod, NormalPhase::linear_phase(), 0.0, 1.0,
                                 N);
    // the composed interior is assembled from the same closure; the
    // difference is exactly the leftover boundary-smoothing part
    defects.push_back(
        std::max(1e-16, max_abs(C.upper_left().mat - direct.mat)));
    // and the full upper-left reproduces the truncated product of the two
    // factors up to the spectral tail of the middle projection
    CHECK(max_abs(C.upper_left().mat -
                  B.interior_matrix() * A.interior_matrix()) < 1e-6);

    // principal boundary-symbol multiplicativity defect at the same level
    auto sC = principal_boundary_symbol(C).mat;
    auto sB = principal_boundary_symbol(B).mat;
    auto sA = principal_boundary_symbol(A).mat;
    mult_defects.push_back(std::max(1e-16, max_abs(sC - sB * sA)));
  }
  CHECK(normal_ops::fit_slope(lams, defects) <= -0.7);
  CHECK(normal_ops::fit_slope(lams, mult_defects) <= -0.7);
}

TEST_CASE("adjoint: identity, trace-potential swap, defining pairing") {
  const int N = 32;
  auto id = identity_block(N);
  auto ids = adjoint(id);
  CHECK(max_abs(ids.total_matrix() -
                Eigen::MatrixXcd::Identity(N + 1, N + 1)) < 1e-8);

  auto A = full_block(N);
  auto As = adjoint(A);
  // potential column moves to the trace row as its conjugate transpose
  CHECK(max_abs(As.trace.regular - A.potential.adjoint()) < 1e-14);
  CHECK(max_abs(As.potential - A.trace.regular.adjoint()) < 1e-14);

  // <Au, v> = <u, A*v> on random vectors
  const Eigen::MatrixXcd T = A.total_matrix(), Ts = As.total_matrix();
  Eigen::VectorXcd u = smooth_column(N + 1, 0.2, 1.1);
  Eigen::VectorXcd v = smooth_column(N + 1, 0.15, -0.6);
  const cplx lhs = (v.adjoint() * (T * u)).value();
  const cplx rhs = ((Ts * v).adjoint() * u).value();
  CHECK(std::abs(lhs - rhs) < 1e-10);

  // positive order is rejected
  BlockParts dp;
  dp.interior.present = true;
  dp.interior.symbol = ScalarSymbol::normal_polynomial({cplx(0.0), kI});
  auto D = assemble_block(dp, 1.0, 0, {}, 0.0, 1.0, N);
  CHECK_THROWS_WITH_AS(adjoint(D),
                       doctest::Contains("bdm.positive_order_adjoint"),
                       CheckError);
}

TEST_CASE("principal boundary symbol: compatibility with the adjoint") {
  const int N = 32;
  auto A = full_block(N);
  auto As = adjoint(A);
  const Eigen::MatrixXcd sA = principal_boundary_symbol(A).mat;
  const Eigen::MatrixXcd sAs = principal_boundary_symbol(As).mat;
  CHECK(max_abs(sAs - sA.adjoint()) < 1e-8);
}

TEST_CASE("principal boundary symbol: linear-phase interior reduces to the "
          "standard boundary operator; pure jet part is itself") {
  const int N = 16;
  // x_n-independent homogeneous-at-the-frozen-point interior, theta = x*xi
  BlockParts pa;
  pa.interior.present = true;
  pa.interior.symbol = shift_with_upper(1.0, cplx(0.0));
  pa.interior.symbol.amplitude = pa.interior.symbol.principal;
  auto A = assemble_block(pa, 0.0, 0, {}, 0.0, 1.0, N);
  ScalarSymbol pr = pa.interior.symbol;
  const Eigen::MatrixXcd direct =
      normal_ops::truncated_op(pr, NormalPhase::linear_phase(), 0.0, 1.0, N)
          .mat;
  const Eigen::MatrixXcd sA = principal_boundary_symbol(A).mat;
  CHECK(max_abs(sA.topLeftCorner(N, N) - direct) < 1e-6);

  // rank-one boundary-jet part passes through unchanged
  BlockParts pg;
  pg.green.jet_cols = {smooth_column(N, 0.3, 0.4)};
  auto G = assemble_block(pg, 1.0, 1, {}, 0.0, 1.0, N);
  const Eigen::MatrixXcd sG = principal_boundary_symbol(G).mat;
  CHECK(max_abs(sG.topLeftCorner(N, N) -
                pg.green.jet_cols[0] * jet_row(0, N)) < 1e-12);
}

TEST_CASE("associativity of composition on populated fixtures") {
  const int N = 24;
  auto mk = [&](cplx c, cplx w, double s, double rate, double ph) {
    BlockParts parts;
    parts.interior.present = true;
    parts.interior.symbol = plus_rational(c, w, s);
    parts.green.regular =
        smooth_column(N, 0.3 + rate, ph) *
        smooth_column(N, 0.4 + rate, -ph).transpose();
    parts.potential = smooth_column(N, 0.5, ph + 0.2);
    parts.trace.regular = smooth_column(N, 0.45, -ph).transpose();
    parts.scalar = c - w;
    return assemble_block(parts, 0.0, 0, {}, 0.0, 1.0, N);
  };
  auto A = mk(cplx(1.0, 0.2), cplx(0.4, -0.1), 1.0, 0.0, 0.7);
  auto B = mk(cplx(0.9, -0.3), cplx(0.2, 0.3), 1.5, 0.05, -0.4);
  auto C = mk(cplx(1.1, 0.1), cplx(-0.3, 0.2), 2.0, 0.1, 1.2);
  auto left = compose(compose(C, B), A);
  auto right = compose(C, compose(B, A));
  CHECK(max_abs(left.total_matrix() - right.total_matrix()) < 1e-8);
  CHECK(left.order == doctest::Approx(right.order));
  CHECK(left.type == right.type);
}

TEST_CASE("composition type and order arithmetic across the twelve "
          "part-pair cases") {
  const int N = 16;
  // building blocks: interior of order 0, interior of order 1 (i xi_n),
  // boundary-smoothing part of order/type 1, potential and trace of order
  // 1/2, and a plain scalar
  auto pdo0 = [&]() {
    BlockParts p;
    p.interior.present = true;
    p.interior.symbol = plus_rational(cplx(1.0), cplx(0.5, 0.2), 1.0);
    return assemble_block(p, 0.0, 0, {}, 0.0, 1.0, N);
  }();
  auto pdo1 = [&]() {
    BlockParts p;
    p.interior.present = true;
    p.interior.symbol = ScalarSymbol::normal_polynomial({cplx(0.0), kI});
    return assemble_block(p, 1.0, 0, {}, 0.0, 1.0, N);
  }();
  auto green11 = [&]() {
    BlockParts p;
    p.green.regular = smooth_column(N, 0.3, 0.4) *
                      smooth_column(N, 0.35, -0.3).transpose();
    p.green.jet_cols = {smooth_column(N, 0.4, 0.9)};
    return assemble_block(p, 1.0, 1, {}, 0.0, 1.0, N);
  }();
  auto potk = [&]() {
    BlockParts p;
    p.potential = smooth_column(N, 0.4, 0.6);
    return assemble_block(p, 0.5, 0, {}, 0.0, 1.0, N);
  }();
  auto trg0 = [&]() {
    BlockParts p;
    p.trace.jet_weights = {cplx(1.0, 0.5)};
    return assemble_block(p, 0.5, 1, {}, 0.0, 1.0, N);
  }();
  auto scal = [&]() {
    BlockParts p;
    p.scalar = cplx(0.7, -0.4);
    return assemble_block(p, 0.0, 0, {}, 0.0, 1.0, N);
  }();

  struct Case {
    const char* name;
    const BdMBlockSymbol *B, *A;
    const char* expect;  // which region of the result is populated
  };
  const Case cases[12] = {
      {"case-1", &pdo0, &green11, "green"},
      {"case-2", &green11, &pdo1, "green"},
      {"case-3", &green11, &green11, "green"},
      {"case-4", &pdo0, &potk, "potential"},
      {"case-5", &green11, &potk, "potential"},
      {"case-6", &potk, &trg0, "green"},
      {"case-7", &potk, &scal, "potential"},
      {"case-8", &trg0, &pdo1, "trace"},
      {"case-9", &trg0, &green11, "trace"},
      {"case-10", &scal, &trg0, "trace"},
      {"case-11", &trg0, &potk, "scalar"},
      {"case-12", &scal, &scal, "scalar"},
  };
  for (const Case& c : cases) {
    CAPTURE(c.name);
    auto R = compose(*c.B, *c.A);
    CHECK(R.order == doctest::Approx(c.A->order + c.B->order));
    const int expected_type = std::max(
        {c.A->type,
         c.B->type + static_cast<int>(std::ceil(c.A->order - 1e-9)), 0});
    CHECK(R.type == expected_type);

    const Eigen::MatrixXcd T = R.total_matrix();
    const double g = max_abs(T.topLeftCorner(N, N));
    const double k = max_abs(T.topRightCorner(N, 1));
    const double t = max_abs(T.bottomLeftCorner(1, N));
    const double s = std::abs(T(N, N));
    const std::string expect = c.expect;
    CHECK(!R.interior.present);
    CHECK((expect == "green") == (g > 1e-10));
    CHECK((expect == "potential") == (k > 1e-10));
    CHECK((expect == "trace") == (t > 1e-10));
    CHECK((expect == "scalar") == (s > 1e-10));
  }
}

TEST_CASE("ellipticity verdicts: identity elliptic, truncated shift not") {
  const int N = 16;
  auto id_family = [](double, int modes) { return identity_block(modes); };
  auto rep = ellipticity_check(id_family, {1.0, -1.0}, 1e-3, 1e-3, N);
  CHECK(rep.elliptic);
  for (double sv : rep.min_sv) CHECK(sv == doctest::Approx(1.0).epsilon(1e-6));

  // pure shift symbol: unimodular interior but a boundary operator with a
  // one-dimensional cokernel on every finite section
  auto shift_family = [](double, int modes) {
    BlockParts p;
    p.interior.present = true;
    p.interior.symbol.order = 0.0;
    p.interior.symbol.amplitude = shift_principal;
    p.interior.symbol.principal = shift_principal;
    p.scalar = 1.0;
    return assemble_block(p, 0.0, 0, {}, 0.0, 1.0, modes);
  };
  auto rep2 = ellipticity_check(shift_family, {1.0, -1.0}, 1e-3, 1e-3, N);
  CHECK(rep2.interior_pass);
  CHECK(!rep2.boundary_pass);
  CHECK(!rep2.elliptic);
}

TEST_CASE("parametrix: identity, dilation inverse, and residuals") {
  const int N = 32;
  auto id = identity_block(N);
  auto pid = parametrix_symbol(id);
  CHECK(max_abs(pid.mat - Eigen::MatrixXcd::Identity(N + 1, N + 1)) < 1e-6);
  CHECK(max_abs(principal_boundary_symbol(id).mat * pid.mat -
                Eigen::MatrixXcd::Identity(N + 1, N + 1)) < 1e-8);

  // dilation block u -> u(c x): inverse is the reciprocal dilation
  const double c = 1.3;
  BlockParts dp;
  dp.interior.present = true;
  dp.interior.symbol.order = 0.0;
  dp.interior.symbol.amplitude = [](double, double, double, double) -> cplx {
    return 1.0;
  };
  dp.interior.symbol.principal = dp.interior.symbol.amplitude;
  dp.interior.phase_scale = c;
  dp.scalar = 1.0;
  auto D = assemble_block(dp, 0.0, 0, {}, 0.0, 1.0, N);
  auto pD = parametrix_symbol(D);
  CHECK(max_abs(principal_boundary_symbol(D).mat * pD.mat -
                Eigen::MatrixXcd::Identity(N + 1, N + 1)) < 1e-8);
  // compare on the well-resolved leading modes
  CHECK(max_abs(pD.mat.topLeftCorner(N / 2, N / 2) -
                scale_matrix(1.0 / c, N).topLeftCorner(N / 2, N / 2)) < 1e-6);

  // composed elliptic fixture
  BlockParts ap;
  ap.interior.present = true;
  ap.interior.symbol = plus_rational(cplx(1.0, 0.1), cplx(0.3, -0.2), 1.0);
  ap.scalar = 1.0;
  auto A = assemble_block(ap, 0.0, 0, {}, 0.0, 1.0, N);
  auto C = compose(A, D);
  auto pC = parametrix_symbol(C);
  CHECK(max_abs(principal_boundary_symbol(C).mat * pC.mat -
                Eigen::MatrixXcd::Identity(N + 1, N + 1)) < 1e-8);

  // singular symbol is refused (the zero block)
  BlockParts sp;
  auto S = assemble_block(sp, 0.0, 0, {}, 0.0, 1.0, N);
  CHECK_THROWS_WITH_AS(parametrix_symbol(S),
                       doctest::Contains("bdm.singular_boundary_symbol"),
                       CheckError);
}

TEST_CASE("conjugation A P A*: neutral for A = identity, class checks and "
          "symbol-level conjugation for a scaled-phase factor") {
  const int N = 24;
  auto idA = identity_block(N);
  auto P = full_block(N);
  auto R0 = egorov_conjugate(idA, P);
  CHECK(max_abs(R0.total_matrix() - P.total_matrix()) < 1e-8);

  // multiplication block by a smooth cutoff-like factor
  auto mult_block = [&](int modes) {
    BlockParts p;
    p.interior.present = true;
    p.interior.multiplication = true;
    p.interior.symbol.order = 0.0;
    p.interior.symbol.amplitude = [](double, double xn, double,
                                     double) -> cplx {
      return 1.0 + 0.5 / (1.0 + xn * xn);
    };
    p.interior.symbol.principal = p.interior.symbol.amplitude;
    return assemble_block(p, 0.0, 0, {}, 0.0, 1.0, modes);
  };
  auto Pm = mult_block(N);

  // scaled-phase conjugating factor: the result lands in the standard class
  {
    BlockParts p;
    p.interior.present = true;
    p.interior.symbol = plus_rational(cplx(1.0), cplx(0.4, 0.2), 1.0);
    p.interior.phase_scale = 1.06;
    ChartRefs ch{"id", "flow"};
    auto A = assemble_block(p, 0.0, 0, ch, 0.0, 1.0, N);
    auto R = egorov_conjugate(A, Pm);
    CHECK(R.charts.domain == R.charts.codomain);
    auto cls = standard_class_check(R);
    CHECK(cls.pass);
  }

  // symbol-level conjugation: the defect against σ(A)·σ(P)·σ(A*) scales
  // with the subprincipal size of the conjugating factor
  std::vector<double> lams = {2.0, 4.0, 8.0, 16.0};
  std::vector<double> defects;
  const Eigen::MatrixXcd sP = principal_boundary_symbol(Pm).mat;
  for (double lam : lams) {
    BlockParts p;
    p.interior.present = true;
    p.interior.symbol = plus_rational(cplx(1.0), cplx(0.4, 0.2) / lam, 1.0);
    auto A = assemble_block(p, 0.0, 0, {}, 0.0, 1.0, N);
    auto R = egorov_conjugate(A, Pm);
    const Eigen::MatrixXcd sR = principal_boundary_symbol(R).mat;
    const Eigen::MatrixXcd sA = principal_boundary_symbol(A).mat;
    const Eigen::MatrixXcd sAs = principal_boundary_symbol(adjoint(A)).mat;
    defects.push_back(std::max(1e-16, max_abs(sR - sA * sP * sAs)));
  }
  CHECK(normal_ops::fit_slope(lams, defects) <= -0.7);
}

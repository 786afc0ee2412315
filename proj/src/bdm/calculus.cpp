#include "bdmfio/bdm/calculus.hpp"

#include <cmath>
#include <limits>

#include "bdmfio/halfline/laguerre.hpp"
#include "bdmfio/symbols/transmission.hpp"

namespace bdmfio::bdm {

namespace {

using normal_ops::NormalPhase;
using symbols::ScalarSymbol;

NormalPhase phase_of(double f) {
  return f == 1.0 ? NormalPhase::linear_phase() : NormalPhase::scaled(f);
}

/// b̃(ξ_n) = b(ξ_n / f).
ScalarSymbol shift_scale(const ScalarSymbol& b, double f) {
  if (f == 1.0) return b;
  ScalarSymbol out = b;
  auto amp = b.amplitude;
  out.amplitude = [amp, f](double xp, double xn, double xip, double xin) {
    return amp(xp, xn, xip, xin / f);
  };
  if (b.principal) {
    auto pr = b.principal;
    out.principal = [pr, f](double xp, double xn, double xip, double xin) {
      return pr(xp, xn, xip, xin / f);
    };
  }
  return out;
}

/// a(−ξ_n) — used to express r⁺Op(b)e⁻ through the mirror of a leak.
ScalarSymbol reflect(const ScalarSymbol& a) {
  ScalarSymbol out = a;
  auto amp = a.amplitude;
  out.amplitude = [amp](double xp, double xn, double xip, double xin) {
    return amp(xp, xn, xip, -xin);
  };
  if (a.principal) {
    auto pr = a.principal;
    out.principal = [pr](double xp, double xn, double xip, double xin) {
      return pr(xp, xn, xip, -xin);
    };
  }
  return out;
}

bool effectively_zero(const ScalarSymbol& a, double xp, double xip) {
  for (double xi : {0.0, 0.7, -1.3, 8.0, -21.5, 131.0})
    if (std::abs(a.amplitude(xp, 0.0, xip, xi)) > 1e-13) return false;
  return true;
}

cplx ipow_minus_i(int j) {
  static const cplx table[4] = {cplx(1, 0), cplx(0, -1), cplx(-1, 0),
                                cplx(0, 1)};
  return table[((j % 4) + 4) % 4];
}

}  // namespace

BdMBlockSymbol compose(const BdMBlockSymbol& B, const BdMBlockSymbol& A) {
  if (B.charts.domain != A.charts.codomain)
    throw CheckError("bdm.chart_mismatch",
                     "cannot compose over " + B.charts.domain + " after " +
                         A.charts.codomain);
  if (A.modes != B.modes || A.xp != B.xp || A.xip != B.xip)
    throw CheckError("bdm.frozen_point_mismatch",
                     "blocks must share the frozen point and resolution");
  const int N = A.modes;
  const double xp = A.xp, xip = A.xip;

  BdMBlockSymbol C;
  C.xp = xp;
  C.xip = xip;
  C.modes = N;
  C.order = A.order + B.order;
  C.type = std::max(
      {A.type, B.type + static_cast<int>(std::ceil(A.order - 1e-9)), 0});
  C.charts = {A.charts.domain, B.charts.codomain};

  const Eigen::MatrixXcd FA = A.interior_matrix();
  const Eigen::MatrixXcd FB = B.interior_matrix();
  const Eigen::MatrixXcd GA = A.green_matrix();
  const Eigen::MatrixXcd GBtot = B.green_matrix();

  Eigen::MatrixXcd Greg = Eigen::MatrixXcd::Zero(N, N);
  std::vector<Eigen::VectorXcd> jcols;
  auto add_jet = [&](int l, const Eigen::VectorXcd& v) {
    if (l >= static_cast<int>(jcols.size()))
      jcols.resize(l + 1, Eigen::VectorXcd::Zero(N));
    jcols[l] += v;
  };
  Eigen::RowVectorXcd treg = Eigen::RowVectorXcd::Zero(N);
  std::vector<cplx> tw;
  auto add_tw = [&](int l, cplx w) {
    if (l >= static_cast<int>(tw.size())) tw.resize(l + 1, cplx(0.0));
    tw[l] += w;
  };

  const bool ai = A.interior.present, bi = B.interior.present;
  const double fA = ai ? A.interior.phase_scale : 1.0;
  const double fB = bi ? B.interior.phase_scale : 1.0;

  // Decaying part of A's interior and its linear-phase realization: used by
  // the leftover Green and by B-jets acting through A.
  ScalarSymbol a0;
  bool a0_zero = true;
  Eigen::MatrixXcd Mlin_a0;
  bool mlin_ready = false;
  if (ai && !A.interior.multiplication) {
    a0 = decaying_part(A.interior.symbol, A.interior.poly);
    a0_zero = effectively_zero(a0, xp, xip);
  }
  auto mlin = [&]() -> const Eigen::MatrixXcd& {
    if (!mlin_ready) {
      Mlin_a0 = a0_zero ? Eigen::MatrixXcd::Zero(N, N)
                        : normal_ops::truncated_op(
                              a0, NormalPhase::linear_phase(), xp, xip, N)
                              .mat;
      mlin_ready = true;
    }
    return Mlin_a0;
  };

  // ---- interior ∘ interior: product symbol + leftover Green --------------
  if (ai && bi) {
    const ScalarSymbol bt = shift_scale(B.interior.symbol, fA);
    C.interior.present = true;
    C.interior.phase_scale = fA * fB;
    C.interior.multiplication =
        A.interior.multiplication && B.interior.multiplication;
    C.interior.symbol.order =
        A.interior.symbol.order + B.interior.symbol.order;
    {
      auto ba = bt.amplitude, aa = A.interior.symbol.amplitude;
      C.interior.symbol.amplitude = [ba, aa](double xp_, double xn,
                                             double xip_, double xin) {
        return ba(xp_, xn, xip_, xin) * aa(xp_, xn, xip_, xin);
      };
      if (bt.principal && A.interior.symbol.principal) {
        auto bp = bt.principal, ap = A.interior.symbol.principal;
        C.interior.symbol.principal = [bp, ap](double xp_, double xn,
                                               double xip_, double xin) {
          return bp(xp_, xn, xip_, xin) * ap(xp_, xn, xip_, xin);
        };
      }
    }
    if (!C.interior.multiplication)
      C.interior.poly = normal_poly_part(C.interior.symbol, xp, xip);

    bool b0_zero = true;
    ScalarSymbol b0t;
    if (!B.interior.multiplication) {
      std::vector<cplx> poly_bt = B.interior.poly;
      for (int j = 0; j < static_cast<int>(poly_bt.size()); ++j)
        poly_bt[j] /= std::pow(fA, j);
      b0t = decaying_part(bt, poly_bt);
      b0_zero = effectively_zero(b0t, xp, xip);
    }

    // leftover regular part: −(scale f_A f_B)·(r⁺Op_lin(b̃₀)e⁻)(r⁻Op_lin(a₀)e⁺)
    if (!a0_zero && !b0_zero) {
      const auto lin = NormalPhase::linear_phase();
      const Eigen::MatrixXcd LA = normal_ops::leak_op(a0, lin, xp, xip, N).mat;
      const Eigen::MatrixXcd CB =
          normal_ops::leak_op(reflect(b0t), lin, xp, xip, N).mat;
      Eigen::MatrixXcd left = -(CB * LA);
      if (fA * fB != 1.0) left = scale_matrix(fA * fB, N) * left;
      Greg += left;
    }

    // jet atoms from A's ξ_n-polynomial part routed through B: the atom
    // δ₀^{(r)} pairs with u^{(l)}(0) for every degree j = l+r+1 of A_poly,
    // with weight a_j(−i)^j f_A^{−(r+1)}, and r⁺B δ₀^{(r)} only sees B's
    // decaying part.
    const int p = static_cast<int>(A.interior.poly.size()) - 1;
    if (!b0_zero && p >= 1) {
      for (int r = 0; r <= p - 1; ++r) {
        bool any = false;
        for (int l = 0; l + r + 1 <= p; ++l)
          if (A.interior.poly[l + r + 1] != cplx(0.0)) any = true;
        if (!any) continue;
        const auto dv = normal_ops::dirac_action(B.interior.symbol,
                                                 phase_of(fB), xp, xip, r,
                                                 /*plus_side=*/true, N);
        for (int l = 0; l + r + 1 <= p; ++l) {
          const cplx aj = A.interior.poly[l + r + 1];
          if (aj == cplx(0.0)) continue;
          const cplx w =
              aj * ipow_minus_i(l + r + 1) * std::pow(fA, -(r + 1.0));
          add_jet(l, -w * dv.coeff);
        }
      }
    }
  }

  // ---- B interior ∘ A Green ----------------------------------------------
  if (bi && !A.green.empty()) {
    if (A.green.regular.size() != 0) Greg += FB * A.green.regular;
    for (int l = 0; l < static_cast<int>(A.green.jet_cols.size()); ++l)
      if (A.green.jet_cols[l].size() != 0)
        add_jet(l, FB * A.green.jet_cols[l]);
  }

  // ---- B Green ∘ A upper-left ---------------------------------------------
  if (!B.green.empty()) {
    if (!A.green.empty()) {
      if (A.green.regular.size() != 0) Greg += GBtot * A.green.regular;
      for (int l = 0; l < static_cast<int>(A.green.jet_cols.size()); ++l)
        if (A.green.jet_cols[l].size() != 0)
          add_jet(l, GBtot * A.green.jet_cols[l]);
    }
    if (ai) {
      if (B.green.regular.size() != 0) Greg += B.green.regular * FA;
      for (int j = 0; j < static_cast<int>(B.green.jet_cols.size()); ++j) {
        const auto& col = B.green.jet_cols[j];
        if (col.size() == 0) continue;
        if (A.interior.multiplication) {
          Greg += col * (jet_row(j, N) * FA);
        } else {
          Greg += col * (std::pow(fA, j) * (jet_row(j, N) * mlin()));
          for (int i = 0; i < static_cast<int>(A.interior.poly.size()); ++i)
            if (A.interior.poly[i] != cplx(0.0))
              add_jet(j + i, std::pow(fA, j) * A.interior.poly[i] *
                                 ipow_minus_i(i) * col);
        }
      }
    }
  }

  // ---- k_B · t_A ------------------------------------------------------------
  if (B.potential.size() != 0 && !A.trace.empty()) {
    if (A.trace.regular.size() != 0) Greg += B.potential * A.trace.regular;
    for (int l = 0; l < static_cast<int>(A.trace.jet_weights.size()); ++l)
      if (A.trace.jet_weights[l] != cplx(0.0))
        add_jet(l, A.trace.jet_weights[l] * B.potential);
  }

  // ---- potential column -----------------------------------------------------
  if (A.potential.size() != 0 ||
      (B.potential.size() != 0 && A.scalar != cplx(0.0))) {
    Eigen::VectorXcd kc = Eigen::VectorXcd::Zero(N);
    if (A.potential.size() != 0) kc += (FB + GBtot) * A.potential;
    if (B.potential.size() != 0) kc += B.potential * A.scalar;
    C.potential = kc;
  }

  // ---- trace row -------------------------------------------------------------
  if (!B.trace.empty()) {
    if (B.trace.regular.size() != 0) treg += B.trace.regular * (FA + GA);
    for (int j = 0; j < static_cast<int>(B.trace.jet_weights.size()); ++j) {
      const cplx wj = B.trace.jet_weights[j];
      if (wj == cplx(0.0)) continue;
      if (!A.green.empty()) treg += wj * (jet_row(j, N) * GA);
      if (ai) {
        if (A.interior.multiplication) {
          treg += wj * (jet_row(j, N) * FA);
        } else {
          treg += wj * std::pow(fA, j) * (jet_row(j, N) * mlin());
          for (int i = 0; i < static_cast<int>(A.interior.poly.size()); ++i)
            if (A.interior.poly[i] != cplx(0.0))
              add_tw(j + i, wj * std::pow(fA, j) * A.interior.poly[i] *
                                ipow_minus_i(i));
        }
      }
    }
  }
  if (B.scalar != cplx(0.0) && !A.trace.empty()) {
    if (A.trace.regular.size() != 0) treg += B.scalar * A.trace.regular;
    for (int l = 0; l < static_cast<int>(A.trace.jet_weights.size()); ++l)
      if (A.trace.jet_weights[l] != cplx(0.0))
        add_tw(l, B.scalar * A.trace.jet_weights[l]);
  }

  // ---- scalar ---------------------------------------------------------------
  C.scalar = B.scalar * A.scalar;
  if (A.potential.size() != 0)
    C.scalar += (B.lower_left() * A.potential).value();

  if (Greg.squaredNorm() > 0.0)
    C.green.regular = rank_truncate(Greg, C.green.max_rank);
  C.green.jet_cols = std::move(jcols);
  if (treg.squaredNorm() > 0.0) C.trace.regular = treg;
  C.trace.jet_weights = std::move(tw);
  return C;
}

BdMBlockSymbol adjoint(const BdMBlockSymbol& A) {
  if (A.order > 1e-12 || A.type != 0)
    throw CheckError("bdm.positive_order_adjoint",
                     "adjoint requires order <= 0 and type 0");
  const int N = A.modes;
  BdMBlockSymbol S;
  S.order = A.order;
  S.type = 0;
  S.charts = {A.charts.codomain, A.charts.domain};
  S.xp = A.xp;
  S.xip = A.xip;
  S.modes = N;
  if (A.interior.present) {
    const double f = A.interior.phase_scale;
    S.interior.present = true;
    S.interior.phase_scale = 1.0 / f;
    S.interior.multiplication = A.interior.multiplication;
    S.interior.symbol.order = A.interior.symbol.order;
    {
      auto amp = A.interior.symbol.amplitude;
      S.interior.symbol.amplitude = [amp, f](double xp_, double xn,
                                             double xip_, double xin) {
        return std::conj(amp(xp_, xn, xip_, xin / f)) / f;
      };
      if (A.interior.symbol.principal) {
        auto pr = A.interior.symbol.principal;
        S.interior.symbol.principal = [pr, f](double xp_, double xn,
                                              double xip_, double xin) {
          return std::conj(pr(xp_, xn, xip_, xin / f)) / f;
        };
      }
    }
    S.interior.poly.resize(A.interior.poly.size());
    for (int j = 0; j < static_cast<int>(A.interior.poly.size()); ++j)
      S.interior.poly[j] =
          std::conj(A.interior.poly[j]) / (f * std::pow(f, j));
    // exact conjugate transpose on the span, so the defining pairing
    // identity holds to rounding
    S.interior.matrix = A.interior_matrix().adjoint();
  }
  if (A.green.regular.size() != 0) S.green.regular = A.green.regular.adjoint();
  if (A.trace.regular.size() != 0) S.potential = A.trace.regular.adjoint();
  if (A.potential.size() != 0) S.trace.regular = A.potential.adjoint();
  S.scalar = std::conj(A.scalar);
  return S;
}

normal_ops::OperatorMatrix principal_boundary_symbol(const BdMBlockSymbol& A) {
  const int N = A.modes;
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(N + 1, N + 1);
  if (A.interior.present) {
    const double f = A.interior.phase_scale;
    if (A.interior.multiplication) {
      // freezing x_n = 0 leaves a(0)·(u ↦ u(f x))
      const cplx a00 = A.interior.symbol.amplitude(A.xp, 0.0, A.xip, 0.0);
      S.topLeftCorner(N, N) =
          f == 1.0 ? Eigen::MatrixXcd(a00 * Eigen::MatrixXcd::Identity(N, N))
                   : Eigen::MatrixXcd(a00 * scale_matrix(f, N));
    } else {
      if (!A.interior.symbol.has_principal())
        throw CheckError("bdm.missing_principal_part",
                         "interior symbol has no registered principal part");
      ScalarSymbol pr = A.interior.symbol;
      pr.amplitude = A.interior.symbol.principal;
      S.topLeftCorner(N, N) =
          normal_ops::boundary_symbol(pr, phase_of(f), A.xp, A.xip, N).mat;
    }
  }
  S.topLeftCorner(N, N) += A.green_matrix();
  S.topRightCorner(N, 1) = A.upper_right();
  S.bottomLeftCorner(1, N) = A.lower_left();
  S(N, N) = A.scalar;

  normal_ops::OperatorMatrix out;
  out.mat = S;
  out.xp = A.xp;
  out.xip = A.xip;
  out.order = A.order;
  return out;
}

EllipticityReport ellipticity_check(const BlockFamily& family,
                                    const std::vector<double>& grid,
                                    double c_interior, double c_boundary,
                                    int modes) {
  EllipticityReport rep;
  rep.grid = grid;
  double imin = std::numeric_limits<double>::infinity();
  bool has_interior = false;
  double bmin = std::numeric_limits<double>::infinity();
  double drift = 0.0;
  for (double xipv : grid) {
    const BdMBlockSymbol blk = family(xipv, modes);
    const BdMBlockSymbol blk2 = family(xipv, 2 * modes);
    const auto sv = [](const BdMBlockSymbol& b) {
      Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
          principal_boundary_symbol(b).mat);
      return svd.singularValues()(svd.singularValues().size() - 1);
    };
    const double s1 = sv(blk), s2 = sv(blk2);
    rep.min_sv.push_back(s1);
    bmin = std::min(bmin, std::min(s1, s2));
    if (s1 > 0.0) drift = std::max(drift, std::abs(s2 - s1) / s1);
    if (blk.interior.present) {
      has_interior = true;
      const auto& sym = blk.interior.symbol;
      const auto& f = sym.principal ? sym.principal : sym.amplitude;
      for (int k = 0; k < 32; ++k) {
        const double th = -kPi + (k + 0.5) * kTwoPi / 32.0;
        imin = std::min(
            imin, std::abs(f(blk.xp, 0.0, std::cos(th), std::sin(th))));
      }
    }
  }
  rep.interior_min = has_interior ? imin : 0.0;
  rep.boundary_min_sv = bmin;
  rep.refinement_drift = drift;
  rep.interior_pass = !has_interior || imin >= c_interior;
  rep.boundary_pass = bmin >= c_boundary;
  rep.stable = drift <= 0.05;
  rep.elliptic = rep.interior_pass && rep.boundary_pass && rep.stable;
  return rep;
}

normal_ops::OperatorMatrix parametrix_symbol(const BdMBlockSymbol& A) {
  if (std::abs(A.order) > 1e-12 || A.type != 0)
    throw CheckError("bdm.order_mismatch",
                     "parametrix construction requires order 0 and type 0");
  const Eigen::MatrixXcd S = principal_boundary_symbol(A).mat;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(S);
  const auto& sv = svd.singularValues();
  if (sv(0) == 0.0 || sv(sv.size() - 1) < 1e-8 * sv(0))
    throw CheckError("bdm.singular_boundary_symbol",
                     "principal boundary symbol is numerically singular");
  // the A*(AA*)⁻¹ route
  const Eigen::MatrixXcd M = S * S.adjoint();
  const Eigen::MatrixXcd inv = S.adjoint() * M.ldlt().solve(
                                   Eigen::MatrixXcd::Identity(S.rows(),
                                                              S.cols()));
  normal_ops::OperatorMatrix out;
  out.mat = inv;
  out.xp = A.xp;
  out.xip = A.xip;
  out.order = -A.order;
  return out;
}

BdMBlockSymbol egorov_conjugate(const BdMBlockSymbol& A,
                                const BdMBlockSymbol& P) {
  if (A.order > 1e-12 || A.type != 0)
    throw CheckError("bdm.positive_order_adjoint",
                     "conjugation requires A of order <= 0 and type 0");
  if (P.charts.domain != P.charts.codomain ||
      P.charts.domain != A.charts.domain)
    throw CheckError("bdm.chart_mismatch",
                     "P must live over the domain chart of A");
  return compose(compose(A, P), adjoint(A));
}

ClassReport standard_class_check(const BdMBlockSymbol& A) {
  ClassReport r;
  r.chart_identity = A.charts.domain == A.charts.codomain;
  r.type_bound =
      A.type <= std::max(0, static_cast<int>(std::ceil(A.order - 1e-9)));
  r.finite = A.total_matrix().allFinite();
  if (A.interior.present) {
    try {
      const auto tr = symbols::check_transmission(
          A.interior.symbol, symbols::default_boundary_grid());
      r.interior_transmission = tr.pass;
      r.transmission_worst = tr.worst;
    } catch (const CheckError&) {
      r.interior_transmission = false;
    }
  } else {
    r.interior_transmission = true;
  }
  r.pass = r.chart_identity && r.type_bound && r.finite &&
           r.interior_transmission;
  return r;
}

}  // namespace bdmfio::bdm

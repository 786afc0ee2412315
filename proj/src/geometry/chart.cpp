#include "bdmfio/geometry/chart.hpp"

#include <algorithm>
#include <cmath>

#include "bdmfio/fd.hpp"

namespace bdmfio::geometry {

namespace {

constexpr double kSymmetryStep = 0.05;  // FD step for high-order symmetry
                                        // derivatives (6th-order stencils)

Mat canonical_form(int n) {
  Mat omega = Mat::Zero(2 * n, 2 * n);
  omega.topRightCorner(n, n) = Mat::Identity(n, n);
  omega.bottomLeftCorner(n, n) = -Mat::Identity(n, n);
  return omega;
}

double rel_residual(double a, double b) {
  return std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b)));
}

// Enumerate derivative direction lists of total order ≤ 2 over the symmetry
// variables: y′ (indices 0..n−2), y_n (n−1), η′ (n..2n−2).  η_n derivatives
// are not part of the condition.
std::vector<std::vector<int>> symmetry_dirs(int n) {
  std::vector<int> vars;
  for (int i = 0; i <= n - 1; ++i) vars.push_back(i);           // y′ and y_n
  for (int i = n; i <= 2 * n - 2; ++i) vars.push_back(i);       // η′
  std::vector<std::vector<int>> out;
  out.push_back({});
  for (int a : vars) out.push_back({a});
  for (std::size_t i = 0; i < vars.size(); ++i)
    for (std::size_t j = i; j < vars.size(); ++j)
      out.push_back({vars[i], vars[j]});
  return out;
}

int fiber_tangential_count(const std::vector<int>& dirs, int n) {
  int alpha = 0;
  for (int d : dirs)
    if (d >= n && d <= 2 * n - 2) ++alpha;
  return alpha;
}

}  // namespace

bool ChartBox::contains_base(const Vec& y) const {
  if (y_lo.size() == 0) return true;
  for (int i = 0; i < y.size(); ++i)
    if (y(i) < y_lo(i) - 1e-12 || y(i) > y_hi(i) + 1e-12) return false;
  return true;
}

Vec SymplectomorphismChart::apply(const Vec& z) const {
  const double fib = z.tail(n).norm();
  if (fib < excision_radius)
    throw CheckError("chart.degenerate_fiber",
                     "fiber point below the excision radius");
  return forward_fn(z);
}

Mat SymplectomorphismChart::jacobian(const Vec& z) const {
  if (jacobian_fn) return jacobian_fn(z);
  const double h = 1e-5 * fd_scale;
  Mat J(2 * n, 2 * n);
  for (int c = 0; c < 2 * n; ++c) {
    Vec zp = z, zm = z;
    zp(c) += h;
    zm(c) -= h;
    J.col(c) = (forward_fn(zp) - forward_fn(zm)) / (2.0 * h);
  }
  return J;
}

Vec SymplectomorphismChart::invert(const Vec& target) const {
  if (inverse_fn) return inverse_fn(target);
  Vec z = target;  // charts of interest are perturbations of the identity
  const double scale = 1.0 + target.norm();
  for (int it = 0; it < 50; ++it) {
    const Vec res = forward_fn(z) - target;
    if (res.norm() <= 1e-10 * scale) return z;
    const Mat J = jacobian(z);
    Eigen::FullPivLU<Mat> lu(J);
    if (!lu.isInvertible())
      throw CheckError("chart.jacobian_singular",
                       "Jacobian not invertible during Newton inversion");
    const Vec step = lu.solve(res);
    double alpha = 1.0;
    const double r0 = res.norm();
    bool moved = false;
    for (int half = 0; half < 30; ++half) {
      const Vec trial = z - alpha * step;
      if ((forward_fn(trial) - target).norm() < r0) {
        z = trial;
        moved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!moved)
      throw CheckError("chart.newton_divergence",
                       "damped Newton made no progress inverting the chart");
  }
  if ((forward_fn(z) - target).norm() <= 1e-10 * scale) return z;
  throw CheckError("chart.newton_divergence",
                   "Newton inversion did not reach the residual target");
}

SymplectomorphismChart SymplectomorphismChart::identity(int n) {
  SymplectomorphismChart c;
  c.n = n;
  c.forward_fn = [](const Vec& z) { return z; };
  c.jacobian_fn = [n](const Vec&) {
    return Mat(Mat::Identity(2 * n, 2 * n));
  };
  c.inverse_fn = [](const Vec& z) { return z; };
  c.box.y_lo = Vec::Constant(n, -1.0);
  c.box.y_hi = Vec::Constant(n, 1.0);
  c.box.y_lo(n - 1) = 0.0;
  return c;
}

SymplectomorphismChart SymplectomorphismChart::normal_scaling(
    std::function<double(double)> f, std::function<double(double)> fp) {
  SymplectomorphismChart c;
  c.n = 2;
  c.forward_fn = [f, fp](const Vec& z) {
    const double y1 = z(0), yn = z(1), e1 = z(2), en = z(3);
    const double fv = f(y1), fd = fp(y1);
    Vec out(4);
    out(0) = y1;
    out(1) = yn / fv;
    out(2) = e1 + fd * yn * en / fv;
    out(3) = fv * en;
    return out;
  };
  c.inverse_fn = [f, fp](const Vec& w) {
    const double x1 = w(0), xn = w(1), k1 = w(2), kn = w(3);
    const double fv = f(x1), fd = fp(x1);
    Vec out(4);
    out(0) = x1;
    out(1) = fv * xn;
    out(2) = k1 - fd * xn * kn / fv;
    out(3) = kn / fv;
    return out;
  };
  c.box.y_lo = Vec::Constant(2, -1.0);
  c.box.y_hi = Vec::Constant(2, 1.0);
  c.box.y_lo(1) = 0.0;
  return c;
}

SymplectomorphismChart SymplectomorphismChart::base_doubling(int n) {
  SymplectomorphismChart c = identity(n);
  c.forward_fn = [n](const Vec& z) {
    Vec out = z;
    out.head(n) *= 2.0;
    return out;
  };
  c.jacobian_fn = {};
  c.inverse_fn = [n](const Vec& z) {
    Vec out = z;
    out.head(n) *= 0.5;
    return out;
  };
  return c;
}

bool AdmissibilityReport::pass() const {
  return std::all_of(criteria.begin(), criteria.end(),
                     [](const CriterionResult& c) { return c.pass; });
}

const CriterionResult& AdmissibilityReport::find(
    const std::string& name) const {
  for (const auto& c : criteria)
    if (c.name == name) return c;
  throw CheckError("report.unknown_criterion", name);
}

AdmissibilityTolerances AdmissibilityTolerances::scaled(double f) const {
  AdmissibilityTolerances t = *this;
  t.homogeneity *= f;
  t.boundary *= f;
  t.symplectic *= f;
  t.jacobian_pattern *= f;
  t.symmetry *= f;
  return t;
}

std::vector<Vec> default_sample_grid(const SymplectomorphismChart& chart) {
  const int n = chart.n;
  std::vector<Vec> base;
  // base points: center/edges of the box per tangential coordinate; normal
  // coordinate sweeps {0, interior}
  std::vector<double> tang{-0.5, 0.0, 0.5};
  std::vector<double> norm{0.0, 0.3, 0.8};
  if (chart.box.y_lo.size() == n) {
    for (double& t : tang)
      t = 0.5 * (chart.box.y_lo(0) + chart.box.y_hi(0)) +
          t * 0.45 * (chart.box.y_hi(0) - chart.box.y_lo(0));
    for (double& t : norm)
      t = chart.box.y_lo(n - 1) +
          t * 0.9 * (chart.box.y_hi(n - 1) - chart.box.y_lo(n - 1));
    norm[0] = chart.box.y_lo(n - 1);
  }
  std::vector<Vec> samples;
  for (double y1 : tang) {
    for (double yn : norm) {
      Vec y = Vec::Zero(n);
      y(0) = y1;
      y(n - 1) = yn;
      for (int a = 0; a < 8; ++a) {
        const double th = kTwoPi * a / 8.0;
        for (double r : {1.0, 1.5}) {
          Vec eta = Vec::Zero(n);
          eta(0) = r * std::cos(th);
          eta(n - 1) = r * std::sin(th);
          Vec z(2 * n);
          z << y, eta;
          samples.push_back(z);
        }
      }
    }
  }
  return samples;
}

double symmetry_residual(
    const std::function<double(const Vec&, const Vec&)>& c, int n, double m,
    const std::vector<Vec>& yprime_samples) {
  // variables layout for fd::partial: z = (y (n), η (n))
  auto F = [&](const Vec& z) {
    return c(z.head(n), z.tail(n));
  };
  double worst = 0.0;
  for (const auto& yp : yprime_samples) {
    Vec zp = Vec::Zero(2 * n), zm = Vec::Zero(2 * n);
    zp.head(n - 1) = yp;
    zm.head(n - 1) = yp;
    zp(2 * n - 1) = 1.0;   // η = (0, +1)
    zm(2 * n - 1) = -1.0;  // η = (0, −1)
    for (const auto& dirs : symmetry_dirs(n)) {
      const int alpha = fiber_tangential_count(dirs, n);
      const double lhs = fd::partial(F, zp, dirs, kSymmetryStep);
      const double rhs = fd::partial(F, zm, dirs, kSymmetryStep);
      const double sign =
          (std::lround(m) - alpha) % 2 == 0 ? 1.0 : -1.0;
      worst = std::max(worst, rel_residual(lhs, sign * rhs));
    }
  }
  return worst;
}

AdmissibilityReport check_admissible(const SymplectomorphismChart& chart,
                                     const std::vector<Vec>& samples,
                                     const AdmissibilityTolerances& tol) {
  const int n = chart.n;
  for (const auto& z : samples)
    if (z.tail(n).norm() < chart.excision_radius)
      throw CheckError("chart.degenerate_fiber",
                       "sample fiber below the excision radius");
  AdmissibilityReport rep;

  // 1. fiber homogeneity of degree 1
  double worst_h = 0.0;
  for (const auto& z : samples) {
    const Vec w1 = chart.forward_fn(z);
    for (double lam : {2.0, 5.0}) {
      Vec zs = z;
      zs.tail(n) *= lam;
      const Vec wl = chart.forward_fn(zs);
      for (int i = 0; i < n; ++i) {
        worst_h = std::max(worst_h, rel_residual(wl(i), w1(i)));
        worst_h =
            std::max(worst_h, rel_residual(wl(n + i), lam * w1(n + i)));
      }
    }
  }
  rep.criteria.push_back(
      {"homogeneity", worst_h <= tol.homogeneity, worst_h});

  // 2. boundary preservation
  double worst_b = 0.0;
  for (const auto& z : samples) {
    if (std::abs(z(n - 1)) > 1e-14) continue;
    const Vec w = chart.forward_fn(z);
    worst_b = std::max(worst_b, std::abs(w(n - 1)) / (1.0 + w.norm()));
  }
  rep.criteria.push_back(
      {"boundary_preservation", worst_b <= tol.boundary, worst_b});

  // 3. symplecticity
  const Mat omega = canonical_form(n);
  double worst_s = 0.0;
  for (const auto& z : samples) {
    const Mat J = chart.jacobian(z);
    worst_s = std::max(
        worst_s, (J.transpose() * omega * J - omega).norm());
  }
  rep.criteria.push_back(
      {"symplecticity", worst_s <= tol.symplectic, worst_s});

  // 4. boundary Jacobian zero pattern
  double worst_j = 0.0;
  bool positive_normal = true;
  for (const auto& z : samples) {
    if (std::abs(z(n - 1)) > 1e-14) continue;
    const Mat J = chart.jacobian(z);
    for (int i = 0; i < n - 1; ++i) {
      worst_j = std::max(worst_j, std::abs(J(i, 2 * n - 1)));        // ∂_{η_n}x′*
      worst_j = std::max(worst_j, std::abs(J(n + i, 2 * n - 1)));    // ∂_{η_n}ξ′*
      worst_j = std::max(worst_j, std::abs(J(n - 1, i)));            // ∂_{y′}x_n*
      worst_j = std::max(worst_j, std::abs(J(n - 1, n + i)));        // ∂_{η′}x_n*
    }
    worst_j = std::max(worst_j, std::abs(J(n - 1, 2 * n - 1)));      // ∂_{η_n}x_n*
    if (J(n - 1, n - 1) <= 0.0) positive_normal = false;
    worst_j = std::max(
        worst_j, std::abs(J(n - 1, n - 1) * J(2 * n - 1, 2 * n - 1) - 1.0));
  }
  rep.criteria.push_back({"jacobian_pattern",
                          positive_normal && worst_j <= tol.jacobian_pattern,
                          worst_j});

  // 5. componentwise symmetry condition
  std::vector<Vec> yprimes;
  for (const auto& z : samples) {
    if (std::abs(z(n - 1)) > 1e-14) continue;
    bool seen = false;
    for (const auto& yp : yprimes)
      if ((yp - z.head(n - 1)).norm() < 1e-12) seen = true;
    if (!seen) yprimes.push_back(z.head(n - 1));
  }
  double worst_c = 0.0;
  for (int comp = 0; comp < 2 * n; ++comp) {
    const double deg = comp < n ? 0.0 : 1.0;
    auto component = [&chart, comp](const Vec& y, const Vec& eta) {
      Vec z(y.size() + eta.size());
      z << y, eta;
      return chart.forward_fn(z)(comp);
    };
    worst_c = std::max(
        worst_c, symmetry_residual(component, n, deg, yprimes));
  }
  rep.criteria.push_back(
      {"component_symmetry", worst_c <= tol.symmetry, worst_c});

  return rep;
}

BoundaryReduction induce_boundary_map(const SymplectomorphismChart& chart) {
  const int n = chart.n;
  // precondition: boundary preservation
  {
    Vec z = Vec::Zero(2 * n);
    z(0) = 0.3;
    z(2 * n - 1) = 1.0;
    z(n) = 0.7;
    const Vec w = chart.forward_fn(z);
    if (std::abs(w(n - 1)) > 1e-8)
      throw CheckError("boundary.not_preserved",
                       "chart does not preserve the boundary");
  }
  // captured by value: the returned closures must outlive the chart argument
  auto eval_at = [chart, n](const Vec& yp, const Vec& etap, double etan) {
    Vec z = Vec::Zero(2 * n);
    z.head(n - 1) = yp;
    z.segment(n, n - 1) = etap;
    z(2 * n - 1) = etan;
    return chart.forward_fn(z);
  };
  // verify η_n-independence and η′-independence of the base part, and
  // fiber-linearity of the boundary fiber part
  std::vector<Vec> yps;
  for (double y1 : {-0.5, 0.0, 0.4}) yps.push_back(Vec::Constant(n - 1, y1));
  std::vector<Vec> etaps;
  for (double e1 : {-1.0, -0.4, 0.5, 1.0})
    etaps.push_back(Vec::Constant(n - 1, e1));
  const double tol = 1e-8;
  for (const auto& yp : yps) {
    const Vec ref = eval_at(yp, etaps[0], 1.0);
    for (const auto& ep : etaps) {
      for (double en : {-1.0, -0.3, 0.5, 1.0}) {
        const Vec w = eval_at(yp, ep, en);
        // base part must depend on y′ only
        if ((w.head(n - 1) - ref.head(n - 1)).norm() > tol)
          throw CheckError("boundary.not_a_lift",
                           "boundary base map depends on the fiber");
        // boundary fiber part must not see η_n
        const Vec w2 = eval_at(yp, ep, 1.0);
        if ((w.segment(n, n - 1) - w2.segment(n, n - 1)).norm() > tol)
          throw CheckError("boundary.not_a_lift",
                           "boundary fiber map depends on η_n");
      }
    }
  }
  auto base_map = [eval_at, n](const Vec& yp) {
    Vec e0 = Vec::Zero(n - 1);
    e0(0) = 1.0;
    return Vec(eval_at(yp, e0, 1.0).head(n - 1));
  };
  auto fiber_lin = [eval_at, n](const Vec& yp) {
    Mat L(n - 1, n - 1);
    for (int j = 0; j < n - 1; ++j) {
      Vec ej = Vec::Zero(n - 1);
      ej(j) = 1.0;
      L.col(j) = eval_at(yp, ej, 1.0).segment(n, n - 1);
    }
    return L;
  };
  // linearity: ξ′*_∂(y′,η′) = L(y′)η′ at mixed samples, and the lift law
  // L = (Db)^{−T}
  for (const auto& yp : yps) {
    const Mat L = fiber_lin(yp);
    for (const auto& ep : etaps) {
      const Vec w = eval_at(yp, ep, 1.0).segment(n, n - 1);
      if ((w - L * ep).norm() > tol * (1.0 + w.norm()))
        throw CheckError("boundary.not_a_lift",
                         "boundary fiber map is not linear in η′");
    }
    Mat Db(n - 1, n - 1);
    const double h = 1e-5 * chart.fd_scale;
    for (int j = 0; j < n - 1; ++j) {
      Vec yjp = yp, yjm = yp;
      yjp(j) += h;
      yjm(j) -= h;
      Db.col(j) = (base_map(yjp) - base_map(yjm)) / (2.0 * h);
    }
    const Mat lift = Db.inverse().transpose();
    if ((L - lift).norm() > 1e-6 * (1.0 + L.norm()))
      throw CheckError("boundary.not_a_lift",
                       "boundary fiber map is not the cotangent lift of b");
  }

  BoundaryReduction out;
  out.base_map = base_map;
  out.fiber_lin = fiber_lin;
  SymplectomorphismChart bc;
  bc.n = n - 1;
  bc.forward_fn = [base_map, fiber_lin, n](const Vec& z) {
    const int m = n - 1;
    const Vec yp = z.head(m);
    const Vec ep = z.tail(m);
    Vec out2(2 * m);
    out2.head(m) = base_map(yp);
    out2.tail(m) = fiber_lin(yp) * ep;
    return out2;
  };
  bc.box.y_lo = chart.box.y_lo.size() ? Vec(chart.box.y_lo.head(n - 1))
                                      : Vec();
  bc.box.y_hi = chart.box.y_hi.size() ? Vec(chart.box.y_hi.head(n - 1))
                                      : Vec();
  out.boundary_chart = std::move(bc);
  return out;
}

SymplectomorphismChart hamiltonian_flow_chart(
    const std::function<double(const Vec&, const Vec&)>& h, double time,
    int n, const ChartBox& box) {
  // precondition checks at boundary samples: ∂_{y_n}h = 0 and ∂_{η_n}h = 0
  // (tangency of the Hamiltonian field to {y_n = 0}), symmetry condition
  {
    std::vector<Vec> yps;
    for (double y1 : {-0.5, 0.0, 0.4}) yps.push_back(Vec::Constant(n - 1, y1));
    auto F = [&](const Vec& z) { return h(z.head(n), z.tail(n)); };
    for (const auto& yp : yps) {
      for (int a = 0; a < 8; ++a) {
        const double th = kTwoPi * a / 8.0;
        Vec z = Vec::Zero(2 * n);
        z.head(n - 1) = yp;
        z(n) = std::cos(th);
        z(2 * n - 1) = std::sin(th);
        if (z.tail(n).norm() < 1e-8) continue;
        const double dyn = fd::partial(F, z, {n - 1}, 1e-4);
        const double den = fd::partial(F, z, {2 * n - 1}, 1e-4);
        if (std::abs(dyn) > 1e-8 || std::abs(den) > 1e-8)
          throw CheckError(
              "flow.boundary_tangency",
              "generator must have vanishing normal derivatives at the "
              "boundary");
      }
    }
    const double sym = symmetry_residual(h, n, 1.0, yps);
    if (sym > 1e-6)
      throw CheckError("flow.admissibility",
                       "generator violates the symmetry condition");
  }

  const int steps = std::max(64, static_cast<int>(std::ceil(
                                     std::abs(time) / 0.005)));
  auto field = [h, n](const Vec& z) {
    auto F = [&](const Vec& w) { return h(w.head(n), w.tail(n)); };
    Vec v(2 * n);
    const double step = 1e-6;
    for (int i = 0; i < n; ++i) {
      v(i) = fd::partial(F, z, {n + i}, step);       //  ẏ =  ∂_η h
      v(n + i) = -fd::partial(F, z, {i}, step);      //  η̇ = −∂_y h
    }
    return v;
  };
  auto flow = [field, steps, time, box, n](const Vec& z0) {
    Vec z = z0;
    const double dt = time / steps;
    for (int s = 0; s < steps; ++s) {
      const Vec k1 = field(z);
      const Vec k2 = field(z + 0.5 * dt * k1);
      const Vec k3 = field(z + 0.5 * dt * k2);
      const Vec k4 = field(z + dt * k3);
      z += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      if (box.y_lo.size() == n) {
        for (int i = 0; i < n; ++i) {
          const double margin = 0.5 * (box.y_hi(i) - box.y_lo(i));
          if (z(i) < box.y_lo(i) - margin || z(i) > box.y_hi(i) + margin)
            throw CheckError("flow.leaves_chart",
                             "trajectory left the chart box");
        }
      }
    }
    return z;
  };

  SymplectomorphismChart chart;
  chart.n = n;
  chart.box = box;
  chart.forward_fn = flow;
  // forward values carry ~1e-11 integration noise; a larger FD step keeps
  // Jacobian-based criteria (symplecticity, zero pattern) below 1e-7
  chart.fd_scale = 10.0;
  AdmissibilityTolerances relaxed;
  relaxed.homogeneity = 1e-6;
  relaxed.boundary = 1e-6;
  relaxed.symplectic = 1e-6;
  relaxed.jacobian_pattern = 1e-6;
  relaxed.symmetry = 1e-6;
  const auto report =
      check_admissible(chart, default_sample_grid(chart), relaxed);
  if (!report.pass())
    throw CheckError("flow.admissibility",
                     "flow chart fails the admissibility criteria");
  return chart;
}

}  // namespace bdmfio::geometry

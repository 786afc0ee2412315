#include "bdmfio/geometry/phase.hpp"

#include <cmath>

#include "bdmfio/fd.hpp"

namespace bdmfio::geometry {

namespace {

// Damped Newton for G(u) = target with FD Jacobian; shared by the phase
// critical-point solves.
Vec newton_solve(const std::function<Vec(const Vec&)>& G, const Vec& target,
                 Vec u0, double fd_step) {
  const double scale = 1.0 + target.norm();
  Vec u = std::move(u0);
  const int m = static_cast<int>(target.size());
  for (int it = 0; it < 50; ++it) {
    const Vec res = G(u) - target;
    if (res.norm() <= 1e-12 * scale) return u;
    Mat J(m, m);
    for (int c = 0; c < m; ++c) {
      Vec up = u, um = u;
      up(c) += fd_step;
      um(c) -= fd_step;
      J.col(c) = (G(up) - G(um)) / (2.0 * fd_step);
    }
    Eigen::FullPivLU<Mat> lu(J);
    if (!lu.isInvertible())
      throw CheckError("phase.nondegenerate",
                       "critical-point Jacobian is singular");
    const Vec step = lu.solve(res);
    double alpha = 1.0;
    const double r0 = res.norm();
    bool moved = false;
    for (int half = 0; half < 30; ++half) {
      const Vec trial = u - alpha * step;
      if ((G(trial) - target).norm() < r0) {
        u = trial;
        moved = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!moved)
      throw CheckError("phase.newton_divergence",
                       "no descent while solving the critical equations");
  }
  if ((G(u) - target).norm() <= 1e-12 * scale) return u;
  throw CheckError("phase.newton_divergence",
                   "critical-point solve missed the residual target");
}

}  // namespace

double PhaseFunction::eval(const Vec& x, const Vec& theta) const {
  if (theta.norm() < excision_radius)
    throw CheckError("phase.degenerate_fiber",
                     "phase evaluated below the excision radius");
  return psi(x, theta);
}

Vec PhaseFunction::grad_x(const Vec& x, const Vec& theta) const {
  Vec g(n);
  const double h = 1e-4 * fd_scale;
  for (int i = 0; i < n; ++i) {
    g(i) = fd::central7(
        [&](double t) {
          Vec xt = x;
          xt(i) = t;
          return psi(xt, theta);
        },
        x(i), h);
  }
  return g;
}

Vec PhaseFunction::grad_theta(const Vec& x, const Vec& theta) const {
  Vec g(n);
  const double h = 1e-4 * fd_scale;
  for (int i = 0; i < n; ++i) {
    g(i) = fd::central7(
        [&](double t) {
          Vec tt = theta;
          tt(i) = t;
          return psi(x, tt);
        },
        theta(i), h);
  }
  return g;
}

PhaseFunction PhaseFunction::linear(int n) {
  PhaseFunction p;
  p.n = n;
  p.psi = [](const Vec& x, const Vec& th) { return x.dot(th); };
  return p;
}

PhaseFunction PhaseFunction::normal_scaling(std::function<double(double)> f) {
  PhaseFunction p;
  p.n = 2;
  p.psi = [f](const Vec& x, const Vec& th) {
    return x(0) * th(0) + f(x(0)) * x(1) * th(1);
  };
  return p;
}

PhaseFunction build_phase(const SymplectomorphismChart& chart,
                          QuantSide side) {
  const int n = chart.n;
  // nondegeneracy: det ∂_η ξ*(y,η) ≠ 0 on the sample grid
  for (const auto& z : default_sample_grid(chart)) {
    const Mat J = chart.jacobian(z);
    const Mat dxi_deta = J.bottomRightCorner(n, n);
    if (std::abs(dxi_deta.determinant()) < 1e-8)
      throw CheckError("phase.nondegenerate",
                       "fiber block of the Jacobian is degenerate");
  }
  PhaseFunction p;
  p.n = n;
  p.side = side;
  p.fd_scale = chart.fd_scale;
  const double fd_step = 1e-6 * chart.fd_scale;
  if (side == QuantSide::Left) {
    // ψ_L(x,η) = y·η where y solves base(χ(y,η)) = x (degree-1 homogeneity
    // turns the generating value into y·η)
    p.psi = [chart, n, fd_step](const Vec& x, const Vec& eta) {
      auto G = [&](const Vec& y) {
        Vec z(2 * n);
        z << y, eta;
        return Vec(chart.forward_fn(z).head(n));
      };
      const Vec y = newton_solve(G, x, x, fd_step);
      return y.dot(eta);
    };
  } else {
    // ψ_R(y,ξ) = x·ξ where η solves fiber(χ(y,η)) = ξ
    p.psi = [chart, n, fd_step](const Vec& y, const Vec& xi) {
      auto G = [&](const Vec& eta) {
        Vec z(2 * n);
        z << y, eta;
        return Vec(chart.forward_fn(z).tail(n));
      };
      const Vec eta = newton_solve(G, xi, xi, fd_step);
      Vec z(2 * n);
      z << y, eta;
      return chart.forward_fn(z).head(n).dot(xi);
    };
  }
  // graph reproduction: stationary equations recover the chart to ≤ 1e-6
  double worst = 0.0;
  for (const auto& z : default_sample_grid(chart)) {
    if (z(n - 1) < 0.05) continue;  // interior samples for the generic check
    const Vec w = chart.forward_fn(z);
    const Vec y = z.head(n), eta = z.tail(n);
    const Vec x = w.head(n), xi = w.tail(n);
    if (side == QuantSide::Left) {
      worst = std::max(worst, (p.grad_theta(x, eta) - y).norm());
      worst = std::max(worst, (p.grad_x(x, eta) - xi).norm());
    } else {
      worst = std::max(worst, (p.grad_theta(y, xi) - x).norm());
      worst = std::max(worst, (p.grad_x(y, xi) - eta).norm());
    }
  }
  if (worst > 1e-6)
    throw CheckError("phase.graph_mismatch",
                     "phase does not reproduce the chart graph");
  return p;
}

std::function<double(const Vec&, const Vec&)> phase_boundary_part(
    const PhaseFunction& phase) {
  const int n = phase.n;
  // validate ∂_{ξ_n}ψ(x′,0,ξ′,ξ_n) ≈ 0 over samples
  for (double x1 : {-0.5, 0.0, 0.4}) {
    for (double e1 : {-1.0, -0.4, 0.5, 1.0}) {
      for (double en : {-1.0, -0.3, 0.5, 1.0}) {
        Vec x = Vec::Zero(n);
        x(0) = x1;
        Vec th = Vec::Zero(n);
        th(0) = e1;
        th(n - 1) = en;
        const double d = fd::central7(
            [&](double t) {
              Vec tt = th;
              tt(n - 1) = t;
              return phase.psi(x, tt);
            },
            en, 1e-4);
        if (std::abs(d) > 1e-9)
          throw CheckError(
              "phase.boundary_normal_fiber",
              "boundary value of the phase depends on the normal fiber");
      }
    }
  }
  auto psi = phase.psi;
  return [psi, n](const Vec& xp, const Vec& xip) {
    Vec x = Vec::Zero(n);
    x.head(n - 1) = xp;
    Vec th = Vec::Zero(n);
    th.head(n - 1) = xip;
    th(n - 1) = 1.0;
    return psi(x, th);
  };
}

}  // namespace bdmfio::geometry

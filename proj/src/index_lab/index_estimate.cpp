/**
 * @file index_estimate.cpp
 * @brief Quantization of unitary sections and the two-chart SVD index model.
 *
 * The interval model places one boundary chart at each end of [0,1] and
 * realizes the block's upper-left matrix M (on K Laguerre modes) through
 * scaled frames φ_k(βx)√β, β = 4K, so every mode lives inside its half of
 * the interval.  With smooth tapers s₀² + s₁² = 1 and the quadrature-folded
 * frames B̃_c = diag(√(ω)·s_c)·B_c the weighted global operator is
 *   Ũ = I + B̃₀ (M − I) B̃₀ᵀ + B̃₁ (M − I) B̃₁ᵀ,
 * a localized perturbation of the identity.  Singular values below
 * τ = 1e-6·s_max count as kernel/cokernel; the counts must agree across a
 * node-doubled grid and the tightened threshold τ/10, and the reported gap
 * is the ratio of the smallest kept to the largest dropped singular value.
 */
#include "bdmfio/index_lab/index_estimate.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "bdmfio/geometry/phase.hpp"
#include "bdmfio/halfline/laguerre.hpp"
#include "bdmfio/quad/oscillatory.hpp"

namespace bdmfio::index_lab {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;

struct IntervalGrid {
  std::vector<double> x, w;
};

/**
 * Composite Gauss–Legendre grid on [0,1]: geometric refinement toward both
 * endpoints down to 1/(4β), with interior panel widths capped to resolve
 * the top frame mode (local wavenumber ~ √(4Kβ/x)).
 */
IntervalGrid interval_grid(int K, int nodes) {
  const double beta = 4.0 * K;
  std::vector<double> half{0.0};
  double e = 1.0 / (4.0 * beta);
  while (e < 0.5 - 1e-12) {
    half.push_back(e);
    const double hmax = 7.5 * std::sqrt(e / (4.0 * K * beta));
    e += std::min(e, std::max(hmax, 1.0 / (4.0 * beta)));
  }
  half.push_back(0.5);
  std::vector<double> edges = half;
  for (auto it = half.rbegin() + 1; it != half.rend(); ++it)
    edges.push_back(1.0 - *it);
  std::vector<double> gx, gw;
  quad::gauss_legendre(nodes, gx, gw);
  IntervalGrid g;
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    const double mid = 0.5 * (edges[p] + edges[p + 1]);
    const double h = 0.5 * (edges[p + 1] - edges[p]);
    for (int q = 0; q < nodes; ++q) {
      g.x.push_back(mid + h * gx[q]);
      g.w.push_back(h * gw[q]);
    }
  }
  return g;
}

/// Quadrature- and taper-folded frame B̃[i,k] = √(ω_i)·s_c(x_i)·√β·φ_k(βx_c),
/// with x_c the chart coordinate (x at the left end, 1−x at the right).
MatrixXd folded_frame(const IntervalGrid& g, int K, bool right_end) {
  const auto& basis = halfline::HalfLineBasis::get(K);
  const double beta = 4.0 * K;
  const int n = static_cast<int>(g.x.size());
  MatrixXd B(n, K);
  std::vector<double> buf(K);
  for (int i = 0; i < n; ++i) {
    const double xc = right_end ? 1.0 - g.x[i] : g.x[i];
    basis.eval_basis(beta * xc, buf.data());
    const double phi0 = smooth_step_down(g.x[i]);  // left taper²
    const double taper = std::sqrt(right_end ? 1.0 - phi0 : phi0);
    const double scale = std::sqrt(g.w[i] * beta) * taper;
    for (int k = 0; k < K; ++k) B(i, k) = scale * buf[k];
  }
  return B;
}

/// Singular values (descending) of the weighted global operator at the
/// given per-panel node count, via the eigenvalues of ŨᴴŨ.
VectorXd model_singular_values(const MatrixXcd& M, int nodes) {
  const int K = static_cast<int>(M.rows());
  const IntervalGrid g = interval_grid(K, nodes);
  const int n = static_cast<int>(g.x.size());
  const MatrixXcd D = M - MatrixXcd::Identity(K, K);
  MatrixXcd U = MatrixXcd::Identity(n, n);
  const MatrixXd B0 = folded_frame(g, K, false);
  const MatrixXd B1 = folded_frame(g, K, true);
  U += B0 * D * B0.transpose();
  U += B1 * D * B1.transpose();
  Eigen::SelfAdjointEigenSolver<MatrixXcd> eig(U.adjoint() * U);
  VectorXd sv = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  std::sort(sv.data(), sv.data() + sv.size(), std::greater<double>());
  return sv;
}

int count_below(const VectorXd& sv, double tau) {
  int c = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) < tau) ++c;
  return c;
}

}  // namespace

int winding_number(const Section& section, int samples) {
  double total = 0.0;
  cplx prev = section(1.0, 0.0);
  for (int k = 1; k <= samples; ++k) {
    const double th = kTwoPi * k / samples;
    const cplx cur = section(std::cos(th), std::sin(th));
    if (std::abs(cur) < 1e-9 || std::abs(prev) < 1e-9)
      throw CheckError("index.non_unitary_section",
                       "section vanishes on the cosphere");
    total += std::arg(cur / prev);
    prev = cur;
  }
  const double w = total / kTwoPi;
  const long r = std::lround(w);
  if (std::abs(w - r) > 0.25)
    throw CheckError("index.non_unitary_section",
                     "section winding is not integral: " + std::to_string(w));
  return static_cast<int>(r);
}

bdm::BdMBlockSymbol build_U(const geometry::SymplectomorphismChart& chart,
                            const Section& section, double xp, double xip,
                            int modes) {
  geometry::AdmissibilityTolerances tol;
  tol.homogeneity = tol.boundary = tol.symplectic = 1e-6;
  tol.jacobian_pattern = tol.symmetry = 1e-6;
  const auto rep =
      geometry::check_admissible(chart, geometry::default_sample_grid(chart),
                                 tol);
  if (!rep.pass())
    throw CheckError("index.chart_not_admissible",
                     "chart fails the admissibility criteria");
  for (int k = 0; k < 64; ++k) {
    const double th = kTwoPi * k / 64.0;
    const double m = std::abs(section(std::cos(th), std::sin(th)));
    if (std::abs(m - 1.0) > 1e-8)
      throw CheckError("index.non_unitary_section",
                       "|u| deviates from 1 by " + std::to_string(m - 1.0));
  }
  // frozen phase scale of the chart's generating phase
  const geometry::PhaseFunction phase =
      geometry::build_phase(chart, geometry::QuantSide::Left);
  geometry::Vec x(2), th(2);
  x << xp, 0.0;
  th << 0.0, 1.0;
  const double f = phase.grad_x(x, th)(1);
  if (!(f > 0.0))
    throw CheckError("index.chart_not_admissible",
                     "frozen phase scale is not positive");

  symbols::ScalarSymbol sym;
  sym.order = 0.0;
  const Section s = section;
  sym.amplitude = [s](double, double, double xipv, double xinv) -> cplx {
    const double r = std::hypot(xipv, xinv);
    if (r < 1e-12) return 0.0;
    return excision_zeta(r / 0.25) * s(xipv / r, xinv / r);
  };
  sym.principal = [s](double, double, double xipv, double xinv) -> cplx {
    const double r = std::hypot(xipv, xinv);
    return s(xipv / r, xinv / r);
  };
  sym.excised = true;
  sym.support_radius = 0.5;

  bdm::BlockParts parts;
  parts.interior.present = true;
  parts.interior.symbol = sym;
  parts.interior.phase_scale = f;
  return bdm::assemble_block(parts, 0.0, 0, bdm::ChartRefs{}, xp, xip, modes);
}

IndexReport index_estimate(const bdm::BdMBlockSymbol& block, double tau,
                           int nodes) {
  const MatrixXcd M = block.upper_left().mat;
  const VectorXd sv = model_singular_values(M, nodes);
  const VectorXd sv2 = model_singular_values(M, 2 * nodes);

  IndexReport rep;
  rep.smax = sv2(0);
  rep.tau = tau > 0.0 ? tau : 1e-6 * rep.smax;

  const int counts[4] = {count_below(sv, rep.tau),
                         count_below(sv, rep.tau / 10.0),
                         count_below(sv2, rep.tau),
                         count_below(sv2, rep.tau / 10.0)};
  for (int k = 1; k < 4; ++k)
    if (counts[k] != counts[0])
      throw CheckError("index.unstable_index",
                       "kernel count moved under refinement: " +
                           std::to_string(counts[0]) + " vs " +
                           std::to_string(counts[k]));

  rep.kernel_dim = counts[0];
  rep.cokernel_dim = counts[0];  // the square model pairs the counts
  rep.estimated_index = rep.kernel_dim - rep.cokernel_dim;
  const int nz = static_cast<int>(sv2.size()) - rep.kernel_dim;
  const double above = nz > 0 ? sv2(nz - 1) : 0.0;
  const double below =
      rep.kernel_dim > 0 ? sv2(nz) : 1e-15 * std::max(rep.smax, 1e-300);
  rep.svd_gap = above / std::max(below, 1e-15 * rep.smax);
  rep.stable = rep.svd_gap >= 10.0;
  return rep;
}

int section_independence_probe(const geometry::SymplectomorphismChart& chart,
                               const Section& s1, const Section& s2,
                               double xp, double xip, int modes) {
  const int w1 = winding_number(s1);
  const int w2 = winding_number(s2);
  if (w1 != w2)
    throw CheckError("index.obstructed_homotopy",
                     "section winding numbers differ: " + std::to_string(w1) +
                         " vs " + std::to_string(w2));
  const IndexReport r1 = index_estimate(build_U(chart, s1, xp, xip, modes));
  const IndexReport r2 = index_estimate(build_U(chart, s2, xp, xip, modes));
  return r1.estimated_index - r2.estimated_index;
}

}  // namespace bdmfio::index_lab

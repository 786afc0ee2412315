/**
 * @file chart.hpp
 * @brief Homogeneous canonical transformations of the half-space cotangent
 *        model and their admissibility checks.
 *
 * A chart is a degree-1 fiber-homogeneous map χ(y,η) = (x*,ξ*) on
 * ℝ^{n}_+ × (ℝ^{n}∖0) with the last base coordinate normal to the boundary
 * {y_n = 0}.  Admissibility bundles five sampled criteria:
 *   - fiber homogeneity of degree 1,
 *   - boundary preservation x_n*(y′,0,η) = 0,
 *   - symplecticity JᵀΩJ = Ω,
 *   - the boundary Jacobian zero pattern (∂_{η_n}x′*, ∂_{η_n}ξ′*, ∂_{y′}x_n*,
 *     ∂_{η′}x_n*, ∂_{η_n}x_n* all vanish at y_n = 0, ∂_{y_n}x_n* > 0, and
 *     ∂_{y_n}x_n*·∂_{η_n}ξ_n* = 1),
 *   - the componentwise symmetry condition: every component c of χ, viewed
 *     as a fiber-homogeneous function of degree m (0 for base, 1 for fiber
 *     components), satisfies
 *       ∂^k_{y_n}∂^α_{η′}∂^β_{y′} c(y′,0,0,+1)
 *         = (−1)^{m−|α|} ∂^k_{y_n}∂^α_{η′}∂^β_{y′} c(y′,0,0,−1).
 */
#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

#include "bdmfio/common.hpp"

namespace bdmfio::geometry {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Validity region: base box × fiber annulus.
struct ChartBox {
  Vec y_lo, y_hi;
  double fiber_min = 0.25;
  double fiber_max = 4.0;

  bool contains_base(const Vec& y) const;
};

class SymplectomorphismChart {
public:
  int n = 2;  // base dimension; coordinate n−1 is normal to the boundary
  /// z = (y, η) ∈ ℝ^{2n} → (x*, ξ*); required.
  std::function<Vec(const Vec&)> forward_fn;
  /// Optional analytic Jacobian ∂(x*,ξ*)/∂(y,η); finite differences otherwise.
  std::function<Mat(const Vec&)> jacobian_fn;
  /// Optional analytic inverse; damped Newton otherwise.
  std::function<Vec(const Vec&)> inverse_fn;
  ChartBox box;
  double fd_scale = 1.0;          // FD step is 1e-5 · fd_scale
  double excision_radius = 1e-6;  // fibers below this are degenerate

  Vec apply(const Vec& z) const;
  Mat jacobian(const Vec& z) const;
  /// Solve forward(z) = target (damped Newton: 50 iterations, residual
  /// 1e-10, halving steps).  Throws chart.newton_divergence /
  /// chart.jacobian_singular.
  Vec invert(const Vec& target) const;

  // -- built-in families ----------------------------------------------------
  static SymplectomorphismChart identity(int n);
  /// n = 2 family scaling the normal direction by a positive f(y′):
  /// (y′,y_n,η′,η_n) ↦ (y′, y_n/f, η′ + f′ y_n η_n/f, f η_n).
  static SymplectomorphismChart normal_scaling(
      std::function<double(double)> f, std::function<double(double)> fp);
  /// Non-symplectic control case (y,η) ↦ (2y, η).
  static SymplectomorphismChart base_doubling(int n);
};

struct CriterionResult {
  std::string name;
  bool pass = false;
  double worst = 0.0;
};

struct AdmissibilityReport {
  std::vector<CriterionResult> criteria;
  bool pass() const;
  const CriterionResult& find(const std::string& name) const;
};

struct AdmissibilityTolerances {
  double homogeneity = 1e-8;
  double boundary = 1e-10;
  double symplectic = 1e-8;
  double jacobian_pattern = 1e-8;
  double symmetry = 1e-7;

  AdmissibilityTolerances scaled(double f) const;
};

/// Default sample set: base grid over the chart box × fiber ring (two radii).
std::vector<Vec> default_sample_grid(const SymplectomorphismChart& chart);

/// Run the five admissibility criteria over the samples.
/// Throws chart.degenerate_fiber if a sample's fiber is below the excision
/// radius.
AdmissibilityReport check_admissible(
    const SymplectomorphismChart& chart, const std::vector<Vec>& samples,
    const AdmissibilityTolerances& tol = AdmissibilityTolerances{});

/// Boundary reduction of a boundary-preserving chart.
struct BoundaryReduction {
  SymplectomorphismChart boundary_chart;      // dimension n−1 cotangent chart
  std::function<Vec(const Vec&)> base_map;    // b : y′ ↦ x′
  std::function<Mat(const Vec&)> fiber_lin;   // L(y′) with ξ′ = L(y′) η′
};

/// Restrict to y_n = 0 and verify the result is the cotangent lift of its
/// base part (η_n-independence, fiber linearity, L = (Db)^{−T}); throws
/// boundary.not_a_lift / boundary.not_preserved.
BoundaryReduction induce_boundary_map(const SymplectomorphismChart& chart);

/**
 * Deform the identity by the flow of a fiber-homogeneous degree-1 function
 * h(y,η) for the given time (classical 4th-order Runge–Kutta on Hamilton's
 * equations).  Preconditions checked at y_n = 0 samples: ∂_{y_n}h = 0 and
 * ∂_{η_n}h = 0 (the latter makes the flow boundary-preserving), plus the
 * scalar symmetry condition on h.  The returned chart is re-checked with
 * tolerances relaxed to 1e-6; failures throw flow.admissibility, and
 * trajectories leaving the box throw flow.leaves_chart.
 */
SymplectomorphismChart hamiltonian_flow_chart(
    const std::function<double(const Vec&, const Vec&)>& h, double time,
    int n, const ChartBox& box);

/// Worst symmetry-condition residual of a scalar fiber-homogeneous function
/// of degree m over derivative orders k+|α|+|β| ≤ 2 and a y′ sample set.
double symmetry_residual(
    const std::function<double(const Vec&, const Vec&)>& c, int n, double m,
    const std::vector<Vec>& yprime_samples);

}  // namespace bdmfio::geometry

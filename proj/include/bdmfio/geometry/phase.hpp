/**
 * @file phase.hpp
 * @brief Graph-type generating phases ψ for canonical charts.
 *
 * Left quantization: φ_L(x,y,η) = ψ_L(x,η) − y·η with ψ_L(x,η) = y·η at the
 * unique y solving base(χ(y,η)) = x; degree-1 homogeneity makes y·η the
 * generating value (Euler's identity).  Right quantization mirrors with
 * ψ_R(y,ξ) = x·ξ at the η solving fiber(χ(y,η)) = ξ.  Boundary structure:
 * ψ(x′,0,ξ′,ξ_n) is ξ_n-independent and equals the boundary part
 * ψ_∂(x′,ξ′), which is linear in ξ′.
 */
#pragma once

#include "bdmfio/geometry/chart.hpp"

namespace bdmfio::geometry {

enum class QuantSide { Left, Right };

class PhaseFunction {
public:
  int n = 2;
  QuantSide side = QuantSide::Left;
  /// ψ(x, θ): θ is η for left phases and ξ for right phases.
  std::function<double(const Vec&, const Vec&)> psi;
  double fd_scale = 1.0;
  double excision_radius = 1e-6;

  double eval(const Vec& x, const Vec& theta) const;
  Vec grad_x(const Vec& x, const Vec& theta) const;
  Vec grad_theta(const Vec& x, const Vec& theta) const;

  // -- built-in families ----------------------------------------------------
  static PhaseFunction linear(int n);  // ψ = x·θ
  /// ψ = x′·θ′ + f(x′) x_n θ_n (n = 2).
  static PhaseFunction normal_scaling(std::function<double(double)> f);
};

/**
 * Build the graph-type phase of a chart.  Preconditions: det ∂_η ξ*(y,η) ≠ 0
 * on the sample grid (throws phase.nondegenerate) and Newton inversion of
 * the critical-point equations converges (throws phase.newton_divergence).
 * The result reproduces the chart: for samples (y,η) with (x,ξ) = χ(y,η),
 * ∇_θψ recovers the dual base point and ∇_xψ the dual fiber to ≤ 1e-6.
 */
PhaseFunction build_phase(const SymplectomorphismChart& chart,
                          QuantSide side);

/**
 * Extract ψ_∂(x′,ξ′) = ψ(x′,0,ξ′,1).  Validates ∂_{ξ_n}ψ(x′,0,ξ′,ξ_n) ≤
 * 1e-9 over samples (throws phase.boundary_normal_fiber) and linearity of
 * ψ_∂ in ξ′.
 */
std::function<double(const Vec&, const Vec&)> phase_boundary_part(
    const PhaseFunction& phase);

}  // namespace bdmfio::geometry

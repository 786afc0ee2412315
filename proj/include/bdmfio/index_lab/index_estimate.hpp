/**
 * @file index_estimate.hpp
 * @brief SVD index estimation for unitary-section blocks on a two-chart
 *        interval model.
 *
 * build_U quantizes a unit-modulus section u of the cosphere over an
 * admissible chart into a 1×1 block r⁺Op(u(ξ/|ξ|))e⁺ at a frozen boundary
 * point, with the chart entering through the frozen phase scale
 * f = ∂_{x_n}ψ(x′,0,0,1) of its generating phase.
 *
 * index_estimate realizes the block globally on Y = X = [0,1] with one
 * boundary chart at each endpoint: scaled Laguerre frames φ_k(βx)·√β
 * (β = 4K so all K modes live inside the interval), smooth partition tapers
 * s_c, and the perturbation-of-identity assembly
 *   U = I + Σ_c s_c B_c (M − I_K) A_c s_c,   A_c = B_cᵀ·diag(ω).
 * Kernel and cokernel dimensions are singular-value counts below τ,
 * certified by a spectral gap and by agreement across a refined grid and a
 * tightened threshold.  The square discretization pairs kernel and cokernel
 * counts, so it can certify a vanishing index but never exhibits a nonzero
 * one; an asymmetric near-kernel surfaces as a gap/stability failure
 * (index.unstable_index), not as a wrong integer.
 */
#pragma once

#include <functional>

#include "bdmfio/bdm/calculus.hpp"
#include "bdmfio/geometry/chart.hpp"

namespace bdmfio::index_lab {

/// Section of the cosphere: s(ω′, ω_n) with ω′² + ω_n² = 1.
using Section = std::function<cplx(double, double)>;

/// Winding number of the (nonvanishing) section around the cosphere,
/// by principal-branch argument accumulation.  Throws
/// index.non_unitary_section when the section gets within 1e-9 of zero.
int winding_number(const Section& section, int samples = 512);

/**
 * 1×1 block (order 0, type 0) with amplitude u(ξ/|ξ|), excised near ξ = 0,
 * over the given chart.  Checks chart admissibility
 * (index.chart_not_admissible) and |u| = 1 on sampled directions to 1e-8
 * (index.non_unitary_section).
 */
bdm::BdMBlockSymbol build_U(const geometry::SymplectomorphismChart& chart,
                            const Section& section, double xp = 0.0,
                            double xip = 1.0, int modes = 32);

struct IndexReport {
  int estimated_index = 0;  ///< kernel_dim − cokernel_dim
  int kernel_dim = 0;
  int cokernel_dim = 0;
  double svd_gap = 0.0;  ///< smallest kept sv / max(largest dropped sv, εs)
  bool stable = false;   ///< counts agreed across refinement and τ/10
  double tau = 0.0;      ///< threshold actually used
  double smax = 0.0;     ///< largest singular value
};

/**
 * Estimate the index of the block on the two-chart interval model.
 * tau ≤ 0 selects the default 1e-6·smax; nodes is the Gauss–Legendre count
 * per grid panel (the refinement run doubles it).  Requires svd_gap ≥ 10
 * and count agreement across (nodes, 2·nodes) × (τ, τ/10); disagreement
 * throws index.unstable_index.
 */
IndexReport index_estimate(const bdm::BdMBlockSymbol& block, double tau = 0.0,
                           int nodes = 12);

/**
 * Difference of the index estimates of build_U(chart, s1) and
 * build_U(chart, s2).  Sections with different winding numbers are not
 * homotopic through unitary sections; that throws index.obstructed_homotopy
 * before any quantization.
 */
int section_independence_probe(const geometry::SymplectomorphismChart& chart,
                               const Section& s1, const Section& s2,
                               double xp = 0.0, double xip = 1.0,
                               int modes = 32);

}  // namespace bdmfio::index_lab

/**
 * @file calculus.hpp
 * @brief Calculus on 2×2 blocks: composition with leftover-Green bookkeeping,
 *        adjoints, principal boundary symbols, ellipticity, parametrices, and
 *        conjugation A·P·A*.
 *
 * Composition realizes the truncation identity
 *   r⁺B e⁺r⁺A e⁺ = r⁺BA e⁺ − r⁺B e⁻·(r⁻A₀e⁺) − Σ r⁺B δ₀-atoms(A_poly),
 * so the composed upper-left splits into the product interior plus an
 * explicit Green part whose jet columns come from the ξ_n-polynomial part of
 * A through
 *   ξ_n^j ê⁺u = (−i)^j ( ê⁺(u^{(j)}) + Σ_{l<j} u^{(l)}(0)·δ̂₀^{(j−l−1)} ).
 * The composed order is m_A+m_B and the declared type is max{m_A+d_B, d_A}
 * (clamped to ≥ 0).
 */
#pragma once

#include <functional>

#include "bdmfio/bdm/block_symbol.hpp"

namespace bdmfio::bdm {

/// B∘A.  Requires matching charts (throws bdm.chart_mismatch), equal frozen
/// points and mode counts (throws bdm.frozen_point_mismatch).
BdMBlockSymbol compose(const BdMBlockSymbol& B, const BdMBlockSymbol& A);

/// Formal adjoint with respect to L²(ℝ₊)⊕ℂ; defined for m ≤ 0, d = 0
/// (throws bdm.positive_order_adjoint otherwise).  Trace and potential swap;
/// the interior matrix is the exact conjugate transpose on the span, and the
/// interior symbol becomes (1/f)·conj(a)(ξ_n/f) over the inverse chart.
BdMBlockSymbol adjoint(const BdMBlockSymbol& A);

/// Frozen boundary principal symbol on span ⊕ ℂ: the x_n-linearized,
/// principal-frozen interior plus the (already homogeneous) g, k, t, s.
/// Throws bdm.missing_principal_part when the interior has no registered
/// principal part.
normal_ops::OperatorMatrix principal_boundary_symbol(const BdMBlockSymbol& A);

/// Family of blocks parametrized by the frozen boundary covariable and the
/// spectral resolution (so refinement checks can rebuild at 2N).
using BlockFamily = std::function<BdMBlockSymbol(double xip, int modes)>;

struct EllipticityReport {
  bool elliptic = false;
  bool interior_pass = false, boundary_pass = false, stable = false;
  double interior_min = 0.0;     // min |a_m| on the cosphere samples
  double boundary_min_sv = 0.0;  // min singular value across the grid
  double refinement_drift = 0.0;  // max relative change N → 2N
  std::vector<double> grid;       // ξ′ sample points
  std::vector<double> min_sv;     // per-point smallest singular value
};

/// Interior bound |a_m| ≥ c on cosphere samples, boundary bound
/// σ_min(σ_∂) ≥ c′ across the grid, and N→2N refinement stability (≤ 5%).
EllipticityReport ellipticity_check(const BlockFamily& family,
                                    const std::vector<double>& grid,
                                    double c_interior = 1e-3,
                                    double c_boundary = 1e-3, int modes = 16);

/// Inverse of the principal boundary symbol computed by the
/// A*(AA*)⁻¹ route; requires order 0, type 0.  Throws
/// bdm.singular_boundary_symbol when the symbol is numerically singular.
normal_ops::OperatorMatrix parametrix_symbol(const BdMBlockSymbol& A);

/// A·P·A* via compose and adjoint; A must have order ≤ 0 and type 0 and P
/// must live over the identity chart.  The result lives over the identity.
BdMBlockSymbol egorov_conjugate(const BdMBlockSymbol& A,
                                const BdMBlockSymbol& P);

struct ClassReport {
  bool pass = false;
  bool chart_identity = false;
  bool type_bound = false;
  bool finite = false;             // no NaN/Inf in any realized part
  bool interior_transmission = false;
  double transmission_worst = 0.0;
};

/// Standard-class (χ = id) membership checks for a block.
ClassReport standard_class_check(const BdMBlockSymbol& A);

}  // namespace bdmfio::bdm

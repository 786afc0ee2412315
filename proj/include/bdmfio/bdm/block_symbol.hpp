/**
 * @file block_symbol.hpp
 * @brief 2×2 operator blocks at a frozen boundary point:
 *          ( r⁺Op^θ(a)e⁺ + g   k )
 *          (        t          s )
 *        with g a finite-rank half-line operator carrying jet columns
 *        g = g₀ + Σ_j c_j·γ_j, t a functional t = t₀ + Σ_j w_j·γ_j,
 *        k a column ℂ → L²(ℝ₊), and order/type bookkeeping.
 *
 * The interior phase is stored as its scale factor f (θ = f·x_nξ_n), the
 * normal form every admissible chart freezes to at a boundary point; curved
 * phases enter only through the normal-direction module.  Jet parts are kept
 * factored (not folded into dense matrices) so the type arithmetic of
 * composition is visible structurally.
 */
#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "bdmfio/normal_ops/model_ops.hpp"
#include "bdmfio/symbols/scalar_symbol.hpp"

namespace bdmfio::bdm {

/// Interior part r⁺Op^θ(a)e⁺, θ = f·x_nξ_n.
struct InteriorPart {
  bool present = false;
  symbols::ScalarSymbol symbol;
  double phase_scale = 1.0;  // f
  /// ξ_n-polynomial part Σ poly[j]·ξ_n^j at x_n = 0; drives the jet
  /// bookkeeping of composition.  Extracted numerically when empty.
  std::vector<cplx> poly;
  /// Amplitude independent of ξ_n (a multiplication operator); realized by
  /// pointwise products instead of oscillatory quadrature.
  bool multiplication = false;
  /// Explicit matrix override (used by adjoints so the defining pairing
  /// identity holds exactly on the spectral span).
  std::optional<Eigen::MatrixXcd> matrix;
};

/// g = regular + Σ_j jet_cols[j]·γ_j(u); rank-truncated regular part.
struct GreenPart {
  Eigen::MatrixXcd regular;                // N×N (empty ⇒ zero)
  std::vector<Eigen::VectorXcd> jet_cols;  // index j < type
  int max_rank = 16;

  bool empty() const { return regular.size() == 0 && jet_cols.empty(); }
};

/// t(u) = regular·u + Σ_j jet_weights[j]·γ_j(u).
struct TracePart {
  Eigen::RowVectorXcd regular;    // 1×N (empty ⇒ zero)
  std::vector<cplx> jet_weights;  // index j < type

  bool empty() const { return regular.size() == 0 && jet_weights.empty(); }
};

/// Chart bookkeeping: operators map functions over `domain` to functions
/// over `codomain`; "id" is the standard half-space.
struct ChartRefs {
  std::string domain = "id";
  std::string codomain = "id";
};

struct BlockParts {
  InteriorPart interior;
  GreenPart green;
  Eigen::VectorXcd potential;  // size N or 0
  TracePart trace;
  cplx scalar = 0.0;
};

struct BdMBlockSymbol {
  InteriorPart interior;
  GreenPart green;
  Eigen::VectorXcd potential;
  TracePart trace;
  cplx scalar = 0.0;

  double order = 0.0;  // m
  int type = 0;        // d
  ChartRefs charts;
  double xp = 0.0, xip = 1.0;  // frozen boundary point
  int modes = 32;              // N

  /// r⁺Op^θ(a)e⁺ on the spectral span (zero when absent).
  Eigen::MatrixXcd interior_matrix() const;
  /// Dense realization of g (regular + jet columns).
  Eigen::MatrixXcd green_matrix() const;
  /// Full upper-left block as an operator matrix.
  normal_ops::OperatorMatrix upper_left() const;
  /// Dense realization of the trace row (regular + jet rows).
  Eigen::RowVectorXcd lower_left() const;
  /// Potential column (zeros when absent).
  Eigen::VectorXcd upper_right() const;
  /// (N+1)×(N+1) matrix of the block on span ⊕ ℂ.
  Eigen::MatrixXcd total_matrix() const;
};

/**
 * Validate parts and build the block.  Throws bdm.type_bound_violated when
 * d > max{⌈m⌉, 0} or a jet part exceeds the declared type, and
 * bdm.order_mismatch when the interior symbol declares an order above m.
 */
BdMBlockSymbol assemble_block(const BlockParts& parts, double order, int type,
                              const ChartRefs& charts = {}, double xp = 0.0,
                              double xip = 1.0, int modes = 32);

/// γ_j as a row on plus-side coefficients: γ_j(u) = √2·1ᵀDʲ·c.
Eigen::RowVectorXcd jet_row(int j, int N);

/// SVD truncation to the leading `rank` singular triplets.
Eigen::MatrixXcd rank_truncate(const Eigen::MatrixXcd& m, int rank);

/// Matrix of u ↦ u(f·x) on plus-side coefficients (f > 0).
Eigen::MatrixXcd scale_matrix(double f, int N);

/**
 * ξ_n-polynomial part of a at x_n = 0: least-squares fit of the Laurent
 * expansion Σ_{r≤p} c_r ξ_n^r + O(ξ_n^{−1}) over dyadic samples |ξ_n| ≥ 64,
 * p = ⌊order⌋₊.  Exact (to rounding) for rational and polynomial amplitudes.
 */
std::vector<cplx> normal_poly_part(const symbols::ScalarSymbol& a, double xp,
                                   double xip);

/// a − Σ poly[j]·ξ_n^j, declared order −1 (the generic Laurent remainder).
symbols::ScalarSymbol decaying_part(const symbols::ScalarSymbol& a,
                                    const std::vector<cplx>& poly);

}  // namespace bdmfio::bdm

/**
 * @file transmission.hpp
 * @brief Boundary compatibility of scalar amplitudes: the symmetry condition
 *        on principal parts and the normal-Taylor splitting a = a_d + a_0.
 *
 * Symmetry condition (homogeneous degree-m principal part a_m):
 *   ∂^k_{x_n}∂^α_{ξ′}∂^β_{x′} a_m(x′,0,0,+1)
 *     = (−1)^{m−|α|} ∂^k_{x_n}∂^α_{ξ′}∂^β_{x′} a_m(x′,0,0,−1).
 * Amplitudes without a registered principal part are tested through the
 * transform side instead: ξ_n ↦ a(x′,0,ξ′,⟨ξ′⟩ξ_n) must decompose into
 * polynomial ⊕ upper ⊕ lower parts with no overflow.
 *
 * Taylor splitting: a_d = Σ_{j≤N} (x_n^j/j!)·p_j(x′,ξ)·φ(t_j x_n), where
 * p_j is the polynomial part of ∂^j_{x_n}a at x_n = 0, φ is the standard
 * bump (1 on [0,1/2], 0 outside [0,1]) and t_j = 2^j; a_0 = a − a_d.
 */
#pragma once

#include <string>

#include "bdmfio/symbols/project_h.hpp"
#include "bdmfio/symbols/scalar_symbol.hpp"

namespace bdmfio::symbols {

struct TransmissionReport {
  bool pass = false;
  double worst = 0.0;
  std::string route;  // "symmetry" or "transform"
};

struct TransmissionCaps {
  int max_k = 2;      // x_n derivatives
  int max_alpha = 2;  // ξ′ derivatives
  int max_beta = 2;   // x′ derivatives
  int max_total = 2;
};

/// Boundary sample entry (x_n = 0 is implied).
struct BoundaryPoint {
  double xp = 0.0, xip = 1.0;
};

std::vector<BoundaryPoint> default_boundary_grid();

/// Throws transmission.missing_principal when no route applies.
TransmissionReport check_transmission(
    const ScalarSymbol& a, const std::vector<BoundaryPoint>& grid,
    const TransmissionCaps& caps = TransmissionCaps{});

struct TaylorSplit {
  ScalarSymbol a_d;  // polynomial in ξ_n
  ScalarSymbol a_0;  // remainder with boundary value free of polynomial part
};

/// Split a into normal-Taylor polynomial part and remainder (N+1 terms);
/// throws taylor.series_divergence if the schedule fails to tame growth.
TaylorSplit taylor_split(const ScalarSymbol& a, int N);

}  // namespace bdmfio::symbols

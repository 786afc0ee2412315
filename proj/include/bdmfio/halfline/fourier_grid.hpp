/**
 * @file fourier_grid.hpp
 * @brief Symmetric 2^12-point full-line grid with a matched discrete
 *        Fourier pair (|ξ| ≤ 256 by default).
 *
 * The space grid x_k = (k − n/2)Δx and frequency grid ξ_j = (j − n/2)Δξ are
 * coupled by Δx·Δξ = 2π/n, so forward and inverse transforms are exact
 * inverses of each other (unitary up to the 2π convention) and Plancherel
 * holds to rounding.  Convention: û(ξ) = ∫ u(x) e^{−iξx} dx,
 * u(x) = ∫ û(ξ) e^{iξx} dξ/2π.
 */
#pragma once

#include <vector>

#include "bdmfio/common.hpp"

namespace bdmfio::halfline {

class FourierGrid {
public:
  /// Cached default grid: 4096 points, |ξ| ≤ 256.
  static const FourierGrid& standard();

  FourierGrid(int n, double xi_max);

  int size() const { return n_; }
  double dx() const { return dx_; }
  double dxi() const { return dxi_; }
  double x(int k) const { return (k - n_ / 2) * dx_; }
  double xi(int j) const { return (j - n_ / 2) * dxi_; }

  /// samples u(x_k) → samples û(ξ_j)
  std::vector<cplx> forward(const std::vector<cplx>& u) const;
  /// samples û(ξ_j) → samples u(x_k)
  std::vector<cplx> inverse(const std::vector<cplx>& uhat) const;

private:
  int n_;
  double dx_, dxi_;
};

/// In-place radix-2 FFT, sign = −1 forward / +1 inverse (no 1/n factor).
void fft_pow2(std::vector<cplx>& a, int sign);

}  // namespace bdmfio::halfline

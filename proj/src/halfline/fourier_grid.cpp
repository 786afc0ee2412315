#include "bdmfio/halfline/fourier_grid.hpp"

#include <cmath>
#include <stdexcept>

namespace bdmfio::halfline {

void fft_pow2(std::vector<cplx>& a, int sign) {
  const std::size_t n = a.size();
  if (n & (n - 1))
    throw std::invalid_argument("fft_pow2: size must be a power of two");
  // bit reversal
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * kTwoPi / static_cast<double>(len);
    const cplx wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cplx w = 1.0;
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cplx u = a[i + k];
        const cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

const FourierGrid& FourierGrid::standard() {
  static const FourierGrid g(4096, 256.0);
  return g;
}

FourierGrid::FourierGrid(int n, double xi_max) : n_(n) {
  dxi_ = 2.0 * xi_max / n;
  dx_ = kTwoPi / (n * dxi_);
  // centered-index phase bookkeeping below assumes n/2 even
  if ((n / 2) % 2 != 0)
    throw std::invalid_argument("FourierGrid: n/2 must be even");
}

std::vector<cplx> FourierGrid::forward(const std::vector<cplx>& u) const {
  // û_j = Δx Σ_k u_k e^{−iξ_j x_k}; with centered indices this is a plain
  // FFT conjugated by (−1)^k / (−1)^j (and e^{−iπn/2} = 1 since n/2 even).
  std::vector<cplx> v(u);
  for (int k = 1; k < n_; k += 2) v[k] = -v[k];
  fft_pow2(v, -1);
  for (int j = 0; j < n_; ++j) {
    v[j] *= dx_;
    if (j & 1) v[j] = -v[j];
  }
  return v;
}

std::vector<cplx> FourierGrid::inverse(const std::vector<cplx>& uhat) const {
  std::vector<cplx> v(uhat);
  for (int j = 1; j < n_; j += 2) v[j] = -v[j];
  fft_pow2(v, +1);
  const double scale = dxi_ / kTwoPi;
  for (int k = 0; k < n_; ++k) {
    v[k] *= scale;
    if (k & 1) v[k] = -v[k];
  }
  return v;
}

}  // namespace bdmfio::halfline

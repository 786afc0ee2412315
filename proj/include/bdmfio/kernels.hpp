/**
 * @file kernels.hpp
 * @brief Data-parallel inner loops for oscillatory-quadrature assembly.
 *
 * Every expensive path in the library reduces to passes over contiguous
 * complex arrays:
 *   - dotu:            Σ a[q]·b[q]                (quadrature × column)
 *   - dot_and_advance: out = Σ a[q]·v[q]; v[q] *= r[q]
 *                      (fused column dot + geometric advance of the
 *                      rational basis-transform recurrence)
 *   - axpy, scale, norms on complex / real arrays
 *
 * Scalar reference implementations are always available.  On x86-64 an AVX2
 * (FMA) backend is selected at runtime when the CPU supports it; on aarch64
 * a NEON backend is compiled in.  The environment variable BDMFIO_KERNEL
 * ("scalar", "avx2", "neon") forces a backend; equivalence of backends is
 * covered by randomized tests.
 */
#pragma once

#include <cstddef>

#include "bdmfio/common.hpp"

namespace bdmfio::kernels {

struct Backend {
  const char* name;
  cplx (*dotu)(const cplx* a, const cplx* b, std::size_t n);
  cplx (*dot_and_advance)(const cplx* a, cplx* v, const cplx* r,
                          std::size_t n);
  void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
  double (*norm2sq)(const cplx* a, std::size_t n);
};

/// Scalar reference backend (always available).
const Backend& scalar_backend();

/// Active backend after runtime dispatch (honors BDMFIO_KERNEL).
const Backend& active_backend();

// Convenience wrappers through the active backend.
inline cplx dotu(const cplx* a, const cplx* b, std::size_t n) {
  return active_backend().dotu(a, b, n);
}
inline cplx dot_and_advance(const cplx* a, cplx* v, const cplx* r,
                            std::size_t n) {
  return active_backend().dot_and_advance(a, v, r, n);
}
inline void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  active_backend().axpy(alpha, x, y, n);
}
inline double norm2sq(const cplx* a, std::size_t n) {
  return active_backend().norm2sq(a, n);
}

// Internal: per-arch backends (null when not compiled / not supported).
const Backend* avx2_backend();
const Backend* neon_backend();

}  // namespace bdmfio::kernels

// NEON backend (aarch64).  A 128-bit lane holds one complex double; the
// complex product uses fused multiply-accumulate on the swapped lane.

#include "bdmfio/kernels.hpp"

#if defined(__aarch64__)
#include <arm_neon.h>

namespace bdmfio::kernels {
namespace {

// one complex product: (ar*br - ai*bi, ar*bi + ai*br)
inline float64x2_t cmul(float64x2_t a, float64x2_t b) {
  float64x2_t b_re = vdupq_laneq_f64(b, 0);
  float64x2_t b_im = vdupq_laneq_f64(b, 1);
  float64x2_t a_sw = vextq_f64(a, a, 1);          // (ai, ar)
  float64x2_t t = vmulq_f64(a_sw, b_im);          // (ai*bi, ar*bi)
  t = vsetq_lane_f64(-vgetq_lane_f64(t, 0), t, 0);  // (−ai*bi, ar*bi)
  return vfmaq_f64(t, a, b_re);
}

cplx dotu_neon(const cplx* a, const cplx* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  for (std::size_t q = 0; q < n; ++q)
    acc = vaddq_f64(acc, cmul(vld1q_f64(pa + 2 * q), vld1q_f64(pb + 2 * q)));
  return {vgetq_lane_f64(acc, 0), vgetq_lane_f64(acc, 1)};
}

cplx dot_and_advance_neon(const cplx* a, cplx* v, const cplx* r,
                          std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  const double* pa = reinterpret_cast<const double*>(a);
  double* pv = reinterpret_cast<double*>(v);
  const double* pr = reinterpret_cast<const double*>(r);
  for (std::size_t q = 0; q < n; ++q) {
    float64x2_t vv = vld1q_f64(pv + 2 * q);
    acc = vaddq_f64(acc, cmul(vld1q_f64(pa + 2 * q), vv));
    vst1q_f64(pv + 2 * q, cmul(vv, vld1q_f64(pr + 2 * q)));
  }
  return {vgetq_lane_f64(acc, 0), vgetq_lane_f64(acc, 1)};
}

void axpy_neon(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t q = 0; q < n; ++q) y[q] += alpha * x[q];
}

double norm2sq_neon(const cplx* a, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  const double* pa = reinterpret_cast<const double*>(a);
  for (std::size_t q = 0; q < n; ++q) {
    float64x2_t v = vld1q_f64(pa + 2 * q);
    acc = vfmaq_f64(acc, v, v);
  }
  return vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
}

const Backend kNeon{"neon", dotu_neon, dot_and_advance_neon, axpy_neon,
                    norm2sq_neon};

}  // namespace

const Backend* neon_backend() { return &kNeon; }

}  // namespace bdmfio::kernels

#else

namespace bdmfio::kernels {
const Backend* neon_backend() { return nullptr; }
}  // namespace bdmfio::kernels

#endif

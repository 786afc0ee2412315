// AVX2/FMA backend.  Complex arrays are interleaved (re,im) doubles; a
// 256-bit lane holds two complex values.  Complex products are formed with
// the usual shuffle + fmaddsub pattern.

#include "bdmfio/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>

namespace bdmfio::kernels {
namespace {

// (re0,im0,re1,im1) lanes of a*b for interleaved complex doubles.
inline __m256d cmul(__m256d a, __m256d b) {
  __m256d b_re = _mm256_movedup_pd(b);                  // (br0,br0,br1,br1)
  __m256d b_im = _mm256_permute_pd(b, 0xF);             // (bi0,bi0,bi1,bi1)
  __m256d a_sw = _mm256_permute_pd(a, 0x5);             // (ai0,ar0,ai1,ar1)
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

inline cplx reduce_c(__m256d acc) {
  alignas(32) double buf[4];
  _mm256_store_pd(buf, acc);
  return {buf[0] + buf[2], buf[1] + buf[3]};
}

cplx dotu_avx2(const cplx* a, const cplx* b, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  __m256d acc0 = _mm256_setzero_pd(), acc1 = _mm256_setzero_pd();
  std::size_t q = 0;
  for (; q + 4 <= n; q += 4) {
    acc0 = _mm256_add_pd(acc0, cmul(_mm256_loadu_pd(pa + 2 * q),
                                    _mm256_loadu_pd(pb + 2 * q)));
    acc1 = _mm256_add_pd(acc1, cmul(_mm256_loadu_pd(pa + 2 * q + 4),
                                    _mm256_loadu_pd(pb + 2 * q + 4)));
  }
  cplx out = reduce_c(_mm256_add_pd(acc0, acc1));
  for (; q < n; ++q) out += a[q] * b[q];
  return out;
}

cplx dot_and_advance_avx2(const cplx* a, cplx* v, const cplx* r,
                          std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  double* pv = reinterpret_cast<double*>(v);
  const double* pr = reinterpret_cast<const double*>(r);
  __m256d acc = _mm256_setzero_pd();
  std::size_t q = 0;
  for (; q + 2 <= n; q += 2) {
    __m256d vv = _mm256_loadu_pd(pv + 2 * q);
    acc = _mm256_add_pd(acc, cmul(_mm256_loadu_pd(pa + 2 * q), vv));
    _mm256_storeu_pd(pv + 2 * q, cmul(vv, _mm256_loadu_pd(pr + 2 * q)));
  }
  cplx out = reduce_c(acc);
  for (; q < n; ++q) {
    out += a[q] * v[q];
    v[q] *= r[q];
  }
  return out;
}

void axpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double* px = reinterpret_cast<const double*>(x);
  double* py = reinterpret_cast<double*>(y);
  alignas(32) double ab[4] = {alpha.real(), alpha.imag(), alpha.real(),
                              alpha.imag()};
  __m256d va = _mm256_load_pd(ab);
  std::size_t q = 0;
  for (; q + 2 <= n; q += 2) {
    __m256d vy = _mm256_loadu_pd(py + 2 * q);
    vy = _mm256_add_pd(vy, cmul(_mm256_loadu_pd(px + 2 * q), va));
    _mm256_storeu_pd(py + 2 * q, vy);
  }
  for (; q < n; ++q) y[q] += alpha * x[q];
}

double norm2sq_avx2(const cplx* a, std::size_t n) {
  const double* pa = reinterpret_cast<const double*>(a);
  __m256d acc = _mm256_setzero_pd();
  std::size_t q = 0;
  for (; q + 2 <= n; q += 2) {
    __m256d v = _mm256_loadu_pd(pa + 2 * q);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  alignas(32) double buf[4];
  _mm256_store_pd(buf, acc);
  double s = buf[0] + buf[1] + buf[2] + buf[3];
  for (; q < n; ++q)
    s += a[q].real() * a[q].real() + a[q].imag() * a[q].imag();
  return s;
}

const Backend kAvx2{"avx2", dotu_avx2, dot_and_advance_avx2, axpy_avx2,
                    norm2sq_avx2};

}  // namespace

const Backend* avx2_backend() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")
             ? &kAvx2
             : nullptr;
}

}  // namespace bdmfio::kernels

#else

namespace bdmfio::kernels {
const Backend* avx2_backend() { return nullptr; }
}  // namespace bdmfio::kernels

#endif

#include "bdmfio/kernels.hpp"

namespace bdmfio::kernels {
namespace {

cplx dotu_scalar(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t q = 0; q < n; ++q) {
    const double ar = a[q].real(), ai = a[q].imag();
    const double br = b[q].real(), bi = b[q].imag();
    re += ar * br - ai * bi;
    im += ar * bi + ai * br;
  }
  return {re, im};
}

cplx dot_and_advance_scalar(const cplx* a, cplx* v, const cplx* r,
                            std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t q = 0; q < n; ++q) {
    const double ar = a[q].real(), ai = a[q].imag();
    const double vr = v[q].real(), vi = v[q].imag();
    re += ar * vr - ai * vi;
    im += ar * vi + ai * vr;
    const double rr = r[q].real(), ri = r[q].imag();
    v[q] = {vr * rr - vi * ri, vr * ri + vi * rr};
  }
  return {re, im};
}

void axpy_scalar(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const double ar = alpha.real(), ai = alpha.imag();
  for (std::size_t q = 0; q < n; ++q) {
    const double xr = x[q].real(), xi = x[q].imag();
    y[q] += cplx{ar * xr - ai * xi, ar * xi + ai * xr};
  }
}

double norm2sq_scalar(const cplx* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t q = 0; q < n; ++q)
    s += a[q].real() * a[q].real() + a[q].imag() * a[q].imag();
  return s;
}

const Backend kScalar{"scalar", dotu_scalar, dot_and_advance_scalar,
                      axpy_scalar, norm2sq_scalar};

}  // namespace

const Backend& scalar_backend() { return kScalar; }

}  // namespace bdmfio::kernels

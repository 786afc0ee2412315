// Backend equivalence and reference-value tests for the SIMD kernels.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "bdmfio/kernels.hpp"

using namespace bdmfio;
using kernels::Backend;

namespace {

std::vector<cplx> random_vec(std::size_t n, std::mt19937& rng) {
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& z : v) z = {d(rng), d(rng)};
  return v;
}

void check_backend_equivalence(const Backend& b) {
  std::mt19937 rng(12345);
  const Backend& ref = kernels::scalar_backend();
  for (std::size_t n : {std::size_t{1}, std::size_t{7}, std::size_t{64},
                        std::size_t{1001}}) {
    auto a = random_vec(n, rng);
    auto x = random_vec(n, rng);
    auto r = random_vec(n, rng);

    const cplx d0 = ref.dotu(a.data(), x.data(), n);
    const cplx d1 = b.dotu(a.data(), x.data(), n);
    CHECK(std::abs(d0 - d1) <= 1e-12 * (1.0 + std::abs(d0)));

    auto v0 = x, v1 = x;
    const cplx f0 = ref.dot_and_advance(a.data(), v0.data(), r.data(), n);
    const cplx f1 = b.dot_and_advance(a.data(), v1.data(), r.data(), n);
    CHECK(std::abs(f0 - f1) <= 1e-12 * (1.0 + std::abs(f0)));
    for (std::size_t q = 0; q < n; ++q)
      CHECK(std::abs(v0[q] - v1[q]) <= 1e-13);

    auto y0 = random_vec(n, rng);
    auto y1 = y0;
    const cplx alpha{0.3, -0.7};
    ref.axpy(alpha, a.data(), y0.data(), n);
    b.axpy(alpha, a.data(), y1.data(), n);
    for (std::size_t q = 0; q < n; ++q)
      CHECK(std::abs(y0[q] - y1[q]) <= 1e-13);

    CHECK(ref.norm2sq(a.data(), n) ==
          doctest::Approx(b.norm2sq(a.data(), n)).epsilon(1e-12));
  }
}

}  // namespace

TEST_CASE("scalar reference values") {
  const Backend& ref = kernels::scalar_backend();
  std::vector<cplx> a{{1, 2}, {3, -1}};
  std::vector<cplx> b{{0, 1}, {2, 2}};
  // (1+2i)(i) + (3−i)(2+2i) = (−2+i) + (8+4i) = 6+5i
  const cplx d = ref.dotu(a.data(), b.data(), 2);
  CHECK(d.real() == doctest::Approx(6.0));
  CHECK(d.imag() == doctest::Approx(5.0));
  CHECK(ref.norm2sq(a.data(), 2) == doctest::Approx(15.0));
}

TEST_CASE("dot_and_advance implements fused dot + geometric advance") {
  const Backend& ref = kernels::scalar_backend();
  std::vector<cplx> a{{1, 0}, {1, 0}, {1, 0}};
  std::vector<cplx> v{{2, 0}, {3, 0}, {4, 0}};
  std::vector<cplx> r{{0, 1}, {2, 0}, {0.5, 0}};
  const cplx d = ref.dot_and_advance(a.data(), v.data(), r.data(), 3);
  CHECK(d.real() == doctest::Approx(9.0));
  CHECK(std::abs(v[0] - cplx{0, 2}) < 1e-15);
  CHECK(std::abs(v[1] - cplx{6, 0}) < 1e-15);
  CHECK(std::abs(v[2] - cplx{2, 0}) < 1e-15);
}

TEST_CASE("runtime-dispatched backend matches scalar reference") {
  check_backend_equivalence(kernels::active_backend());
}

TEST_CASE("AVX2 backend (when available) matches scalar reference") {
  if (const Backend* b = kernels::avx2_backend()) {
    INFO("testing avx2");
    check_backend_equivalence(*b);
  }
}

TEST_CASE("NEON backend (when available) matches scalar reference") {
  if (const Backend* b = kernels::neon_backend()) {
    INFO("testing neon");
    check_backend_equivalence(*b);
  }
}

#include <cstdlib>
#include <cstring>

#include "bdmfio/kernels.hpp"

namespace bdmfio::kernels {
namespace {

const Backend& select() {
  const char* forced = std::getenv("BDMFIO_KERNEL");
  if (forced) {
    if (std::strcmp(forced, "scalar") == 0) return scalar_backend();
    if (std::strcmp(forced, "avx2") == 0 && avx2_backend())
      return *avx2_backend();
    if (std::strcmp(forced, "neon") == 0 && neon_backend())
      return *neon_backend();
    return scalar_backend();  // unknown/unsupported request: safe fallback
  }
  if (const Backend* b = avx2_backend()) return *b;
  if (const Backend* b = neon_backend()) return *b;
  return scalar_backend();
}

}  // namespace

const Backend& active_backend() {
  static const Backend& b = select();
  return b;
}

}  // namespace bdmfio::kernels

// SPDX-License-Identifier: Apache-2.0
#include <atomic>
#include <cstdlib>
#include <string>

#include "recomp/common/error.hpp"
#include "recomp/simd/kernels.hpp"

namespace recomp::simd {
namespace {

bool cpu_has_avx2() noexcept {
#if RECOMP_HAVE_AVX2 && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend detect() noexcept {
  if (const char* forced = std::getenv("RECOMP_SIMD")) {
    if (std::string(forced) == "scalar") return Backend::scalar;
  }
  return cpu_has_avx2() ? Backend::avx2 : Backend::scalar;
}

std::atomic<Backend>& active() {
  static std::atomic<Backend> b{detect()};
  return b;
}

}  // namespace

std::string_view backend_name(Backend b) noexcept {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

bool backend_available(Backend b) noexcept {
  return b == Backend::scalar || cpu_has_avx2();
}

const KernelTable& kernels_for(Backend b) {
#if RECOMP_HAVE_AVX2
  if (b == Backend::avx2) return detail::kAvx2Kernels;
#else
  (void)b;
#endif
  return detail::kScalarKernels;
}

Backend active_backend() noexcept { return active().load(std::memory_order_relaxed); }

void set_backend(Backend b) {
  if (!backend_available(b)) {
    throw Error("SIMD backend " + std::string(backend_name(b)) + " unavailable on this CPU");
  }
  active().store(b);
}

}  // namespace recomp::simd

// SPDX-License-Identifier: Apache-2.0
#pragma once

// Dense double-precision kernels used by the dual encoder: pooling, inner
// products, sparse gradient accumulation and the Adam update.
//
// Every kernel has a portable scalar reference. An AVX2 variant is compiled
// on x86-64 and chosen at runtime when the CPU supports AVX2+FMA. Setting
// RECOMP_SIMD=scalar in the environment pins the reference path.
//
// Reductions (dot) reassociate in the vector path, so results agree with the
// reference to rounding, not bitwise. Elementwise kernels (axpy, scale,
// adam_step) avoid fused multiply-add and agree bitwise.

#include <cstddef>
#include <span>
#include <string_view>

namespace recomp::simd {

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend b) noexcept;

struct AdamStep {
  double lr = 1e-3;  // already bias-corrected for the current step
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

struct KernelTable {
  double (*dot)(const double* a, const double* b, std::size_t n);
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  void (*scale)(double alpha, double* x, std::size_t n);
  void (*adam_step)(double* w, const double* g, double* m, double* v, std::size_t n,
                    const AdamStep& p);
};

bool backend_available(Backend b) noexcept;
const KernelTable& kernels_for(Backend b);

Backend active_backend() noexcept;
/// Test hook; throws if the backend is not available on this host.
void set_backend(Backend b);

inline double dot(std::span<const double> a, std::span<const double> b) {
  return kernels_for(active_backend()).dot(a.data(), b.data(), a.size());
}
/// y += alpha * x
inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  kernels_for(active_backend()).axpy(alpha, x.data(), y.data(), x.size());
}
inline void scale(double alpha, std::span<double> x) {
  kernels_for(active_backend()).scale(alpha, x.data(), x.size());
}
inline void adam_step(std::span<double> w, std::span<const double> g, std::span<double> m,
                      std::span<double> v, const AdamStep& p) {
  kernels_for(active_backend()).adam_step(w.data(), g.data(), m.data(), v.data(), w.size(), p);
}

namespace detail {
extern const KernelTable kScalarKernels;
#if RECOMP_HAVE_AVX2
extern const KernelTable kAvx2Kernels;
#endif
}  // namespace detail

}  // namespace recomp::simd

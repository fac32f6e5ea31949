// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include "recomp/simd/kernels.hpp"

namespace recomp::simd::detail {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_scalar(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale_scalar(double alpha, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void adam_scalar(double* w, const double* g, double* m, double* v, std::size_t n,
                 const AdamStep& p) {
  const double c1 = 1.0 - p.beta1;
  const double c2 = 1.0 - p.beta2;
  for (std::size_t i = 0; i < n; ++i) {
    m[i] = p.beta1 * m[i] + c1 * g[i];
    v[i] = p.beta2 * v[i] + c2 * (g[i] * g[i]);
    w[i] -= p.lr * m[i] / (std::sqrt(v[i]) + p.eps);
  }
}

}  // namespace

const KernelTable kScalarKernels{dot_scalar, axpy_scalar, scale_scalar, adam_scalar};

}  // namespace recomp::simd::detail

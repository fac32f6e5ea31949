// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <cstring>

#include "recomp/common/rng.hpp"
#include "recomp/simd/kernels.hpp"

using namespace recomp;
using namespace recomp::simd;

namespace {

std::vector<double> random_vec(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.normal();
  return v;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

}  // namespace

TEST_CASE("scalar kernels match their definitions") {
  const auto& k = kernels_for(Backend::scalar);
  const std::vector<double> a{1, 2, 3}, b{4, -5, 6};
  CHECK(k.dot(a.data(), b.data(), 3) == 12.0);
  std::vector<double> y{1, 1, 1};
  k.axpy(2.0, a.data(), y.data(), 3);
  CHECK(y == std::vector<double>{3, 5, 7});
  k.scale(0.5, y.data(), 3);
  CHECK(y == std::vector<double>{1.5, 2.5, 3.5});

  std::vector<double> w{1.0}, g{0.5}, m{0.0}, v{0.0};
  AdamStep p;
  p.lr = 0.1;
  k.adam_step(w.data(), g.data(), m.data(), v.data(), 1, p);
  const double m1 = 0.1 * 0.5, v1 = 0.001 * 0.25;
  CHECK(m[0] == doctest::Approx(m1).epsilon(1e-15));
  CHECK(v[0] == doctest::Approx(v1).epsilon(1e-15));
  CHECK(w[0] == doctest::Approx(1.0 - 0.1 * m1 / (std::sqrt(v1) + 1e-8)).epsilon(1e-15));
}

TEST_CASE("AVX2 kernels agree with the scalar reference") {
  if (!backend_available(Backend::avx2)) {
    MESSAGE("AVX2 unavailable on this host; equivalence not exercised");
    return;
  }
  const auto& s = kernels_for(Backend::scalar);
  const auto& v = kernels_for(Backend::avx2);
  Rng rng(42);
  for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 63u, 64u, 65u, 257u}) {
    const auto a = random_vec(rng, n), b = random_vec(rng, n);

    const double ds = s.dot(a.data(), b.data(), n);
    const double dv = v.dot(a.data(), b.data(), n);
    double mag = 0.0;
    for (std::size_t i = 0; i < n; ++i) mag += std::abs(a[i] * b[i]);
    CHECK(std::abs(ds - dv) <= 1e-14 * (mag + 1.0));

    auto ys = b, yv = b;
    s.axpy(0.37, a.data(), ys.data(), n);
    v.axpy(0.37, a.data(), yv.data(), n);
    CHECK(bitwise_equal(ys, yv));

    auto xs = a, xv = a;
    s.scale(-1.25, xs.data(), n);
    v.scale(-1.25, xv.data(), n);
    CHECK(bitwise_equal(xs, xv));

    auto ws = a, wv = a, ms = b, mv = b;
    std::vector<double> vs(n), vv(n);
    for (std::size_t i = 0; i < n; ++i) vs[i] = vv[i] = std::abs(b[i]) * 0.01;
    const auto g = random_vec(rng, n);
    AdamStep p;
    p.lr = 0.003;
    for (int step = 0; step < 3; ++step) {
      s.adam_step(ws.data(), g.data(), ms.data(), vs.data(), n, p);
      v.adam_step(wv.data(), g.data(), mv.data(), vv.data(), n, p);
    }
    CHECK(bitwise_equal(ws, wv));
    CHECK(bitwise_equal(ms, mv));
    CHECK(bitwise_equal(vs, vv));
  }
}

TEST_CASE("backend selection can be pinned") {
  const Backend original = active_backend();
  set_backend(Backend::scalar);
  CHECK(active_backend() == Backend::scalar);
  const std::vector<double> a{1, 2}, b{3, 4};
  CHECK(dot(a, b) == 11.0);
  if (backend_available(Backend::avx2)) {
    set_backend(Backend::avx2);
    CHECK(active_backend() == Backend::avx2);
    CHECK(dot(a, b) == 11.0);
  } else {
    CHECK_THROWS(set_backend(Backend::avx2));
  }
  set_backend(original);
  CHECK(backend_name(Backend::scalar) == "scalar");
  CHECK(backend_name(Backend::avx2) == "avx2");
}

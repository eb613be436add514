#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "skl/grid.hpp"
#include "skl/norms.hpp"
#include "skl/parallel.hpp"
#include "skl/simd.hpp"
#include "support.hpp"

using namespace skl;

namespace {

std::vector<double> random_vec(testing::Gen& g, std::size_t n) {
  std::vector<double> v(n);
  for (double& x : v) x = g.uniform(-1.0, 1.0);
  return v;
}

long double exact_dot(const std::vector<double>& a, const std::vector<double>& b) {
  long double s = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long double>(a[i]) * b[i];
  return s;
}

}  // namespace

TEST_CASE("scalar backend is always available") {
  const auto all = simd::available_backends();
  REQUIRE_FALSE(all.empty());
  CHECK(all.front() == simd::Backend::Scalar);
  CHECK(simd::supported(simd::Backend::Scalar));
  MESSAGE("active backend: " << simd::to_string(simd::active().backend));
}

TEST_CASE("every backend matches the scalar reference") {
  testing::Gen gen(31);
  const simd::Ops& ref = simd::ops_for(simd::Backend::Scalar);
  for (simd::Backend b : simd::available_backends()) {
    const simd::Ops& ops = simd::ops_for(b);
    CAPTURE(simd::to_string(b));
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 63u, 64u, 65u, 127u, 128u, 129u, 1000u, 4099u}) {
      CAPTURE(n);
      const auto a = random_vec(gen, n), x = random_vec(gen, n);
      const double tol = 1e-13 * std::max<double>(1.0, static_cast<double>(n));
      CHECK(std::abs(ops.dot(a.data(), x.data(), n) - static_cast<double>(exact_dot(a, x))) <= tol);
      CHECK(std::abs(ops.dot(a.data(), x.data(), n) - ref.dot(a.data(), x.data(), n)) <= tol);
      CHECK(std::abs(ops.sum(a.data(), n) - ref.sum(a.data(), n)) <= tol);
      CHECK(std::abs(ops.weighted_sum(a.data(), x.data(), n) - ref.weighted_sum(a.data(), x.data(), n)) <= tol);

      std::vector<double> y1 = x, y2 = x;
      ops.axpy(0.75, a.data(), y1.data(), n);
      ref.axpy(0.75, a.data(), y2.data(), n);
      std::vector<double> s1 = x, s2 = x;
      ops.add_squares(a.data(), s1.data(), n);
      ref.add_squares(a.data(), s2.data(), n);
      for (std::size_t i = 0; i < n; ++i) {
        CHECK(std::abs(y1[i] - y2[i]) <= 1e-15);
        CHECK(std::abs(s1[i] - s2[i]) <= 1e-15);
      }
    }
  }
}

TEST_CASE("reductions are repeatable") {
  testing::Gen gen(32);
  const auto a = random_vec(gen, 10007), x = random_vec(gen, 10007);
  for (simd::Backend b : simd::available_backends()) {
    const simd::Ops& ops = simd::ops_for(b);
    const double first = ops.weighted_sum(a.data(), x.data(), a.size());
    for (int k = 0; k < 5; ++k) CHECK(ops.weighted_sum(a.data(), x.data(), a.size()) == first);
  }
}

TEST_CASE("grid norms agree across backends") {
  const GridFunction f = smooth_bump(2, 41, 1.2);
  std::vector<double> values;
  for (simd::Backend b : simd::available_backends()) {
    simd::use_backend(b);
    values.push_back(grid_norm(f, 2.5, 2, WeightedMeasure::power(Rational(1))).value);
  }
  simd::use_backend(simd::available_backends().back());
  for (double v : values) CHECK(testing::rel_diff(v, values.front()) < 1e-13);
}

TEST_CASE("parallel_for visits each index once and forwards exceptions") {
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) CHECK(h.load() == 1);
  CHECK_THROWS_AS(parallel_for(100, [](std::size_t i) {
                    if (i == 57) throw std::runtime_error("boom");
                  }),
                  std::runtime_error);
  CHECK(thread_count() >= 1);
}

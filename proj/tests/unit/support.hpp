#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "skl/clifford.hpp"

namespace testing {

// Seeded generator shared by the property suites.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  std::vector<double> point(int n, double lo = -2.0, double hi = 2.0) {
    std::vector<double> x(n);
    for (double& v : x) v = uniform(lo, hi);
    return x;
  }

  skl::Multivector multivector(int n) {
    std::vector<double> c(std::size_t{1} << n);
    for (double& v : c) v = uniform(-1.0, 1.0);
    return skl::Multivector(n, c);
  }
};

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

inline double max_abs_diff(const skl::Multivector& a, const skl::Multivector& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace testing

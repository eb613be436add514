#include <doctest.h>

#include <algorithm>
#include <numbers>
#include <vector>

#include "skl/clifford.hpp"
#include "skl/errors.hpp"
#include "support.hpp"

using namespace skl;

namespace {

// Oracle: multiply two blades by writing out generator words, bubble-sorting
// (one sign flip per swap) and contracting e_j e_j = -1.
std::pair<double, unsigned> word_product(unsigned a, unsigned b, int n) {
  std::vector<int> word;
  for (int j = 0; j < n; ++j) {
    if (a & (1u << j)) word.push_back(j);
  }
  for (int j = 0; j < n; ++j) {
    if (b & (1u << j)) word.push_back(j);
  }
  double sign = 1.0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    for (std::size_t k = 0; k + 1 < word.size() - i; ++k) {
      if (word[k] > word[k + 1]) {
        std::swap(word[k], word[k + 1]);
        sign = -sign;
      }
    }
  }
  unsigned mask = 0;
  for (std::size_t i = 0; i < word.size();) {
    if (i + 1 < word.size() && word[i] == word[i + 1]) {
      sign = -sign;
      i += 2;
    } else {
      mask |= 1u << word[i];
      ++i;
    }
  }
  return {sign, mask};
}

Multivector oracle_product(const Multivector& x, const Multivector& y) {
  const int n = x.dimension();
  std::vector<double> c(x.size(), 0.0);
  for (unsigned a = 0; a < x.size(); ++a) {
    for (unsigned b = 0; b < y.size(); ++b) {
      const auto [s, m] = word_product(a, b, n);
      c[m] += s * x[a] * y[b];
    }
  }
  return Multivector(n, c);
}

}  // namespace

TEST_CASE("generators square to -1 and anticommute") {
  for (int n = 1; n <= 6; ++n) {
    for (int i = 1; i <= n; ++i) {
      const Multivector ei = Multivector::basis(n, i);
      CHECK(ei * ei == Multivector::scalar(n, -1.0));
      for (int j = i + 1; j <= n; ++j) {
        const Multivector ej = Multivector::basis(n, j);
        CHECK(ei * ej == -(ej * ei));
      }
    }
  }
  const Multivector e12 = Multivector::blade(3, 0b011);
  CHECK(e12 * e12 == Multivector::scalar(3, -1.0));
}

TEST_CASE("blade sign agrees with the word oracle") {
  for (int n = 1; n <= 6; ++n) {
    for (unsigned a = 0; a < (1u << n); ++a) {
      for (unsigned b = 0; b < (1u << n); ++b) {
        const auto [s, m] = word_product(a, b, n);
        CHECK(blade_product_sign(a, b) == s);
        CHECK((a ^ b) == m);
      }
    }
  }
}

TEST_CASE("geometric product matches the oracle on random input") {
  testing::Gen gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = gen.integer(1, 5);
    const Multivector a = gen.multivector(n), b = gen.multivector(n);
    CHECK(testing::max_abs_diff(a * b, oracle_product(a, b)) < 1e-13);
  }
}

TEST_CASE("associativity, conjugation and the vector norm identity") {
  testing::Gen gen(12);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = gen.integer(1, 5);
    const Multivector a = gen.multivector(n), b = gen.multivector(n), c = gen.multivector(n);
    CHECK(testing::max_abs_diff((a * b) * c, a * (b * c)) < 1e-12);
    CHECK(conjugate(conjugate(a)) == a);
    CHECK(testing::max_abs_diff(conjugate(a * b), conjugate(b) * conjugate(a)) < 1e-12);

    const std::vector<double> x = gen.point(n);
    const Multivector v = vector_from_point(x);
    double r2 = 0.0;
    for (double t : x) r2 += t * t;
    CHECK(testing::max_abs_diff(v * conjugate(v), Multivector::scalar(n, r2)) < 1e-12);
    CHECK(v.norm() == doctest::Approx(std::sqrt(r2)).epsilon(1e-14));
  }
}

TEST_CASE("conjugation signs by grade") {
  const int n = 4;
  const double expected[] = {1, -1, -1, 1, 1};
  for (unsigned m = 0; m < 16; ++m) {
    CHECK(conjugate(Multivector::blade(n, m))[m] == expected[blade_grade(m)]);
  }
}

TEST_CASE("norm, grades and arithmetic") {
  Multivector a(3, {1, 2, 0, 0, 0, 0, 0, 2});
  CHECK(a.norm() == doctest::Approx(3.0));
  CHECK(a.norm_squared() == doctest::Approx(9.0));
  CHECK_FALSE(a.is_pure_grade(0));
  CHECK(a.grade_part(1) == Multivector(3, {0, 2, 0, 0, 0, 0, 0, 0}));
  CHECK(Multivector(3).is_zero());
  CHECK(Multivector(3).norm() == 0.0);
  CHECK((a - a).is_zero());
  CHECK((2.0 * a) / 2.0 == a);
  CHECK(Multivector::basis(3, 2).is_pure_grade(1));
}

TEST_CASE("construction errors") {
  CHECK_THROWS_AS(Multivector(0), InputError);
  CHECK_THROWS_AS(Multivector(9), InputError);
  CHECK_THROWS_AS(Multivector(2, {1.0, 2.0}), DimensionMismatch);
  CHECK_THROWS_AS(Multivector::basis(2, 3), InputError);
  CHECK_THROWS_AS(Multivector::basis(2, 1) * Multivector::basis(3, 1), DimensionMismatch);
}

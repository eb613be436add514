#include <doctest.h>

#include "skl/errors.hpp"
#include "skl/thresholds.hpp"
#include "support.hpp"

using namespace skl;

TEST_CASE("critical exponents") {
  CHECK(critical_exponent(KernelSpec::cauchy(3), Rational(0)) == Rational(3, 2));
  CHECK(critical_exponent(KernelSpec::laplace_iterate(2), Rational(4)) == Rational(3, 2));
  CHECK(critical_exponent(KernelSpec::dirac_iterate(5, 3), Rational(0)) == Rational(5, 2));
  CHECK(critical_exponent(KernelSpec::dirac_iterate(6, 2), Rational(0)) == Rational(6, 5));
  CHECK(critical_exponent(KernelSpec::laplace_iterate(3), Rational(0)) == Rational(3, 5));
  CHECK(critical_exponent(KernelSpec::power_model(0.5), Rational(0)) == Rational(2));
  // Same value at the origin end; the admissible side flips.
  CHECK(critical_exponent(KernelSpec::cauchy(3), Rational(0), ThresholdEnd::AtOrigin) == Rational(3, 2));
  CHECK(critical_exponent(KernelSpec::cauchy(3), Rational(0), ThresholdEnd::AtInfinity, 1) == Rational(1));

  CHECK_THROWS_AS(critical_exponent(KernelSpec::cauchy(3), Rational(-1)), InputError);
  CHECK_THROWS_AS(critical_exponent(KernelSpec::cauchy(3), Rational(0), ThresholdEnd::AtInfinity, -1), InputError);
}

TEST_CASE("conjugate ranges") {
  for (int n = 2; n <= 8; ++n) CHECK(conjugate_range(Rational(n, n - 1)) == Rational(n));
  for (int n : {2, 3}) {
    for (int eps : {1, 2, 4}) {
      CHECK(conjugate_range(Rational(1) + Rational(eps, n + 2)) == Rational(1) + Rational(n + 2, eps));
    }
  }
  CHECK(conjugate_range(Rational(5, 5 + 1 - 2)) == Rational(5));
  CHECK_FALSE(conjugate_range(Rational(1)).has_value());
  CHECK_FALSE(conjugate_range(Rational(3, 5)).has_value());
}

TEST_CASE("conjugation is an involution") {
  testing::Gen gen(51);
  for (int trial = 0; trial < 500; ++trial) {
    const Rational q(gen.integer(2, 500), 1);
    const Rational r = q / Rational(gen.integer(1, 499) % static_cast<int>(q.numerator() - 1) + 1);
    if (r <= 1) continue;
    CHECK(*conjugate_range(*conjugate_range(r)) == r);
  }
}

TEST_CASE("monotone in derivative order and weight") {
  for (int n = 2; n <= 6; ++n) {
    const KernelSpec spec = KernelSpec::cauchy(n);
    for (int j = 0; j < 4; ++j) {
      CHECK(critical_exponent(spec, Rational(1), ThresholdEnd::AtInfinity, j + 1) <
            critical_exponent(spec, Rational(1), ThresholdEnd::AtInfinity, j));
    }
    for (int w = 0; w < 5; ++w) {
      CHECK(critical_exponent(spec, Rational(w + 1, 2)) > critical_exponent(spec, Rational(w, 2)));
    }
  }
}

TEST_CASE("theta does not move any threshold") {
  for (int n = 2; n <= 8; ++n) {
    for (int l = 1; l < n; ++l) {
      const ThresholdReport a = threshold_report(KernelSpec::dirac_iterate(n, l, 1.0), Rational(1, 3), 1);
      const ThresholdReport b = threshold_report(KernelSpec::dirac_iterate(n, l, 42.5), Rational(1, 3), 1);
      CHECK(a.p_star == b.p_star);
      CHECK(a.q_star == b.q_star);
      CHECK(a.hilbert_viable == b.hilbert_viable);
      CHECK(a.q_range() == b.q_range());
    }
  }
}

TEST_CASE("reports and viability") {
  const ThresholdReport c3 = threshold_report(KernelSpec::cauchy(3), Rational(0));
  CHECK(c3.p_range() == "(3/2,inf)");
  CHECK(c3.q_range() == "(1,3)");
  CHECK(c3.hilbert_viable);
  CHECK(viability(KernelSpec::cauchy(3), Rational(0), Rational(2)).viable);
  CHECK_FALSE(viability(KernelSpec::cauchy(2), Rational(0), Rational(2)).viable);
  CHECK_FALSE(threshold_report(KernelSpec::cauchy(2), Rational(0)).hilbert_viable);

  const ThresholdReport third = third_iterate_in_three_dimensions();
  CHECK(third.q_range() == "(1,3/2)");
  CHECK(third.p_star == Rational(3));
  CHECK_FALSE(third.hilbert_viable);
  CHECK_FALSE(viability(third, Rational(2)).viable);
  CHECK(viability(third, Rational(5, 4)).viable);

  // p* below 1: every q > 1 is admissible.
  const ThresholdReport lap = threshold_report(KernelSpec::laplace_iterate(3), Rational(0));
  CHECK(lap.q_range() == "(1,inf)");
  CHECK(lap.hilbert_viable);
  CHECK(lap.admits(Rational(1000)));
  CHECK_FALSE(lap.admits(Rational(1)));
}

TEST_CASE("numeric threshold witness") {
  const ThresholdWitness a = verify_threshold_numerically(KernelSpec::cauchy(2), Rational(0), 0.1);
  CHECK(a.passed);
  CHECK(a.above.converges);
  CHECK(a.below_numeric.divergence_end == DivergenceEnd::AtInfinity);
  CHECK(a.below_numeric.iterations <= 20);
  // Closed form and shell detector agree where both are finite.
  CHECK(*a.above_numeric.value == doctest::Approx(*a.above.value).epsilon(1e-6));

  CHECK(verify_threshold_numerically(KernelSpec::laplace_iterate(3), Rational(0), 0.1).passed);
  CHECK(verify_threshold_numerically(KernelSpec::dirac_iterate(6, 2), Rational(0), 0.1).passed);
  CHECK(verify_threshold_numerically(KernelSpec::laplace_iterate(2), Rational(4), 0.1, 0.5).passed);

  CHECK_THROWS_AS(verify_threshold_numerically(KernelSpec::laplace_iterate(1), Rational(0), 0.2), InputError);
  CHECK_THROWS_AS(verify_threshold_numerically(KernelSpec::cauchy(2), Rational(0), 0.0), InputError);
}

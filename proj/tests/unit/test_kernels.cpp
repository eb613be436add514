#include <doctest.h>

#include <numbers>

#include "skl/errors.hpp"
#include "skl/kernels.hpp"
#include "support.hpp"

using namespace skl;
using std::numbers::pi;

TEST_CASE("unit sphere areas") {
  CHECK(sphere_area(1) == doctest::Approx(2.0));
  CHECK(sphere_area(2) == doctest::Approx(2 * pi));
  CHECK(sphere_area(3) == doctest::Approx(4 * pi));
  CHECK(sphere_area(4) == doctest::Approx(2 * pi * pi));
  CHECK(sphere_area(5) == doctest::Approx(8 * pi * pi / 3));
}

TEST_CASE("kernel values at hand-computed points") {
  const double x[] = {1.0, 0.0};
  const Multivector k = evaluate(KernelSpec::cauchy(2), x);
  CHECK(k[0b01] == doctest::Approx(-1.0 / (2 * pi)));
  CHECK(k[0b10] == 0.0);

  const double y[] = {0.0, 2.0, 0.0};
  const Multivector c3 = evaluate(KernelSpec::cauchy(3), y);
  CHECK(c3[0b010] == doctest::Approx(-2.0 / (4 * pi * 8)));

  const Multivector l3 = evaluate(KernelSpec::laplace_iterate(3), y);
  CHECK(l3[0] == doctest::Approx(-1.0 / (4 * pi * 32)));

  const double z[] = {-4.0};
  CHECK(evaluate(KernelSpec::power_model(0.5), z)[0] == doctest::Approx(0.5));

  // Odd iterate is vector-valued, even is scalar.
  const double w[] = {0.0, 0.0, 0.0, 2.0, 0.0};
  const Multivector d1 = evaluate(KernelSpec::dirac_iterate(5, 1, 3.0), w);
  CHECK(d1.is_pure_grade(1));
  CHECK(d1[0b01000] == doctest::Approx(3.0 * 2.0 / (sphere_area(5) * 32.0)));
  const Multivector d2 = evaluate(KernelSpec::dirac_iterate(5, 2), w);
  CHECK(d2.is_pure_grade(0));
  CHECK(d2[0] == doctest::Approx(1.0 / (sphere_area(5) * 16.0)));
}

TEST_CASE("homogeneity degrees") {
  for (int n = 2; n <= 8; ++n) {
    CHECK(homogeneity_degree(KernelSpec::cauchy(n)) == Rational(n - 1));
    CHECK(homogeneity_degree(KernelSpec::laplace_iterate(n)) == Rational(n + 2));
    for (int l = 1; l < n; ++l) {
      const Rational expect = l % 2 ? Rational(n - l) : Rational(n - l + 1);
      CHECK(homogeneity_degree(KernelSpec::dirac_iterate(n, l)) == expect);
    }
  }
  CHECK(homogeneity_degree(KernelSpec::power_model(0.25)) == Rational(1, 4));
}

TEST_CASE("classification") {
  CHECK(classify(KernelSpec::cauchy(2), Rational(0)) == SingularityClass::Weak);
  CHECK(classify(KernelSpec::laplace_iterate(2), Rational(0)) == SingularityClass::Hyper);
  CHECK(classify(KernelSpec::laplace_iterate(2), Rational(2)) == SingularityClass::Singular);
  CHECK(classify(KernelSpec::laplace_iterate(2), Rational(3)) == SingularityClass::Weak);
  CHECK(classify(KernelSpec::power_model(0.5), 0.0) == SingularityClass::Weak);
  CHECK(classify(KernelSpec::power_model(1.0), 0.0) == SingularityClass::Singular);
  CHECK(classify(KernelSpec::power_model(1.5), 0.0) == SingularityClass::Hyper);
}

TEST_CASE("homogeneity holds on random points") {
  testing::Gen gen(21);
  for (int trial = 0; trial < 300; ++trial) {
    const int family = gen.integer(0, 3);
    const int n = family == 0 ? 1 : gen.integer(2, 8);
    KernelSpec spec = family == 0   ? KernelSpec::power_model(gen.uniform(0.1, 3.0))
                      : family == 1 ? KernelSpec::cauchy(n)
                      : family == 2 ? KernelSpec::laplace_iterate(n)
                                    : KernelSpec::dirac_iterate(n, gen.integer(1, n - 1));
    const std::vector<double> x = gen.point(spec.n, 0.2, 2.0);
    const double lambda = gen.uniform(0.1, 10.0);
    std::vector<double> lx(x);
    for (double& v : lx) v *= lambda;
    const double scale = evaluate(spec, lx).norm();
    CHECK(homogeneity_check(spec, x, lambda) <= 1e-12 * scale);
    CHECK(unit_magnitude(spec) > 0.0);
  }
}

TEST_CASE("theta only rescales") {
  const double x[] = {0.3, -0.7, 1.1, 0.2};
  const Multivector a = evaluate(KernelSpec::dirac_iterate(4, 1, 1.0), x);
  const Multivector b = evaluate(KernelSpec::dirac_iterate(4, 1, 2.5), x);
  CHECK(testing::max_abs_diff(2.5 * a, b) < 1e-15);
}

TEST_CASE("kernel errors") {
  const double origin[] = {0.0, 0.0};
  CHECK_THROWS_AS(evaluate(KernelSpec::cauchy(2), origin), SingularPointError);
  const double wrong[] = {1.0, 0.0, 0.0};
  CHECK_THROWS_AS(evaluate(KernelSpec::cauchy(2), wrong), DimensionMismatch);
  CHECK_THROWS_AS(KernelSpec::dirac_iterate(3, 3), InputError);
  CHECK_THROWS_AS(KernelSpec::dirac_iterate(3, 0), InputError);
  CHECK_THROWS_AS(KernelSpec::power_model(-1.0), InputError);
  CHECK_THROWS_AS(KernelSpec::cauchy(9), InputError);
  CHECK_THROWS_AS(parse_kernel_family("riesz"), InputError);
  CHECK(parse_kernel_family("laplace_iterate") == KernelFamily::LaplaceIterate);
}

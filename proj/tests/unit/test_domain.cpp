#include <doctest.h>

#include <cmath>
#include <numbers>

#include "skl/domain.hpp"
#include "skl/errors.hpp"

using namespace skl;
using std::numbers::pi;

TEST_CASE("radial reduction constants") {
  const RadialIntegralForm f =
      radial_reduction(KernelSpec::cauchy(2), 3.0, WeightedMeasure::lebesgue(), RadialDomain::exterior(2, 1.0));
  // omega_2 * (1/omega_2)^3
  CHECK(f.constant == doctest::Approx(1.0 / (4 * pi * pi)));
  CHECK(f.exponent == doctest::Approx(-2.0));

  const RadialIntegralForm g = radial_reduction(KernelSpec::laplace_iterate(3), 2.0,
                                                WeightedMeasure::power(Rational(1, 2)),
                                                RadialDomain::annulus(3, 0.5, 2.0));
  CHECK(g.constant == doctest::Approx(4 * pi / (16 * pi * pi)));
  CHECK(g.exponent == doctest::Approx(-10.0 + 0.5 + 2.0));

  const RadialIntegralForm h = radial_reduction(KernelSpec::power_model(0.5), 2.0, WeightedMeasure::lebesgue(),
                                                RadialDomain::interval(0.1, 1.0));
  CHECK(h.constant == doctest::Approx(2.0));
  CHECK(h.exponent == doctest::Approx(-1.0));
}

TEST_CASE("exact radial exponent") {
  CHECK(radial_exponent(KernelSpec::cauchy(3), Rational(3, 2), Rational(0)) == Rational(-1));
  CHECK(radial_exponent(KernelSpec::laplace_iterate(2), Rational(3, 2), Rational(4)) == Rational(-1));
  CHECK(radial_exponent(KernelSpec::dirac_iterate(5, 3), Rational(5, 2), Rational(0)) == Rational(-1));
}

TEST_CASE("measure of bounded domains") {
  const double ann = measure_of(RadialDomain::annulus(2, 1.0, 2.0), WeightedMeasure::lebesgue());
  CHECK(ann == doctest::Approx(pi * 3.0));
  const double ball = measure_of(RadialDomain::punctured_ball(3, 1e-9, 1.0), WeightedMeasure::power(Rational(1)));
  CHECK(ball == doctest::Approx(pi).epsilon(1e-9));  // 4 pi / 4
  CHECK(std::isinf(measure_of(RadialDomain::exterior(2, 1.0), WeightedMeasure::lebesgue())));
  CHECK(measure_of(RadialDomain::interval(0.5, 1.0), WeightedMeasure::lebesgue()) == doctest::Approx(1.0));
}

TEST_CASE("domain validation") {
  CHECK_THROWS_AS(RadialDomain::annulus(2, 2.0, 1.0), InputError);
  CHECK_THROWS_AS(RadialDomain::annulus(2, 0.0, 1.0), InputError);
  CHECK_THROWS_AS(RadialDomain::exterior(2, 1.0, 0.5), InputError);
  CHECK_THROWS_AS(WeightedMeasure::power(Rational(-1)), InputError);
  CHECK_THROWS_AS(parse_domain_kind("disk"), InputError);
  CHECK_THROWS_AS(RadialDomain::exterior(2, 1.0).numeric_outer_radius(), InputError);
  CHECK(RadialDomain::exterior(2, 1.0, 8.0).numeric_outer_radius() == 8.0);
  CHECK(std::isinf(RadialDomain::exterior(2, 1.0).outer_radius()));
  CHECK_THROWS_AS(radial_reduction(KernelSpec::cauchy(3), 2.0, {}, RadialDomain::exterior(2, 1.0)),
                  DimensionMismatch);
}

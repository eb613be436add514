#include <doctest.h>

#include <cmath>
#include <numbers>

#include "skl/errors.hpp"
#include "skl/norms.hpp"
#include "skl/thresholds.hpp"
#include "support.hpp"

using namespace skl;
using std::numbers::pi;

namespace {

GridFunction line(std::size_t nodes, double lo, double hi, double (*f)(double)) {
  return GridFunction::sample(1, Box{{lo}, {hi}}, {nodes},
                              [f](std::span<const double> x) { return Multivector::scalar(1, f(x[0])); });
}

GridFunction random_field(testing::Gen& gen, int n, std::size_t nodes, unsigned mask_limit) {
  const std::vector<double> c = gen.point(n, -0.5, 0.5);
  const double s = gen.uniform(0.3, 0.9);
  const unsigned mask = static_cast<unsigned>(gen.integer(0, static_cast<int>(mask_limit)));
  const double amp = gen.uniform(-3.0, 3.0);
  Box box{std::vector<double>(n, -1.0), std::vector<double>(n, 1.0)};
  return GridFunction::sample(n, box, std::vector<std::size_t>(n, nodes), [&](std::span<const double> x) {
    double r2 = 0.0;
    for (int j = 0; j < n; ++j) r2 += (x[j] - c[j]) * (x[j] - c[j]);
    Multivector v = Multivector::blade(n, mask, amp * std::exp(-r2 / (s * s)));
    return v + Multivector::scalar(n, 0.1 * std::cos(3.0 * x[0]));
  });
}

}  // namespace

TEST_CASE("closed-form kernel norms") {
  const NormResult a = kernel_lp_norm(KernelSpec::cauchy(2), 2.0, {}, RadialDomain::exterior(2, 0.1));
  CHECK(std::isinf(a.value));
  CHECK(a.divergence_end == DivergenceEnd::AtInfinity);

  const NormResult b = kernel_lp_norm(KernelSpec::cauchy(2), 3.0, {}, RadialDomain::exterior(2, 1.0));
  CHECK(b.value == doctest::Approx(std::cbrt(1.0 / (4 * pi * pi))));

  const KernelSpec lap = KernelSpec::laplace_iterate(2);
  CHECK(std::isinf(kernel_lp_norm(lap, 1.0, WeightedMeasure::power(Rational(3)), RadialDomain::exterior(2, 0.5)).value));
  CHECK(std::isfinite(kernel_lp_norm(lap, 2.0, WeightedMeasure::power(Rational(4)), RadialDomain::exterior(2, 0.5)).value));

  // Bounded domains are finite at any p; the origin end can still diverge.
  CHECK(std::isfinite(kernel_lp_norm(KernelSpec::cauchy(2), 2.0, {}, RadialDomain::annulus(2, 0.1, 3.0)).value));

  // Below 1 only the integral is defined.
  const ConvergenceReport sub = kernel_power_integral(lap, 0.7, {}, RadialDomain::exterior(2, 1.0));
  CHECK(sub.converges);
  CHECK_THROWS_AS(kernel_lp_norm(lap, 0.7, {}, RadialDomain::exterior(2, 1.0)), InputError);
}

TEST_CASE("finiteness of kernel norms matches the critical exponent") {
  testing::Gen gen(41);
  int checked = 0;
  while (checked < 50) {
    const int family = gen.integer(1, 3);
    const int n = gen.integer(2, 8);
    const KernelSpec spec = family == 1   ? KernelSpec::cauchy(n)
                            : family == 2 ? KernelSpec::laplace_iterate(n)
                                          : KernelSpec::dirac_iterate(n, gen.integer(1, n - 1));
    const Rational w(gen.integer(0, 8), gen.integer(1, 3));
    const double ps = to_double(critical_exponent(spec, w));
    if (ps < 1.0) continue;  // kernel_lp_norm needs p >= 1
    const RadialDomain ext = RadialDomain::exterior(n, 1.0);
    const WeightedMeasure m{w};
    CHECK(std::isfinite(kernel_lp_norm(spec, ps * 1.01 + 1e-9, m, ext).value));
    CHECK(std::isinf(kernel_lp_norm(spec, ps, m, ext).value));
    if (ps * 0.99 >= 1.0) CHECK(std::isinf(kernel_lp_norm(spec, ps * 0.99, m, ext).value));
    ++checked;
  }
}

TEST_CASE("grid norms of simple functions") {
  Box unit{{0.0, 0.0}, {1.0, 1.0}};
  const GridFunction zero(2, unit, {9, 9});
  for (int k = 0; k <= 2; ++k) CHECK(grid_norm(zero, 2.0, k, WeightedMeasure::power(Rational(1))).value == 0.0);

  const GridFunction one = line(11, 0.0, 1.0, [](double) { return 1.0; });
  CHECK(grid_norm(one, 2.0, 0, {}).value == doctest::Approx(1.0).epsilon(1e-14));

  // f(x) = x: (1/3 + 1)^(1/2) in the limit.
  double prev = INFINITY;
  const double target = std::sqrt(4.0 / 3.0);
  for (std::size_t nodes : {11u, 41u, 161u, 641u}) {
    const double err = std::abs(grid_norm(line(nodes, 0.0, 1.0, [](double x) { return x; }), 2.0, 1, {}).value - target);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev < 1e-5);

  CHECK_THROWS_AS(grid_norm(one, 2.0, 3, {}), InputError);
  CHECK_THROWS_AS(grid_norm(one, 0.5, 0, {}), InputError);
}

TEST_CASE("finite differences are exact on quadratics") {
  const GridFunction f = line(7, -1.0, 2.0, [](double x) { return 3 * x * x - x + 2; });
  const GridFunction d = finite_difference(f, 0);
  for (std::size_t i = 0; i < d.node_count(); ++i) {
    const double x = d.node_position(i)[0];
    CHECK(d.value(i)[0] == doctest::Approx(6 * x - 1).epsilon(1e-12));
  }
  CHECK(d.boundary_band() == 1);
}

TEST_CASE("weighted grid norm against a radial integral") {
  // Bump on a disc, w = 1: compare with a 1-D radial quadrature.
  const GridFunction f = smooth_bump(2, 201, 1.05);
  const double grid = grid_norm(f, 2.0, 0, WeightedMeasure::power(Rational(1))).value;
  double radial = 0.0;
  const int m = 20000;
  for (int i = 0; i < m; ++i) {
    const double r = (i + 0.5) / m;
    const double v = std::exp(1.0 - 1.0 / (1.0 - r * r));
    radial += 2 * pi * r * r * v * v / m;
  }
  CHECK(grid == doctest::Approx(std::sqrt(radial)).epsilon(2e-4));
}

TEST_CASE("monotonicity and scaling covariance") {
  testing::Gen gen(42);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = gen.integer(1, 3);
    const GridFunction f = random_field(gen, n, n == 3 ? 9 : 17, (1u << n) - 1);
    const double c = gen.uniform(-5.0, 5.0);
    const double p = gen.uniform(1.0, 4.0);
    const int k = gen.integer(0, 2);
    const WeightedMeasure m{Rational(gen.integer(0, 3))};
    const double base = grid_norm(f, p, k, m).value;
    CHECK(grid_norm(f.scaled(c), p, k, m).value == doctest::Approx(std::abs(c) * base).epsilon(1e-12));
    // Adding a disjoint blade can only raise |f| pointwise. Only k = 0 is
    // monotone in |f|; difference quotients are not controlled by it.
    const unsigned top = (1u << n) - 1;
    GridFunction g = f;
    for (std::size_t i = 0; i < g.node_count(); ++i) g.plane(top)[i] = 0.0;
    GridFunction h = g;
    for (std::size_t i = 0; i < h.node_count(); ++i) h.plane(top)[i] = gen.uniform(-1.0, 1.0);
    CHECK(grid_norm(g, p, 0, m).value <= grid_norm(h, p, 0, m).value);
  }
}

TEST_CASE("Hoelder inequality") {
  const GridFunction bump = smooth_bump(2, 33, 1.2);
  const HolderResult cs = holder_check(bump, bump, 2.0, 2.0, {});
  CHECK(cs.holds);
  CHECK(cs.lhs == doctest::Approx(cs.rhs).epsilon(1e-12));  // equality for g = f

  testing::Gen gen(43);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = gen.integer(1, 3);
    const std::size_t nodes = n == 3 ? 9 : 17;
    // Kernel-like g of grade 0 or 1, general multivector f.
    const unsigned gmask = gen.integer(0, 1) ? 0u : (1u << gen.integer(0, n - 1));
    const Box box{std::vector<double>(n, -1.0), std::vector<double>(n, 1.0)};
    const GridFunction g = GridFunction::sample(n, box, std::vector<std::size_t>(n, nodes), [&, n](std::span<const double> x) {
      double r2 = 0.01;
      for (double v : x) r2 += v * v;
      return Multivector::blade(n, gmask, 1.0 / std::sqrt(r2));
    });
    const GridFunction f = random_field(gen, n, nodes, (1u << n) - 1);
    const double p = gen.uniform(1.05, 6.0);
    const double q = p / (p - 1.0);
    const WeightedMeasure m{Rational(gen.integer(0, 2))};
    const HolderResult r = holder_check(g, f, p, q, m);
    CHECK(r.holds);
    const HolderResult s = holder_check(g, f.scaled(1000.0), p, q, m);
    CHECK(s.holds);
    CHECK(s.lhs == doctest::Approx(1000.0 * r.lhs).epsilon(1e-12));
    CHECK(s.rhs == doctest::Approx(1000.0 * r.rhs).epsilon(1e-12));
  }

  CHECK_THROWS_AS(holder_check(bump, bump, 3.0, 2.0, {}), InputError);
  CHECK_THROWS_AS(holder_check(bump, smooth_bump(2, 17, 1.2), 2.0, 2.0, {}), DimensionMismatch);
}

TEST_CASE("norm limit scans") {
  const GridFunction f = smooth_bump(2, 65, 1.25);
  const LimitScan a = norm_limit_scan(KernelSpec::cauchy(2), f, {}, Rational(2), 14);
  REQUIRE(a.rows.size() == 14);
  for (const ScanRow& row : a.rows) {
    CHECK(std::abs(1.0 / row.p + 1.0 / row.q - 1.0) <= 1e-12);
    CHECK(row.q < 2.0);
    CHECK(std::isfinite(row.product));
  }
  REQUIRE(a.endpoint_value);
  CHECK(a.limiting_value == doctest::Approx(*a.endpoint_value).epsilon(1e-3));

  const GridFunction zero(2, f.box(), f.shape());
  const LimitScan z = norm_limit_scan(KernelSpec::cauchy(2), zero, {}, Rational(2), 6);
  for (const ScanRow& row : z.rows) CHECK(row.product == 0.0);

  // Weighted Laplace iterate with w = 6: q* = 2.
  const WeightedMeasure w6 = WeightedMeasure::power(Rational(6));
  const ThresholdReport rep = threshold_report(KernelSpec::laplace_iterate(2), w6.weight_exponent);
  REQUIRE(rep.q_star);
  CHECK(*rep.q_star == Rational(2));
  const LimitScan b = norm_limit_scan(KernelSpec::laplace_iterate(2), f, w6, *rep.q_star, 14);
  REQUIRE(b.endpoint_value);
  CHECK(b.limiting_value == doctest::Approx(*b.endpoint_value).epsilon(1e-3));

  CHECK_THROWS_AS(norm_limit_scan(KernelSpec::cauchy(2), f, {}, Rational(1), 4), InputError);
  CHECK_THROWS_AS(norm_limit_scan(KernelSpec::cauchy(3), f, {}, Rational(3), 4), DimensionMismatch);
}

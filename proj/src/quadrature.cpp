#include "skl/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "skl/errors.hpp"
#include "skl/parallel.hpp"
#include "skl/simd.hpp"

namespace skl {

std::string_view to_string(DivergenceEnd e) {
  switch (e) {
    case DivergenceEnd::None: return "none";
    case DivergenceEnd::AtZero: return "at_zero";
    case DivergenceEnd::AtInfinity: return "at_infinity";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// integral_{r0}^{r1} r^a dr for finite 0 < r0 < r1.
double finite_power_integral(double a, double r0, double r1) {
  if (a == -1.0) return std::log(r1 / r0);
  const double e = a + 1.0;
  // r1^e - r0^e = r0^e (exp(e ln(r1/r0)) - 1), accurate for e near 0.
  return std::pow(r0, e) * std::expm1(e * std::log(r1 / r0)) / e;
}

}  // namespace

ConvergenceReport power_integral(double a, double r0, double r1) {
  if (!(r0 > 0.0)) throw InputError("power_integral needs r0 > 0 (use power_integral_from_origin)");
  if (!(r1 > r0)) throw InputError("power_integral needs r0 < r1");
  ConvergenceReport rep;
  rep.closed_form_used = true;
  rep.tail_exponent = a;
  if (std::isinf(r1)) {
    if (converges_at_infinity(a)) {
      rep.converges = true;
      rep.value = -std::pow(r0, a + 1.0) / (a + 1.0);
    } else {
      rep.divergence_end = DivergenceEnd::AtInfinity;
    }
    return rep;
  }
  rep.converges = true;
  rep.value = finite_power_integral(a, r0, r1);
  return rep;
}

ConvergenceReport power_integral_from_origin(double a, double r1) {
  if (!(r1 > 0.0)) throw InputError("power_integral_from_origin needs r1 > 0");
  ConvergenceReport rep;
  rep.closed_form_used = true;
  rep.tail_exponent = a;
  if (!converges_at_origin(a)) {
    rep.divergence_end = DivergenceEnd::AtZero;
    return rep;
  }
  if (std::isinf(r1)) {
    rep.divergence_end = DivergenceEnd::AtInfinity;
    return rep;
  }
  rep.converges = true;
  rep.value = std::pow(r1, a + 1.0) / (a + 1.0);
  return rep;
}

GaussRule gauss_legendre(int points) {
  if (points < 1) throw InputError("Gauss-Legendre rule needs at least one point");
  GaussRule rule;
  rule.nodes.resize(points);
  rule.weights.resize(points);
  const int half = (points + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (points + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= points; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = points * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    rule.nodes[i] = -z;
    rule.nodes[points - 1 - i] = z;
    rule.weights[i] = rule.weights[points - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  return rule;
}

ConvergenceReport detect_tail(const std::function<double(double)>& integrand, double r0,
                              const TailOptions& options) {
  if (!(r0 > 0.0)) throw InputError("tail detection needs r0 > 0");
  const GaussRule rule = gauss_legendre(options.gauss_points);
  const double half_log2 = 0.5 * std::numbers::ln2;

  // Shell [R, 2R] in u = ln r: integral f(e^u) e^u du.
  auto shell = [&](double radius) {
    const double mid = std::log(radius) + half_log2;
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double r = std::exp(mid + half_log2 * rule.nodes[i]);
      s += rule.weights[i] * integrand(r) * r;
    }
    return s * half_log2;
  };

  ConvergenceReport rep;
  std::vector<double> shells;
  std::vector<double> slopes;
  double total = 0.0;
  double radius = r0;
  for (int k = 0; k <= options.max_doublings; ++k) {
    const double delta = shell(radius);
    if (!(delta >= 0.0) || !std::isfinite(delta)) {
      throw InputError("tail detection needs a finite non-negative integrand");
    }
    shells.push_back(delta);
    total += delta;
    radius *= 2.0;
    rep.iterations = k;
    rep.numeric_estimate = total;

    if (total > options.cap) {
      rep.converges = false;
      rep.divergence_end = DivergenceEnd::AtInfinity;
      return rep;
    }
    if (shells.size() >= 2) {
      const double prev = shells[shells.size() - 2];
      if (prev == 0.0 && delta == 0.0) {
        slopes.push_back(-kInf);
      } else if (prev == 0.0) {
        slopes.push_back(kInf);
      } else {
        slopes.push_back(delta == 0.0 ? -kInf : std::log2(delta / prev));
      }
    }
    if (slopes.size() < 3) continue;

    const double s0 = slopes[slopes.size() - 3];
    const double s1 = slopes[slopes.size() - 2];
    const double s2 = slopes.back();
    if (std::isinf(s2) && s2 < 0 && std::isinf(s1) && s1 < 0) {
      // Integrand vanishes beyond this radius.
      rep.converges = true;
      rep.value = total;
      rep.tail_exponent = -kInf;
      rep.error_estimate = 0.0;
      return rep;
    }
    const double lo = std::min({s0, s1, s2});
    const double hi = std::max({s0, s1, s2});
    if (!std::isfinite(lo) || !std::isfinite(hi)) continue;
    if (hi - lo > options.stable_tolerance * std::max(1.0, std::abs(s2))) continue;

    rep.tail_exponent = s2 - 1.0;
    if (s2 > -options.slope_tolerance) {
      rep.converges = false;
      rep.divergence_end = DivergenceEnd::AtInfinity;
      return rep;
    }
    // Shells shrink geometrically by rho = 2^s; add the remaining tail.
    const double rho = std::exp2(s2);
    const double remainder = delta * rho / (1.0 - rho);
    rep.converges = true;
    rep.value = total + remainder;
    rep.numeric_estimate = rep.value;
    rep.error_estimate = remainder * (hi - lo + 1e-12);
    return rep;
  }
  rep.determined = false;
  rep.converges = false;
  rep.divergence_end = DivergenceEnd::AtInfinity;
  return rep;
}

std::vector<double> default_cpv_schedule() { return {1e-1, 1e-2, 1e-3, 1e-4, 1e-5}; }

namespace {

// Least-squares fit v ~ L + c x; returns (L, residual sum of squares).
std::pair<double, double> fit_affine(std::span<const double> x, std::span<const double> v) {
  const double m = static_cast<double>(x.size());
  double sx = 0, sv = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sv += v[i];
  }
  const double mx = sx / m, mv = sv / m;
  double sxx = 0, sxv = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxv += (x[i] - mx) * (v[i] - mv);
  }
  const double c = sxx > 0 ? sxv / sxx : 0.0;
  const double limit = mv - c * mx;
  double rss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = v[i] - (limit + c * x[i]);
    rss += r * r;
  }
  return {limit, rss};
}

double fit_cost(double gamma, std::span<const double> eps, std::span<const double> v) {
  std::vector<double> x(eps.size());
  for (std::size_t i = 0; i < eps.size(); ++i) x[i] = std::pow(eps[i], gamma);
  return fit_affine(x, v).second;
}

}  // namespace

double punctured_ball_integral(const KernelSpec& spec, const WeightedMeasure& measure, double eps,
                               double r_out) {
  if (!(eps > 0.0) || !(r_out > eps)) throw InputError("punctured ball needs 0 < eps < r_out");
  static const GaussRule rule = gauss_legendre(16);
  const double omega = sphere_area(spec.n);
  const double w = measure.w();
  std::vector<double> x(spec.n, 0.0);
  auto radial = [&](double r) {
    x[0] = r;
    return omega * std::pow(r, spec.n - 1 + w) * evaluate(spec, x)[0];
  };
  const double u0 = std::log(eps), u1 = std::log(r_out);
  const int panels = std::max(1, static_cast<int>(std::ceil((u1 - u0) / 0.5)));
  const double width = (u1 - u0) / panels;
  std::vector<double> parts(panels);
  for (int k = 0; k < panels; ++k) {
    const double mid = u0 + (k + 0.5) * width;
    double s = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double r = std::exp(mid + 0.5 * width * rule.nodes[i]);
      s += rule.weights[i] * radial(r) * r;
    }
    parts[k] = 0.5 * width * s;
  }
  return simd::sum(parts);
}

ConvergenceReport cpv_limit(const std::function<double(double)>& evaluator,
                            std::span<const double> schedule, const CpvOptions& options) {
  if (schedule.size() < 4) throw InputError("c.p.v. schedule needs at least 4 puncture radii");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (!(schedule[i] > 0.0)) throw InputError("c.p.v. schedule must be positive");
    if (i > 0 && !(schedule[i] < schedule[i - 1])) {
      throw InputError("c.p.v. schedule must be strictly decreasing");
    }
  }

  const std::size_t m = schedule.size();
  std::vector<double> v(m);
  for (std::size_t i = 0; i < m; ++i) v[i] = evaluator(schedule[i]);

  ConvergenceReport rep;
  rep.iterations = static_cast<int>(m);
  rep.numeric_estimate = v.back();

  double scale = 0.0;
  for (double x : v) {
    if (!std::isfinite(x) || std::abs(x) > options.cap) {
      rep.divergence_end = DivergenceEnd::AtZero;
      return rep;
    }
    scale = std::max(scale, std::abs(x));
  }

  std::vector<double> diffs(m - 1);
  bool all_flat = true;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    diffs[i] = v[i + 1] - v[i];
    if (std::abs(diffs[i]) > 4 * std::numeric_limits<double>::epsilon() * scale) all_flat = false;
  }
  if (all_flat) {
    rep.converges = true;
    rep.value = v.back();
    rep.error_estimate = 0.0;
    return rep;
  }

  // Growth test: the last three increments keep their sign and do not
  // contract, so no finite limit is being approached.
  {
    const double d0 = diffs[m - 4], d1 = diffs[m - 3], d2 = diffs[m - 2];
    const bool same_sign = (d0 > 0 && d1 > 0 && d2 > 0) || (d0 < 0 && d1 < 0 && d2 < 0);
    const double slack = 1.0 - 1e-9;
    if (same_sign && std::abs(d1) >= slack * std::abs(d0) && std::abs(d2) >= slack * std::abs(d1)) {
      rep.divergence_end = DivergenceEnd::AtZero;
      rep.tail_exponent = -std::log(std::abs(d2 / d1)) / std::log(schedule[m - 3] / schedule[m - 2]);
      return rep;
    }
  }

  // Rate fit: coarse grid, then golden-section refinement around the best.
  std::vector<double> grid = options.gamma_grid;
  if (grid.empty()) {
    for (int k = 1; k <= 19; ++k) grid.push_back(0.1 * k);
  }
  double best_gamma = grid.front();
  double best_cost = kInf;
  for (double g : grid) {
    const double c = fit_cost(g, schedule, v);
    if (c < best_cost) {
      best_cost = c;
      best_gamma = g;
    }
  }
  if (best_cost > 0.0) {
    double lo = std::max(1e-3, best_gamma - 0.1), hi = best_gamma + 0.1;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = hi - phi * (hi - lo), b = lo + phi * (hi - lo);
    double fa = fit_cost(a, schedule, v), fb = fit_cost(b, schedule, v);
    for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
      if (fa < fb) {
        hi = b; b = a; fb = fa;
        a = hi - phi * (hi - lo);
        fa = fit_cost(a, schedule, v);
      } else {
        lo = a; a = b; fa = fb;
        b = lo + phi * (hi - lo);
        fb = fit_cost(b, schedule, v);
      }
    }
    const double refined = 0.5 * (lo + hi);
    if (fit_cost(refined, schedule, v) < best_cost) best_gamma = refined;
  }
  rep.tail_exponent = best_gamma;

  // Neville table in x = eps^gamma, extrapolated to x = 0.
  std::vector<double> x(m);
  for (std::size_t i = 0; i < m; ++i) x[i] = std::pow(schedule[i], best_gamma);
  std::vector<std::vector<double>> table(m, std::vector<double>(m, 0.0));
  for (std::size_t i = 0; i < m; ++i) table[i][0] = v[i];
  for (std::size_t j = 1; j < m; ++j) {
    for (std::size_t i = j; i < m; ++i) {
      table[i][j] = (x[i - j] * table[i][j - 1] - x[i] * table[i - 1][j - 1]) / (x[i - j] - x[i]);
    }
  }
  double best = table[m - 1][1];
  double best_err = std::abs(table[m - 1][1] - table[m - 1][0]);
  for (std::size_t j = 2; j < m; ++j) {
    const double err = std::abs(table[m - 1][j] - table[m - 1][j - 1]);
    if (err < best_err) {
      best_err = err;
      best = table[m - 1][j];
    }
  }
  rep.converges = true;
  rep.value = best;
  rep.error_estimate = best_err;
  rep.determined = best_err <= options.tolerance * std::max(1.0, std::abs(best));
  return rep;
}

double counter_uniform(std::uint64_t seed, std::uint64_t sample, std::uint64_t stream) {
  auto mix = [](std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  };
  const std::uint64_t bits = mix(seed ^ mix(sample * 0x100 + stream));
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

MonteCarloEstimate numeric_lp_integral(const KernelSpec& spec, double p, const WeightedMeasure& measure,
                                       const RadialDomain& domain, std::size_t samples,
                                       std::uint64_t seed) {
  domain.validate();
  spec.validate();
  if (domain.n != spec.n) throw DimensionMismatch("domain and kernel dimensions differ");
  if (!(p > 0.0)) throw InputError("integrability index p must be positive");
  if (samples < 2) throw InputError("Monte Carlo needs at least 2 samples");
  const double r_out = domain.numeric_outer_radius();
  const double r_in = domain.r_in;
  const int n = spec.n;
  const double w = measure.w();
  const double log_span = std::log(r_out / r_in);
  const double omega = sphere_area(n);

  samples += samples % 2;
  std::vector<double> g(samples);
  parallel_for(samples, [&](std::size_t i) {
    // Stratum i of the log-radius.
    const double u = (static_cast<double>(i) + counter_uniform(seed, i, 0)) / static_cast<double>(samples);
    const double r = r_in * std::exp(u * log_span);
    std::vector<double> dir(n);
    if (n == 1) {
      dir[0] = counter_uniform(seed, i, 1) < 0.5 ? -1.0 : 1.0;
    } else {
      double norm2 = 0.0;
      for (int j = 0; j < n; j += 2) {
        const double u1 = 1.0 - counter_uniform(seed, i, 1 + j);
        const double u2 = counter_uniform(seed, i, 2 + j);
        const double rad = std::sqrt(-2.0 * std::log(u1));
        dir[j] = rad * std::cos(2.0 * std::numbers::pi * u2);
        if (j + 1 < n) dir[j + 1] = rad * std::sin(2.0 * std::numbers::pi * u2);
      }
      for (double d : dir) norm2 += d * d;
      const double inv = 1.0 / std::sqrt(norm2);
      for (double& d : dir) d *= inv;
    }
    for (double& d : dir) d *= r;
    const double k = evaluate(spec, dir).norm();
    // Jacobian of r = r_in e^{u L}: r^{n-1} dr = r^n L du; weight r^w.
    g[i] = std::pow(k, p) * std::pow(r, n + w) * omega * log_span;
  });

  MonteCarloEstimate est;
  est.samples = samples;
  est.seed = seed;
  est.value = simd::sum(g) / static_cast<double>(samples);
  // Adjacent strata paired into merged strata with two draws each.
  std::vector<double> sq(samples / 2);
  for (std::size_t k = 0; k < samples / 2; ++k) {
    const double d = g[2 * k] - g[2 * k + 1];
    sq[k] = d * d;
  }
  est.standard_error = std::sqrt(simd::sum(sq)) / static_cast<double>(samples);
  return est;
}

}  // namespace skl

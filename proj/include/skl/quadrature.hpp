#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "skl/domain.hpp"
#include "skl/kernels.hpp"

namespace skl {

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;

enum class DivergenceEnd { None, AtZero, AtInfinity };
std::string_view to_string(DivergenceEnd e);

/// Verdict on an improper (or limiting) integral.
///
/// converges implies a finite value; !converges implies divergence_end is set.
/// `determined` is false when a numeric procedure ran out of budget before
/// reaching either verdict; the fields then hold its last estimate.
struct ConvergenceReport {
  bool converges = false;
  std::optional<double> value;
  DivergenceEnd divergence_end = DivergenceEnd::None;
  bool closed_form_used = false;
  std::optional<double> numeric_estimate;
  double tail_exponent = 0.0;
  std::optional<double> error_estimate;
  int iterations = 0;
  bool determined = true;
};

/// integral_{r0}^{r1} r^a dr, r1 may be +inf. Throws InputError for r0 <= 0
/// or r1 <= r0.
ConvergenceReport power_integral(double a, double r0, double r1);

/// integral_0^{r1} r^a dr; converges iff a > -1.
ConvergenceReport power_integral_from_origin(double a, double r1);
inline bool converges_at_origin(double a) { return a > -1.0; }
inline bool converges_at_infinity(double a) { return a < -1.0; }

/// Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int points);

struct TailOptions {
  int max_doublings = 20;
  double cap = 1e12;
  /// Shell-growth slopes above -slope_tolerance count as non-decaying.
  double slope_tolerance = 1e-9;
  /// Last three slopes must agree to this before a verdict is taken.
  double stable_tolerance = 1e-6;
  int gauss_points = 16;
};

/// Numeric verdict on integral_{r0}^inf f(r) dr for a non-negative radial
/// integrand f, by integrating successive doubling shells [R, 2R] and
/// watching the shell-to-shell growth rate. tail_exponent is the fitted power
/// a of f(r) ~ r^a.
ConvergenceReport detect_tail(const std::function<double(double)>& integrand, double r0,
                              const TailOptions& options = {});

/// integral over eps < |x| < r_out of the scalar part of kernel(x) |x|^w dx,
/// by composite Gauss-Legendre in log-radius. The vector part of an odd
/// kernel integrates to zero over the symmetric shell and is not returned.
double punctured_ball_integral(const KernelSpec& spec, const WeightedMeasure& measure, double eps,
                               double r_out);

struct CpvOptions {
  std::vector<double> gamma_grid;  // empty -> {0.1, 0.2, ..., 1.9}
  double cap = 1e12;
  /// Extrapolation error above tolerance * max(1, |limit|) leaves the verdict
  /// undetermined.
  double tolerance = 1e-6;
};

/// Default puncture schedule 1e-1, 1e-2, ..., 1e-5.
std::vector<double> default_cpv_schedule();

/// lim_{eps -> 0} evaluator(eps) by polynomial Richardson extrapolation in
/// eps^gamma, gamma fitted to the data. Divergence is reported at AtZero.
ConvergenceReport cpv_limit(const std::function<double(double)>& evaluator,
                            std::span<const double> schedule, const CpvOptions& options = {});

struct MonteCarloEstimate {
  double value = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = kDefaultSeed;
};

/// Monte Carlo estimate of integral over the domain of |kernel(x)|^p |x|^w dx.
///
/// Polar sampling: log-radius stratified over the radial extent, direction
/// uniform on the sphere, kernel evaluated at the sampled point. Each sample
/// draws from its own counter-based stream, so the result depends only on
/// (seed, samples). Exterior domains need a truncation radius.
MonteCarloEstimate numeric_lp_integral(const KernelSpec& spec, double p, const WeightedMeasure& measure,
                                       const RadialDomain& domain, std::size_t samples,
                                       std::uint64_t seed = kDefaultSeed);

/// Uniform [0,1) variate for (seed, sample, stream); stateless.
double counter_uniform(std::uint64_t seed, std::uint64_t sample, std::uint64_t stream);

}  // namespace skl

#include "skl/thresholds.hpp"

#include <cmath>
#include <vector>

#include "skl/domain.hpp"
#include "skl/errors.hpp"
#include "skl/norms.hpp"

namespace skl {

std::string_view to_string(ThresholdEnd e) {
  return e == ThresholdEnd::AtInfinity ? "at_infinity" : "at_origin";
}

ThresholdEnd parse_threshold_end(std::string_view name) {
  if (name == "at_infinity") return ThresholdEnd::AtInfinity;
  if (name == "at_origin") return ThresholdEnd::AtOrigin;
  throw InputError("unknown threshold end '" + std::string(name) + "'");
}

Rational critical_exponent(const KernelSpec& spec, const Rational& weight_exponent, ThresholdEnd,
                           int derivative_order) {
  spec.validate();
  if (weight_exponent < 0) throw InputError("weight exponent must be >= 0");
  if (derivative_order < 0) throw InputError("derivative order must be >= 0");
  // Both ends share the value; only the side of the open range differs.
  const Rational denom = homogeneity_degree(spec) + Rational(derivative_order);
  if (denom <= 0) throw InputError("kernel does not decay (h + j <= 0): no critical exponent");
  return (Rational(spec.n) + weight_exponent) / denom;
}

std::optional<Rational> conjugate_range(const Rational& p_star) {
  if (p_star <= 1) return std::nullopt;
  return p_star / (p_star - Rational(1));
}

std::string ThresholdReport::p_range() const { return "(" + to_string(p_star) + ",inf)"; }

std::string ThresholdReport::q_range() const {
  return "(1," + (q_star ? to_string(*q_star) : std::string("inf")) + ")";
}

bool ThresholdReport::admits(const Rational& q) const {
  return q > 1 && (!q_star || q < *q_star);
}

namespace {

ThresholdReport report_from(const Rational& p_star, int j, const Rational& w) {
  ThresholdReport r;
  r.p_star = p_star;
  r.q_star = conjugate_range(p_star);
  r.derivative_order = j;
  r.weight_exponent = w;
  r.hilbert_viable = r.admits(Rational(2));
  return r;
}

}  // namespace

ThresholdReport threshold_report(const KernelSpec& spec, const Rational& weight_exponent, int derivative_order) {
  return report_from(critical_exponent(spec, weight_exponent, ThresholdEnd::AtInfinity, derivative_order),
                     derivative_order, weight_exponent);
}

ThresholdReport third_iterate_in_three_dimensions() {
  ThresholdReport r = report_from(Rational(3), 0, Rational(0));
  r.special_case = "dirac_iterate n=3 l=3";
  return r;
}

ViabilityVerdict viability(const ThresholdReport& report, const Rational& target_q) {
  return {report.admits(target_q), report};
}

ViabilityVerdict viability(const KernelSpec& spec, const Rational& weight_exponent, const Rational& target_q) {
  return viability(threshold_report(spec, weight_exponent), target_q);
}

ThresholdWitness verify_threshold_numerically(const KernelSpec& spec, const Rational& weight_exponent,
                                              double delta, double r_in) {
  ThresholdWitness out;
  out.p_star = critical_exponent(spec, weight_exponent);
  out.delta = delta;
  const double ps = to_double(out.p_star);
  if (!(delta > 0.0) || !(delta < 0.5 * ps)) throw InputError("witness needs 0 < delta < p*/2");

  const WeightedMeasure measure{weight_exponent};
  const double w = measure.w();
  out.above = kernel_power_integral(spec, ps + delta, measure, RadialDomain::exterior(spec.n, r_in));

  const double omega = sphere_area(spec.n);
  auto radial = [&](double p) {
    return [&spec, p, w, omega](double r) {
      std::vector<double> x(spec.n, 0.0);
      x[0] = r;
      return omega * std::pow(r, spec.n - 1 + w) * std::pow(evaluate(spec, x).norm(), p);
    };
  };
  out.above_numeric = detect_tail(radial(ps + delta), r_in);
  out.below_numeric = detect_tail(radial(ps - delta), r_in);
  out.passed = out.above.converges && out.above_numeric.converges && !out.below_numeric.converges &&
               out.below_numeric.divergence_end == DivergenceEnd::AtInfinity;
  return out;
}

}  // namespace skl

#include "skl/domain.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "skl/errors.hpp"

namespace skl {

std::string_view to_string(DomainKind k) {
  switch (k) {
    case DomainKind::Interval: return "interval";
    case DomainKind::Annulus: return "annulus";
    case DomainKind::PuncturedBall: return "punctured_ball";
    case DomainKind::Exterior: return "exterior";
  }
  return "unknown";
}

DomainKind parse_domain_kind(std::string_view name) {
  if (name == "interval") return DomainKind::Interval;
  if (name == "annulus") return DomainKind::Annulus;
  if (name == "punctured_ball") return DomainKind::PuncturedBall;
  if (name == "exterior") return DomainKind::Exterior;
  throw InputError("unknown domain kind '" + std::string(name) + "'");
}

RadialDomain RadialDomain::interval(double r_in, double r_out) {
  RadialDomain d{DomainKind::Interval, 1, r_in, r_out, std::nullopt};
  d.validate();
  return d;
}

RadialDomain RadialDomain::annulus(int n, double r_in, double r_out) {
  RadialDomain d{DomainKind::Annulus, n, r_in, r_out, std::nullopt};
  d.validate();
  return d;
}

RadialDomain RadialDomain::punctured_ball(int n, double r_in, double r_out) {
  RadialDomain d{DomainKind::PuncturedBall, n, r_in, r_out, std::nullopt};
  d.validate();
  return d;
}

RadialDomain RadialDomain::exterior(int n, double r_in, std::optional<double> truncation_radius) {
  RadialDomain d{DomainKind::Exterior, n, r_in, std::nullopt, truncation_radius};
  d.validate();
  return d;
}

void RadialDomain::validate() const {
  if (n < 1 || n > kMaxDimension) throw InputError("domain dimension out of range");
  if (kind == DomainKind::Interval && n != 1) throw InputError("interval domains are one-dimensional");
  if (!(r_in > 0.0) || !std::isfinite(r_in)) throw InputError("r_in must be positive and finite");
  if (kind == DomainKind::Exterior) {
    if (r_out) throw InputError("exterior domains have no r_out (use truncation_radius)");
    if (truncation_radius && !(*truncation_radius > r_in)) {
      throw InputError("truncation radius must exceed r_in");
    }
  } else {
    if (!r_out) throw InputError(std::string(to_string(kind)) + " domain needs r_out");
    if (!(*r_out > r_in) || !std::isfinite(*r_out)) throw InputError("need r_in < r_out < inf");
  }
}

double RadialDomain::outer_radius() const {
  return bounded() ? *r_out : std::numeric_limits<double>::infinity();
}

double RadialDomain::numeric_outer_radius() const {
  if (bounded()) return *r_out;
  if (!truncation_radius) {
    throw InputError("unbounded domain needs a truncation radius for numeric integration");
  }
  return *truncation_radius;
}

WeightedMeasure WeightedMeasure::power(const Rational& w) {
  if (w < 0) throw InputError("weight exponent must be >= 0");
  return WeightedMeasure{w};
}

RadialIntegralForm radial_reduction(const KernelSpec& spec, double p, const WeightedMeasure& measure,
                                    const RadialDomain& domain) {
  domain.validate();
  if (domain.n != spec.n) {
    throw DimensionMismatch("domain dimension " + std::to_string(domain.n) +
                            " does not match kernel dimension " + std::to_string(spec.n));
  }
  if (!(p > 0.0)) throw InputError("integrability index p must be positive");
  const double h = spec.family == KernelFamily::PowerModel ? spec.alpha
                                                           : to_double(homogeneity_degree(spec));
  RadialIntegralForm form;
  form.constant = sphere_area(spec.n) * std::pow(unit_magnitude(spec), p);
  form.exponent = -h * p + measure.w() + spec.n - 1;
  // p = p* arrives as a rounded double; keep the borderline case divergent.
  if (std::abs(form.exponent + 1.0) <= 1e-12 * std::max(1.0, h * p)) form.exponent = -1.0;
  form.domain = domain;
  return form;
}

Rational radial_exponent(const KernelSpec& spec, const Rational& p, const Rational& weight_exponent) {
  return -homogeneity_degree(spec) * p + weight_exponent + Rational(spec.n - 1);
}

double measure_of(const RadialDomain& domain, const WeightedMeasure& measure) {
  domain.validate();
  if (!domain.bounded()) return std::numeric_limits<double>::infinity();
  const double e = domain.n + measure.w();
  return sphere_area(domain.n) * (std::pow(*domain.r_out, e) - std::pow(domain.r_in, e)) / e;
}

}  // namespace skl

#pragma once

#include <optional>
#include <string_view>

#include "skl/kernels.hpp"
#include "skl/rational.hpp"

namespace skl {

enum class DomainKind { Interval, Annulus, PuncturedBall, Exterior };

std::string_view to_string(DomainKind k);
DomainKind parse_domain_kind(std::string_view name);

/// Radially symmetric region centred on the kernel singularity.
///
/// Interval is the symmetric punctured line (-r_out, r_out) \ [-r_in, r_in]
/// (n = 1). Annulus and PuncturedBall describe the same set
/// r_in < |x| < r_out; Exterior is |x| > r_in, optionally cut at
/// truncation_radius for numeric integrators.
struct RadialDomain {
  DomainKind kind = DomainKind::Exterior;
  int n = 2;
  double r_in = 1.0;
  std::optional<double> r_out;
  std::optional<double> truncation_radius;

  static RadialDomain interval(double r_in, double r_out);
  static RadialDomain annulus(int n, double r_in, double r_out);
  static RadialDomain punctured_ball(int n, double r_in, double r_out);
  static RadialDomain exterior(int n, double r_in,
                               std::optional<double> truncation_radius = std::nullopt);

  void validate() const;
  bool bounded() const { return kind != DomainKind::Exterior; }
  /// r_out for bounded kinds, +inf for Exterior.
  double outer_radius() const;
  /// Outer radius a numeric integrator may use; throws InputError for an
  /// untruncated exterior.
  double numeric_outer_radius() const;

  friend bool operator==(const RadialDomain&, const RadialDomain&) = default;
};

/// d mu = |x|^w dx with w >= 0.
struct WeightedMeasure {
  Rational weight_exponent{0};

  double w() const { return to_double(weight_exponent); }
  static WeightedMeasure lebesgue() { return {}; }
  static WeightedMeasure power(const Rational& w);

  friend bool operator==(const WeightedMeasure&, const WeightedMeasure&) = default;
};

/// integral over the domain of |kernel|^p d mu  ==  constant * integral r^exponent dr
/// over the domain's radial extent.
struct RadialIntegralForm {
  double constant = 0.0;
  double exponent = 0.0;
  RadialDomain domain;
};

RadialIntegralForm radial_reduction(const KernelSpec& spec, double p, const WeightedMeasure& measure,
                                    const RadialDomain& domain);

/// Exact radial exponent a = -h p + w + n - 1.
Rational radial_exponent(const KernelSpec& spec, const Rational& p, const Rational& weight_exponent);

/// mu(domain); +inf for Exterior.
double measure_of(const RadialDomain& domain, const WeightedMeasure& measure);

}  // namespace skl

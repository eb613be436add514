#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "skl/kernels.hpp"
#include "skl/quadrature.hpp"
#include "skl/rational.hpp"

namespace skl {

enum class ThresholdEnd { AtInfinity, AtOrigin };
std::string_view to_string(ThresholdEnd e);
ThresholdEnd parse_threshold_end(std::string_view name);

/// p* = (n + w)/(h + j). At infinity the kernel's j-th derivatives are in
/// L^p(|x|^w dx) for p > p*; at the origin for p < p*. Throws InputError when
/// h + j <= 0 or w < 0.
Rational critical_exponent(const KernelSpec& spec, const Rational& weight_exponent,
                           ThresholdEnd end = ThresholdEnd::AtInfinity, int derivative_order = 0);

/// q* = p*/(p* - 1); nullopt stands for +inf (p* <= 1, every q > 1 admissible).
std::optional<Rational> conjugate_range(const Rational& p_star);

/// Open ranges p in (p*, inf) and q in (1, q*).
struct ThresholdReport {
  Rational p_star{1};
  std::optional<Rational> q_star;
  int derivative_order = 0;
  Rational weight_exponent{0};
  bool hilbert_viable = false;
  /// Set for reports that do not come from the general formula.
  std::string special_case;

  std::string p_range() const;
  std::string q_range() const;
  /// 1 < q < q*.
  bool admits(const Rational& q) const;
};

ThresholdReport threshold_report(const KernelSpec& spec, const Rational& weight_exponent,
                                 int derivative_order = 0);

/// The third iterate in three dimensions (l = n = 3). It falls outside the
/// l < n family, so it is carried as a fixed report with q in (1, 3/2).
ThresholdReport third_iterate_in_three_dimensions();

struct ViabilityVerdict {
  bool viable = false;
  ThresholdReport report;
};

ViabilityVerdict viability(const KernelSpec& spec, const Rational& weight_exponent, const Rational& target_q);
ViabilityVerdict viability(const ThresholdReport& report, const Rational& target_q);

struct ThresholdWitness {
  Rational p_star{1};
  double delta = 0.0;
  /// Closed form at p* + delta.
  ConvergenceReport above;
  /// Shell-doubling detector at p* + delta and p* - delta.
  ConvergenceReport above_numeric;
  ConvergenceReport below_numeric;
  bool passed = false;
};

/// Witnesses the exterior threshold: finite at p* + delta, growth under radius
/// doubling at p* - delta. Needs 0 < delta < p*/2.
ThresholdWitness verify_threshold_numerically(const KernelSpec& spec, const Rational& weight_exponent,
                                              double delta, double r_in = 1.0);

}  // namespace skl

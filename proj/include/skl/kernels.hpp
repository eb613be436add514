#pragma once

#include <span>
#include <string_view>

#include "skl/clifford.hpp"
#include "skl/rational.hpp"

namespace skl {

enum class KernelFamily { PowerModel, Cauchy, LaplaceIterate, DiracIterate };

std::string_view to_string(KernelFamily f);
KernelFamily parse_kernel_family(std::string_view name);

/// Identifies one generating kernel.
///
///  - PowerModel:     |x|^-alpha on the real line (n = 1).
///  - Cauchy:         conj(x) / (omega_n |x|^n).
///  - LaplaceIterate: -1 / (omega_n |x|^(n+2)).
///  - DiracIterate:   theta x / (omega_n |x|^(n-l+1)) for odd l,
///                    theta / (omega_n |x|^(n-l+1)) for even l; 1 <= l < n.
struct KernelSpec {
  KernelFamily family = KernelFamily::Cauchy;
  int n = 2;
  int l = 0;
  double alpha = 0.0;
  double theta = 1.0;

  static KernelSpec power_model(double alpha);
  static KernelSpec cauchy(int n);
  static KernelSpec laplace_iterate(int n);
  static KernelSpec dirac_iterate(int n, int l, double theta = 1.0);

  /// Throws InputError on a violated family invariant.
  void validate() const;

  friend bool operator==(const KernelSpec&, const KernelSpec&) = default;
};

enum class SingularityClass { Weak, Singular, Hyper };
std::string_view to_string(SingularityClass c);

/// Surface area of the unit sphere S^(n-1): 2 pi^(n/2) / Gamma(n/2).
double sphere_area(int n);

/// Every implemented kernel has the form
///   coefficient * |x|^-power            (grade 0), or
///   coefficient * x * |x|^-power        (grade 1).
struct RadialProfile {
  int grade = 0;
  double coefficient = 0.0;
  double power = 0.0;
};
RadialProfile radial_profile(const KernelSpec& spec);

/// Kernel value at x != 0. Throws SingularPointError at the origin.
Multivector evaluate(const KernelSpec& spec, std::span<const double> x);

/// h such that |k(r u)| = r^-h |k(u)|.
Rational homogeneity_degree(const KernelSpec& spec);

/// |k(u)| for any unit vector u.
double unit_magnitude(const KernelSpec& spec);

/// WEAK / SINGULAR / HYPER from the effective degree h - w against n.
SingularityClass classify(const KernelSpec& spec, const Rational& weight_exponent);
SingularityClass classify(const KernelSpec& spec, double weight_exponent);

/// |k(lambda x) - lambda^-h k(x)|.
double homogeneity_check(const KernelSpec& spec, std::span<const double> x, double lambda);

}  // namespace skl

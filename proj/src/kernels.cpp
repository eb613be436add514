#include "skl/kernels.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "skl/errors.hpp"

namespace skl {

std::string_view to_string(KernelFamily f) {
  switch (f) {
    case KernelFamily::PowerModel: return "power_model";
    case KernelFamily::Cauchy: return "cauchy";
    case KernelFamily::LaplaceIterate: return "laplace_iterate";
    case KernelFamily::DiracIterate: return "dirac_iterate";
  }
  return "unknown";
}

KernelFamily parse_kernel_family(std::string_view name) {
  if (name == "power_model") return KernelFamily::PowerModel;
  if (name == "cauchy") return KernelFamily::Cauchy;
  if (name == "laplace_iterate") return KernelFamily::LaplaceIterate;
  if (name == "dirac_iterate") return KernelFamily::DiracIterate;
  throw InputError("unknown kernel family '" + std::string(name) + "'");
}

std::string_view to_string(SingularityClass c) {
  switch (c) {
    case SingularityClass::Weak: return "weak";
    case SingularityClass::Singular: return "singular";
    case SingularityClass::Hyper: return "hyper";
  }
  return "unknown";
}

KernelSpec KernelSpec::power_model(double alpha) {
  KernelSpec s{KernelFamily::PowerModel, 1, 0, alpha, 1.0};
  s.validate();
  return s;
}

KernelSpec KernelSpec::cauchy(int n) {
  KernelSpec s{KernelFamily::Cauchy, n, 0, 0.0, 1.0};
  s.validate();
  return s;
}

KernelSpec KernelSpec::laplace_iterate(int n) {
  KernelSpec s{KernelFamily::LaplaceIterate, n, 0, 0.0, 1.0};
  s.validate();
  return s;
}

KernelSpec KernelSpec::dirac_iterate(int n, int l, double theta) {
  KernelSpec s{KernelFamily::DiracIterate, n, l, 0.0, theta};
  s.validate();
  return s;
}

void KernelSpec::validate() const {
  if (n < 1 || n > kMaxDimension) {
    throw InputError("kernel dimension must be in [1, " + std::to_string(kMaxDimension) + "]");
  }
  switch (family) {
    case KernelFamily::PowerModel:
      if (n != 1) throw InputError("power_model is defined on the real line (n = 1)");
      if (!(alpha > 0.0) || !std::isfinite(alpha)) throw InputError("power_model needs alpha > 0");
      break;
    case KernelFamily::DiracIterate:
      if (l < 1 || l >= n) {
        throw InputError("dirac_iterate needs 1 <= l < n (got l=" + std::to_string(l) +
                         ", n=" + std::to_string(n) + ")");
      }
      if (!(theta > 0.0) || !std::isfinite(theta)) throw InputError("theta must be positive");
      break;
    case KernelFamily::Cauchy:
    case KernelFamily::LaplaceIterate:
      break;
  }
}

double sphere_area(int n) {
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

RadialProfile radial_profile(const KernelSpec& spec) {
  spec.validate();
  const double omega = sphere_area(spec.n);
  switch (spec.family) {
    case KernelFamily::PowerModel:
      return {0, 1.0, spec.alpha};
    case KernelFamily::Cauchy:
      // conj(x) = -x for vectors.
      return {1, -1.0 / omega, static_cast<double>(spec.n)};
    case KernelFamily::LaplaceIterate:
      return {0, -1.0 / omega, static_cast<double>(spec.n + 2)};
    case KernelFamily::DiracIterate:
      return {spec.l % 2 == 1 ? 1 : 0, spec.theta / omega, static_cast<double>(spec.n - spec.l + 1)};
  }
  return {};
}

Multivector evaluate(const KernelSpec& spec, std::span<const double> x) {
  spec.validate();
  if (static_cast<int>(x.size()) != spec.n) {
    throw DimensionMismatch("kernel of dimension " + std::to_string(spec.n) +
                            " evaluated at a point of dimension " + std::to_string(x.size()));
  }
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  if (r2 == 0.0) throw SingularPointError("kernel evaluated at its singular point x = 0");
  const double r = std::sqrt(r2);
  const double omega = sphere_area(spec.n);

  switch (spec.family) {
    case KernelFamily::PowerModel:
      return Multivector::scalar(1, std::pow(r, -spec.alpha));
    case KernelFamily::Cauchy:
      return conjugate(vector_from_point(x)) / (omega * std::pow(r, spec.n));
    case KernelFamily::LaplaceIterate:
      return Multivector::scalar(spec.n, -1.0 / (omega * std::pow(r, spec.n + 2)));
    case KernelFamily::DiracIterate: {
      const double scale = spec.theta / (omega * std::pow(r, spec.n - spec.l + 1));
      if (spec.l % 2 == 1) return scale * vector_from_point(x);
      return Multivector::scalar(spec.n, scale);
    }
  }
  return Multivector(spec.n);
}

Rational homogeneity_degree(const KernelSpec& spec) {
  spec.validate();
  switch (spec.family) {
    case KernelFamily::PowerModel: return rational_from_double(spec.alpha, 1'000'000'000);
    case KernelFamily::Cauchy: return Rational(spec.n - 1);
    case KernelFamily::LaplaceIterate: return Rational(spec.n + 2);
    case KernelFamily::DiracIterate:
      return Rational(spec.l % 2 == 1 ? spec.n - spec.l : spec.n - spec.l + 1);
  }
  return Rational(0);
}

double unit_magnitude(const KernelSpec& spec) {
  return std::abs(radial_profile(spec).coefficient);
}

SingularityClass classify(const KernelSpec& spec, const Rational& weight_exponent) {
  if (weight_exponent < 0) throw InputError("weight exponent must be >= 0");
  const Rational effective = homogeneity_degree(spec) - weight_exponent;
  if (effective < spec.n) return SingularityClass::Weak;
  if (effective == spec.n) return SingularityClass::Singular;
  return SingularityClass::Hyper;
}

SingularityClass classify(const KernelSpec& spec, double weight_exponent) {
  return classify(spec, rational_from_double(weight_exponent));
}

double homogeneity_check(const KernelSpec& spec, std::span<const double> x, double lambda) {
  if (!(lambda > 0.0)) throw InputError("scaling factor must be positive");
  std::vector<double> scaled(x.begin(), x.end());
  for (double& v : scaled) v *= lambda;
  const double h = spec.family == KernelFamily::PowerModel ? spec.alpha
                                                           : to_double(homogeneity_degree(spec));
  return (evaluate(spec, scaled) - std::pow(lambda, -h) * evaluate(spec, x)).norm();
}

}  // namespace skl

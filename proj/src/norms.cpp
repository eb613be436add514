#include "skl/norms.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "skl/errors.hpp"
#include "skl/simd.hpp"

namespace skl {

std::string_view to_string(NormMethod m) {
  return m == NormMethod::ClosedForm ? "closed_form" : "grid";
}

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

ConvergenceReport kernel_power_integral(const KernelSpec& spec, double p, const WeightedMeasure& measure,
                                        const RadialDomain& domain) {
  const RadialIntegralForm form = radial_reduction(spec, p, measure, domain);
  ConvergenceReport rep = power_integral(form.exponent, domain.r_in, domain.outer_radius());
  if (rep.value) rep.value = *rep.value * form.constant;
  return rep;
}

NormResult kernel_lp_norm(const KernelSpec& spec, double p, const WeightedMeasure& measure,
                          const RadialDomain& domain) {
  if (!(p >= 1.0)) throw InputError("kernel_lp_norm needs p >= 1");
  const ConvergenceReport rep = kernel_power_integral(spec, p, measure, domain);
  NormResult out;
  out.p = p;
  out.derivative_order = 0;
  out.weight_exponent = measure.w();
  out.method = NormMethod::ClosedForm;
  if (rep.converges) {
    out.value = std::pow(*rep.value, 1.0 / p);
  } else {
    out.value = kInf;
    out.divergence_end = rep.divergence_end;
  }
  return out;
}

GridFunction finite_difference(const GridFunction& f, int axis) {
  const int n = f.dimension();
  if (axis < 0 || axis >= n) throw InputError("difference axis out of range");
  GridFunction out(n, f.box(), f.shape());
  const std::size_t len = f.shape()[axis];
  const std::size_t stride = f.stride(axis);
  const double h = f.spacing(axis);
  const std::size_t nodes = f.node_count();

  for (unsigned b = 0; b < f.blade_count(); ++b) {
    if (!f.plane_nonzero(b)) continue;
    const auto src = f.plane(b);
    auto dst = out.plane(b);
    for (std::size_t flat = 0; flat < nodes; ++flat) {
      const std::size_t i = (flat / stride) % len;
      const double* p = src.data() + flat;
      double d;
      if (i > 0 && i + 1 < len) {
        d = (p[stride] - p[-static_cast<std::ptrdiff_t>(stride)]) / (2.0 * h);
      } else if (len == 2) {
        d = (i == 0 ? p[stride] - p[0] : p[0] - p[-static_cast<std::ptrdiff_t>(stride)]) / h;
      } else if (i == 0) {
        d = (-3.0 * p[0] + 4.0 * p[stride] - p[2 * stride]) / (2.0 * h);
      } else {
        const auto s = static_cast<std::ptrdiff_t>(stride);
        d = (3.0 * p[0] - 4.0 * p[-s] + p[-2 * s]) / (2.0 * h);
      }
      dst[flat] = d;
    }
  }
  out.set_boundary_band(1);
  return out;
}

namespace {

double powered_sum(const GridFunction& f, double p, const std::vector<double>& weights) {
  std::vector<double> t = f.pointwise_norms();
  for (double& v : t) v = std::pow(v, p);
  return simd::weighted_sum(weights, t);
}

std::vector<double> measure_weights(const GridFunction& f, double w) {
  std::vector<double> weights = f.trapezoid_weights();
  const std::vector<double> radial = f.radial_weights(w);
  for (std::size_t i = 0; i < weights.size(); ++i) weights[i] *= radial[i];
  return weights;
}

}  // namespace

NormResult grid_norm(const GridFunction& f, double p, int k, const WeightedMeasure& measure) {
  if (!(p >= 1.0)) throw InputError("grid_norm needs p >= 1");
  if (k < 0 || k > 2) throw InputError("grid_norm supports derivative orders 0..2");
  const std::vector<double> weights = measure_weights(f, measure.w());
  double total = powered_sum(f, p, weights);
  if (k >= 1) {
    const int n = f.dimension();
    for (int i = 0; i < n; ++i) {
      const GridFunction di = finite_difference(f, i);
      total += powered_sum(di, p, weights);
      if (k == 2) {
        for (int j = i; j < n; ++j) total += powered_sum(finite_difference(di, j), p, weights);
      }
    }
  }
  NormResult out;
  out.p = p;
  out.derivative_order = k;
  out.weight_exponent = measure.w();
  out.method = NormMethod::Grid;
  out.value = std::pow(total, 1.0 / p);
  return out;
}

HolderResult holder_check(const GridFunction& g, const GridFunction& f, double p, double q,
                          const WeightedMeasure& measure) {
  if (!g.same_lattice(f)) throw DimensionMismatch("holder_check needs both functions on one lattice");
  if (!(p > 1.0) || !(q > 1.0) || std::abs(1.0 / p + 1.0 / q - 1.0) > 1e-12) {
    throw InputError("holder_check needs conjugate exponents 1/p + 1/q = 1");
  }
  const std::vector<double> weights = measure_weights(g, measure.w());
  std::vector<double> prod(g.node_count());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = geometric_product(g.value(i), f.value(i)).norm();

  HolderResult r;
  r.lhs = simd::weighted_sum(weights, prod);
  r.rhs = std::pow(powered_sum(g, p, weights), 1.0 / p) * std::pow(powered_sum(f, q, weights), 1.0 / q);
  r.holds = r.lhs <= r.rhs * (1.0 + 1e-9);
  return r;
}

RadialDomain scan_domain_for(const GridFunction& f, double puncture) {
  double r2 = 0.0;
  for (int j = 0; j < f.dimension(); ++j) {
    const double m = std::max(std::abs(f.box().lo[j]), std::abs(f.box().hi[j]));
    r2 += m * m;
  }
  const double outer = std::sqrt(r2);
  if (!(outer > puncture)) throw InputError("grid box lies inside the puncture");
  return RadialDomain::punctured_ball(f.dimension(), puncture, outer);
}

LimitScan norm_limit_scan(const KernelSpec& spec, const GridFunction& f, const WeightedMeasure& measure,
                          const Rational& q_star, int steps, const std::optional<RadialDomain>& kernel_domain,
                          double puncture) {
  if (q_star <= 1) throw InputError("scan endpoint q* must exceed 1");
  if (steps < 1) throw InputError("scan needs at least one step");
  if (f.dimension() != spec.n) throw DimensionMismatch("grid and kernel dimensions differ");

  LimitScan scan;
  scan.kernel_domain = kernel_domain ? *kernel_domain : scan_domain_for(f, puncture);
  const double qs = to_double(q_star);
  for (int k = 0; k < steps; ++k) {
    ScanRow row;
    row.q = 1.0 + (qs - 1.0) * (1.0 - std::exp2(-(k + 1)));
    row.p = row.q / (row.q - 1.0);
    if (std::abs(1.0 / row.p + 1.0 / row.q - 1.0) > 1e-12) {
      throw InputError("scan produced a non-conjugate (p, q) pair");
    }
    row.kernel_norm = kernel_lp_norm(spec, row.p, measure, scan.kernel_domain).value;
    row.f_norm = grid_norm(f, row.q, 0, measure).value;
    // 0 * inf: a vanishing density pairs to zero.
    row.product = row.f_norm == 0.0 ? 0.0 : row.kernel_norm * row.f_norm;
    scan.rows.push_back(row);
  }
  scan.limiting_value = scan.rows.back().product;

  const double p_star = qs / (qs - 1.0);
  const double k_end = kernel_lp_norm(spec, p_star, measure, scan.kernel_domain).value;
  const double f_end = grid_norm(f, qs, 0, measure).value;
  if (f_end == 0.0) {
    scan.endpoint_value = 0.0;
  } else if (std::isfinite(k_end)) {
    scan.endpoint_value = k_end * f_end;
  }
  return scan;
}

}  // namespace skl

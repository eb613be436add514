#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "skl/domain.hpp"
#include "skl/grid.hpp"
#include "skl/kernels.hpp"
#include "skl/quadrature.hpp"
#include "skl/rational.hpp"

namespace skl {

enum class NormMethod { ClosedForm, Grid };
std::string_view to_string(NormMethod m);

struct NormResult {
  double p = 1.0;
  int derivative_order = 0;
  double weight_exponent = 0.0;
  double value = 0.0;  // +inf when the integral diverges
  NormMethod method = NormMethod::ClosedForm;
  DivergenceEnd divergence_end = DivergenceEnd::None;
};

/// integral over the domain of |kernel|^p d mu, closed form. Defined for any
/// p > 0, including the sub-unit indices where L^p is only a quasi-norm.
ConvergenceReport kernel_power_integral(const KernelSpec& spec, double p, const WeightedMeasure& measure,
                                        const RadialDomain& domain);

/// (integral |kernel|^p d mu)^(1/p) for p >= 1; divergence is reported as +inf.
NormResult kernel_lp_norm(const KernelSpec& spec, double p, const WeightedMeasure& measure,
                          const RadialDomain& domain);

/// Second-order central difference along `axis`, second-order one-sided on
/// the two faces (first order when the axis has only 2 nodes). The result's
/// boundary_band is 1.
GridFunction finite_difference(const GridFunction& f, int axis);

/// Discrete weighted Sobolev norm (sum_{|beta| <= k} ||d^beta f||_{p,w}^p)^(1/p)
/// with tensor trapezoid weights times |x|^w. k <= 2.
NormResult grid_norm(const GridFunction& f, double p, int k, const WeightedMeasure& measure);

struct HolderResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// lhs = ||g f||_{1,w} with the pointwise geometric product, rhs =
/// ||g||_{p,w} ||f||_{q,w}. Needs 1/p + 1/q = 1 to 1e-12 and equal lattices.
HolderResult holder_check(const GridFunction& g, const GridFunction& f, double p, double q,
                          const WeightedMeasure& measure);

struct ScanRow {
  double q = 0.0;
  double p = 0.0;
  double kernel_norm = 0.0;
  double f_norm = 0.0;
  double product = 0.0;
};

struct LimitScan {
  std::vector<ScanRow> rows;
  /// Product on the last row.
  double limiting_value = 0.0;
  /// ||kernel||_{p*} ||f||_{q*} evaluated at the endpoint itself, when both
  /// factors are finite there.
  std::optional<double> endpoint_value;
  RadialDomain kernel_domain;
};

/// Kernel domain used by the scan when none is given: the punctured ball
/// r_in < |x| < (largest |x| on the grid box), i.e. where f can be nonzero.
RadialDomain scan_domain_for(const GridFunction& f, double puncture);

/// Rows q_k = 1 + (q* - 1)(1 - 2^-(k+1)), k = 0..steps-1, p_k = q_k/(q_k - 1),
/// each with ||kernel||_{p_k,w} ||f||_{q_k,w}. q_star must be finite and > 1.
LimitScan norm_limit_scan(const KernelSpec& spec, const GridFunction& f, const WeightedMeasure& measure,
                          const Rational& q_star, int steps,
                          const std::optional<RadialDomain>& kernel_domain = std::nullopt,
                          double puncture = 0.1);

}  // namespace skl

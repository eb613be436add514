#pragma once

#include <optional>
#include <stdexcept>
#include <string_view>

#include "skl/grid.hpp"
#include "skl/kernels.hpp"
#include "skl/norms.hpp"
#include "skl/rational.hpp"
#include "skl/thresholds.hpp"

namespace skl {

enum class PunctureHandling { SubgridRefine, CellExclude };
std::string_view to_string(PunctureHandling h);
PunctureHandling parse_puncture_handling(std::string_view name);

/// How the lattice convolution treats the kernel near its singularity.
///
/// Every source cell contributes kernel(x - y) psi(y) |cell|, with the kernel
/// taken at the cell centre. The cell that contains the target is instead
/// averaged over a refinement^n subgrid (SubgridRefine) or dropped
/// (CellExclude). Cells within near_field_cells lattice steps of the target
/// (Chebyshev distance) get the same subgrid average.
struct ConvolutionPlan {
  KernelSpec spec;
  int refinement = 8;
  PunctureHandling puncture = PunctureHandling::SubgridRefine;
  int near_field_cells = 0;
  /// Weight exponent the kernel is classified under.
  Rational weight_exponent{0};

  /// refinement >= 4 for a WEAK kernel with SubgridRefine; SubgridRefine
  /// needs a WEAK kernel and CellExclude a SINGULAR or HYPER one.
  void validate() const;
};

/// Phi psi(x) = sum over cells of kernel(x - y) psi(y) |cell| (geometric
/// product, kernel on the left), on the lattice of psi.
GridFunction teodorescu(const GridFunction& psi, const ConvolutionPlan& plan);

/// Df = sum_j e_j d_j f with central differences, one-sided at the faces.
/// The boundary band of the result is one more than that of f.
GridFunction dirac_apply(const GridFunction& f);

/// Conjugate operator sum_j conj(e_j) d_j f = -Df.
GridFunction conjugate_dirac_apply(const GridFunction& f);

/// ||D(phi) - psi||_2 / ||psi||_2 over the nodes outside the boundary band
/// of D(phi).
double left_inverse_residual(const GridFunction& psi, const GridFunction& phi);

/// Raised when a density exponent lies outside the conjugate range.
class InadmissibleExponent : public std::invalid_argument {
 public:
  InadmissibleExponent(const std::string& what, ThresholdReport report)
      : std::invalid_argument(what), report_(std::move(report)) {}
  const ThresholdReport& report() const { return report_; }

 private:
  ThresholdReport report_;
};

struct MappingProbe {
  Rational q{2};
  ThresholdReport thresholds;
  NormResult psi_k0;
  NormResult psi_k1;
  NormResult phi_k0;
  NormResult phi_k1;
  /// Left-inverse residual; only for the Cauchy kernel, whose transform D inverts.
  std::optional<double> residual;
  /// Radius of the smallest ball around the origin containing the grid box.
  double truncation_radius = 0.0;
  bool all_finite = false;
};

/// Norms of psi and of its transform at k = 0, 1 in L^q(|x|^w dx). Throws
/// InadmissibleExponent when q is outside (1, q*).
MappingProbe mapping_property_probe(const GridFunction& psi, const ConvolutionPlan& plan, const Rational& q);

}  // namespace skl

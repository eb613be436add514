#include "skl/transform.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "skl/errors.hpp"
#include "skl/parallel.hpp"
#include "skl/simd.hpp"

namespace skl {

std::string_view to_string(PunctureHandling h) {
  return h == PunctureHandling::SubgridRefine ? "subgrid_refine" : "cell_exclude";
}

PunctureHandling parse_puncture_handling(std::string_view name) {
  if (name == "subgrid_refine") return PunctureHandling::SubgridRefine;
  if (name == "cell_exclude") return PunctureHandling::CellExclude;
  throw InputError("unknown puncture handling '" + std::string(name) + "'");
}

void ConvolutionPlan::validate() const {
  spec.validate();
  if (refinement < 1) throw InputError("refinement factor must be >= 1");
  if (near_field_cells < 0) throw InputError("near_field_cells must be >= 0");
  const SingularityClass cls = classify(spec, weight_exponent);
  if (puncture == PunctureHandling::SubgridRefine) {
    if (cls != SingularityClass::Weak) {
      throw InputError("subgrid refinement needs a weakly singular kernel (got " +
                       std::string(to_string(cls)) + ")");
    }
    if (refinement < 4) throw InputError("weak kernels need refinement >= 4");
  } else if (cls == SingularityClass::Weak) {
    throw InputError("cell exclusion is reserved for singular and hyper-singular kernels");
  }
}

namespace {

// One plane of kernel weights per kernel component over the offsets
// e = s - t in [-(N_j - 1), N_j - 1]^n, i.e. the weight for source s seen
// from target t. Flipping the offset keeps the inner loop over the last axis
// running forward through both the table and the source plane.
struct WeightTable {
  std::vector<std::size_t> dims;
  std::vector<std::size_t> strides;
  std::vector<unsigned> masks;  // blade of each component
  std::vector<std::vector<double>> planes;
};

WeightTable build_table(const GridFunction& psi, const ConvolutionPlan& plan) {
  const int n = psi.dimension();
  const RadialProfile profile = radial_profile(plan.spec);
  WeightTable t;
  t.dims.resize(n);
  t.strides.resize(n);
  std::size_t size = 1;
  for (int j = n - 1; j >= 0; --j) {
    t.dims[j] = 2 * psi.shape()[j] - 1;
    t.strides[j] = size;
    size *= t.dims[j];
  }
  if (profile.grade == 0) {
    t.masks = {0u};
  } else {
    for (int j = 0; j < n; ++j) t.masks.push_back(1u << j);
  }
  t.planes.assign(t.masks.size(), std::vector<double>(size, 0.0));

  const double volume = psi.cell_volume();
  const int refine = plan.refinement;
  std::vector<double> h(n);
  for (int j = 0; j < n; ++j) h[j] = psi.spacing(j);

  // Accumulates kernel(z) * scale into entry idx, component-wise.
  auto add_kernel = [&](const std::vector<double>& z, std::size_t idx, double scale) {
    double r2 = 0.0;
    for (double v : z) r2 += v * v;
    const double radial = profile.coefficient * std::pow(r2, -0.5 * profile.power) * scale;
    if (profile.grade == 0) {
      t.planes[0][idx] += radial;
    } else {
      for (int j = 0; j < n; ++j) t.planes[j][idx] += radial * z[j];
    }
  };

  std::size_t sub_count = 1;
  for (int j = 0; j < n; ++j) sub_count *= static_cast<std::size_t>(refine);

  parallel_for(size, [&](std::size_t idx) {
    std::vector<double> z(n);
    std::size_t rest = idx;
    long cheb = 0;
    for (int j = 0; j < n; ++j) {
      const long e = static_cast<long>(rest / t.strides[j]) - static_cast<long>(psi.shape()[j] - 1);
      rest %= t.strides[j];
      z[j] = -static_cast<double>(e) * h[j];  // x - y
      cheb = std::max(cheb, std::labs(e));
    }
    const bool self = cheb == 0;
    if (self && plan.puncture == PunctureHandling::CellExclude) return;
    if (!self && cheb > plan.near_field_cells) {
      add_kernel(z, idx, volume);
      return;
    }
    // Subgrid midpoints; with an odd factor the subcell at the singularity
    // is skipped.
    std::vector<double> p(n);
    const double scale = volume / static_cast<double>(sub_count);
    for (std::size_t s = 0; s < sub_count; ++s) {
      std::size_t q = s;
      bool origin = true;
      for (int j = 0; j < n; ++j) {
        const int k = static_cast<int>(q % refine);
        q /= refine;
        p[j] = z[j] + h[j] * ((k + 0.5) / refine - 0.5);
        if (p[j] != 0.0) origin = false;
      }
      if (!origin) add_kernel(p, idx, scale);
    }
  });
  return t;
}

}  // namespace

GridFunction teodorescu(const GridFunction& psi, const ConvolutionPlan& plan) {
  plan.validate();
  const int n = psi.dimension();
  if (plan.spec.n != n) throw DimensionMismatch("kernel and grid dimensions differ");

  const WeightTable table = build_table(psi, plan);
  const std::size_t last = psi.shape()[n - 1];
  const std::size_t rows = psi.node_count() / last;

  std::vector<unsigned> blades;
  for (unsigned b = 0; b < psi.blade_count(); ++b) {
    if (psi.plane_nonzero(b)) blades.push_back(b);
  }
  // Rows where every active blade vanishes contribute nothing.
  std::vector<std::size_t> live_rows;
  for (std::size_t r = 0; r < rows; ++r) {
    bool live = false;
    for (unsigned b : blades) {
      const auto row = psi.plane(b).subspan(r * last, last);
      for (double v : row) {
        if (v != 0.0) {
          live = true;
          break;
        }
      }
      if (live) break;
    }
    if (live) live_rows.push_back(r);
  }

  GridFunction out(n, psi.box(), psi.shape());
  std::vector<double*> out_planes(out.blade_count());
  for (unsigned b = 0; b < out.blade_count(); ++b) out_planes[b] = out.plane(b).data();
  const simd::Ops& ops = simd::active();

  parallel_for(psi.node_count(), [&](std::size_t target) {
    const std::vector<std::size_t> ti = psi.node_index(target);
    std::vector<double> acc(table.masks.size() * blades.size(), 0.0);
    for (std::size_t r : live_rows) {
      // Table entry for source (row r, last index 0) seen from this target.
      std::size_t rest = r * last;
      std::size_t base = 0;
      for (int j = 0; j < n - 1; ++j) {
        const std::size_t sj = rest / psi.stride(j);
        rest %= psi.stride(j);
        base += (sj + psi.shape()[j] - 1 - ti[j]) * table.strides[j];
      }
      base += (last - 1 - ti[n - 1]);
      for (std::size_t c = 0; c < table.masks.size(); ++c) {
        const double* w = table.planes[c].data() + base;
        for (std::size_t bi = 0; bi < blades.size(); ++bi) {
          const double* src = psi.plane(blades[bi]).data() + r * last;
          acc[c * blades.size() + bi] += ops.dot(w, src, last);
        }
      }
    }
    for (std::size_t c = 0; c < table.masks.size(); ++c) {
      for (std::size_t bi = 0; bi < blades.size(); ++bi) {
        const unsigned m = table.masks[c];
        const unsigned b = blades[bi];
        out_planes[m ^ b][target] += blade_product_sign(m, b) * acc[c * blades.size() + bi];
      }
    }
  });
  return out;
}

GridFunction dirac_apply(const GridFunction& f) {
  const int n = f.dimension();
  for (std::size_t s : f.shape()) {
    if (s < 3) throw InputError("dirac_apply needs at least 3 nodes per axis");
  }
  GridFunction out(n, f.box(), f.shape());
  for (int j = 0; j < n; ++j) {
    const GridFunction d = finite_difference(f, j);
    const unsigned m = 1u << j;
    for (unsigned b = 0; b < f.blade_count(); ++b) {
      if (!d.plane_nonzero(b)) continue;
      simd::axpy(blade_product_sign(m, b), d.plane(b), out.plane(m ^ b));
    }
  }
  out.set_boundary_band(f.boundary_band() + 1);
  return out;
}

GridFunction conjugate_dirac_apply(const GridFunction& f) {
  GridFunction out = dirac_apply(f).scaled(-1.0);
  out.set_boundary_band(f.boundary_band() + 1);
  return out;
}

double left_inverse_residual(const GridFunction& psi, const GridFunction& phi) {
  if (!psi.same_lattice(phi)) throw DimensionMismatch("residual needs one lattice");
  const GridFunction d = dirac_apply(phi);
  const GridFunction diff = d - psi;
  const std::vector<double> num = diff.pointwise_norms();
  const std::vector<double> den = psi.pointwise_norms();
  std::vector<double> mask(psi.node_count(), 0.0);
  for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = d.in_band(i, d.boundary_band()) ? 0.0 : 1.0;
  std::vector<double> num2(num.size()), den2(den.size());
  for (std::size_t i = 0; i < num.size(); ++i) {
    num2[i] = num[i] * num[i];
    den2[i] = den[i] * den[i];
  }
  const double bottom = simd::weighted_sum(mask, den2);
  if (bottom == 0.0) throw InputError("residual is undefined for a vanishing density");
  return std::sqrt(simd::weighted_sum(mask, num2) / bottom);
}

MappingProbe mapping_property_probe(const GridFunction& psi, const ConvolutionPlan& plan, const Rational& q) {
  MappingProbe probe;
  probe.q = q;
  probe.thresholds = threshold_report(plan.spec, plan.weight_exponent);
  if (!probe.thresholds.admits(q)) {
    throw InadmissibleExponent("q = " + to_string(q) + " lies outside the admissible range " +
                                   probe.thresholds.q_range(),
                               probe.thresholds);
  }
  const WeightedMeasure measure{plan.weight_exponent};
  const double qd = to_double(q);
  const GridFunction phi = teodorescu(psi, plan);
  probe.psi_k0 = grid_norm(psi, qd, 0, measure);
  probe.psi_k1 = grid_norm(psi, qd, 1, measure);
  probe.phi_k0 = grid_norm(phi, qd, 0, measure);
  probe.phi_k1 = grid_norm(phi, qd, 1, measure);
  if (plan.spec.family == KernelFamily::Cauchy) {
    bool nonzero = false;
    for (unsigned b = 0; b < psi.blade_count() && !nonzero; ++b) nonzero = psi.plane_nonzero(b);
    if (nonzero) probe.residual = left_inverse_residual(psi, phi);
  }
  double r2 = 0.0;
  for (int j = 0; j < psi.dimension(); ++j) {
    const double m = std::max(std::abs(psi.box().lo[j]), std::abs(psi.box().hi[j]));
    r2 += m * m;
  }
  probe.truncation_radius = std::sqrt(r2);
  probe.all_finite = std::isfinite(probe.psi_k0.value) && std::isfinite(probe.psi_k1.value) &&
                     std::isfinite(probe.phi_k0.value) && std::isfinite(probe.phi_k1.value);
  return probe;
}

}  // namespace skl

#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "skl/clifford.hpp"
#include "skl/domain.hpp"
#include "skl/grid.hpp"
#include "skl/kernels.hpp"
#include "skl/norms.hpp"
#include "skl/quadrature.hpp"
#include "skl/thresholds.hpp"

// JSON forms of the value types. Rationals travel as "num/den" strings and
// doubles with 17 significant digits, so every report replays losslessly.
// Readers throw InputError on malformed input.
namespace skl::io {

using Json = nlohmann::json;

/// Accepts a JSON string ("3/2", "0.5") or number.
Rational rational_from_json(const Json& j);
Json rational_to_json(const Rational& r);

/// Finite doubles as numbers; +inf/-inf/nan as the strings "inf", "-inf", "nan".
/// The reader also takes rational strings such as "3/2".
Json double_to_json(double v);
double double_from_json(const Json& j);

Json to_json(const KernelSpec& spec);
KernelSpec kernel_from_json(const Json& j);

Json to_json(const RadialDomain& d);
RadialDomain domain_from_json(const Json& j, int n);

Json to_json(const WeightedMeasure& m);
WeightedMeasure measure_from_json(const Json& j);

Json to_json(const Multivector& v);
Multivector multivector_from_json(const Json& j);

/// {n, box: {lo, hi}, shape, weight?, boundary_band?, values: [[coeffs]...]}
/// with values in row-major node order.
Json to_json(const GridFunction& f);
GridFunction grid_from_json(const Json& j);
GridFunction read_grid_file(const std::string& path);
void write_grid_file(const GridFunction& f, const std::string& path);

Json to_json(const ThresholdReport& r);
ThresholdReport threshold_from_json(const Json& j);

Json to_json(const ConvergenceReport& r);
Json to_json(const NormResult& r);
Json to_json(const HolderResult& r);
Json to_json(const LimitScan& s);

/// 17 significant digits.
std::string format_double(double v);

}  // namespace skl::io

#include "skl/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "skl/errors.hpp"

namespace skl::io {

namespace {

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return j.at(key);
}

template <typename T>
T get_as(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const Json::exception&) {
    throw InputError(std::string("field '") + what + "' has the wrong type");
  }
}

std::vector<double> doubles(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string("field '") + what + "' must be an array");
  std::vector<double> out;
  for (const Json& v : j) out.push_back(double_from_json(v));
  return out;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number()) return rational_from_double(j.get<double>());
  throw InputError("rational must be a string or number");
}

Json rational_to_json(const Rational& r) { return to_string(r); }

Json double_to_json(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

double double_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
    return to_double(parse_rational(s));
  }
  throw InputError("expected a number");
}

Json to_json(const KernelSpec& spec) {
  Json j{{"family", std::string(to_string(spec.family))}, {"n", spec.n}};
  if (spec.family == KernelFamily::PowerModel) j["alpha"] = spec.alpha;
  if (spec.family == KernelFamily::DiracIterate) {
    j["l"] = spec.l;
    j["theta"] = spec.theta;
  }
  return j;
}

KernelSpec kernel_from_json(const Json& j) {
  KernelSpec s;
  s.family = parse_kernel_family(get_as<std::string>(require(j, "family"), "family"));
  if (s.family == KernelFamily::PowerModel) {
    s.n = j.contains("n") ? get_as<int>(j.at("n"), "n") : 1;
    s.alpha = double_from_json(require(j, "alpha"));
  } else {
    s.n = get_as<int>(require(j, "n"), "n");
  }
  if (s.family == KernelFamily::DiracIterate) {
    s.l = get_as<int>(require(j, "l"), "l");
    if (j.contains("theta")) s.theta = double_from_json(j.at("theta"));
  }
  s.validate();
  return s;
}

Json to_json(const RadialDomain& d) {
  Json j{{"kind", std::string(to_string(d.kind))}, {"r_in", d.r_in}};
  if (d.r_out) j["r_out"] = *d.r_out;
  if (d.truncation_radius) j["truncation_radius"] = *d.truncation_radius;
  return j;
}

RadialDomain domain_from_json(const Json& j, int n) {
  RadialDomain d;
  d.kind = parse_domain_kind(get_as<std::string>(require(j, "kind"), "kind"));
  d.n = d.kind == DomainKind::Interval ? 1 : n;
  d.r_in = double_from_json(require(j, "r_in"));
  if (j.contains("r_out")) d.r_out = double_from_json(j.at("r_out"));
  if (j.contains("truncation_radius")) d.truncation_radius = double_from_json(j.at("truncation_radius"));
  d.validate();
  return d;
}

Json to_json(const WeightedMeasure& m) { return Json{{"w", rational_to_json(m.weight_exponent)}}; }

WeightedMeasure measure_from_json(const Json& j) {
  WeightedMeasure m;
  if (j.is_object() && j.contains("w")) m.weight_exponent = rational_from_json(j.at("w"));
  if (m.weight_exponent < 0) throw InputError("weight exponent must be >= 0");
  return m;
}

Json to_json(const Multivector& v) {
  Json c = Json::array();
  for (double x : v.coeffs()) c.push_back(x);
  return Json{{"n", v.dimension()}, {"coeffs", c}};
}

Multivector multivector_from_json(const Json& j) {
  return Multivector(get_as<int>(require(j, "n"), "n"), doubles(require(j, "coeffs"), "coeffs"));
}

Json to_json(const GridFunction& f) {
  Json values = Json::array();
  for (std::size_t i = 0; i < f.node_count(); ++i) {
    Json c = Json::array();
    for (unsigned b = 0; b < f.blade_count(); ++b) c.push_back(f.plane(b)[i]);
    values.push_back(std::move(c));
  }
  Json j{{"n", f.dimension()},
         {"box", {{"lo", f.box().lo}, {"hi", f.box().hi}}},
         {"shape", f.shape()},
         {"values", std::move(values)}};
  if (f.boundary_band() > 0) j["boundary_band"] = f.boundary_band();
  return j;
}

GridFunction grid_from_json(const Json& j) {
  const int n = get_as<int>(require(j, "n"), "n");
  const Json& box = require(j, "box");
  Box b{doubles(require(box, "lo"), "box.lo"), doubles(require(box, "hi"), "box.hi")};
  const auto shape = get_as<std::vector<std::size_t>>(require(j, "shape"), "shape");
  GridFunction f(n, b, shape);
  const Json& values = require(j, "values");
  if (!values.is_array() || values.size() != f.node_count()) {
    throw DimensionMismatch("grid file holds " + std::to_string(values.is_array() ? values.size() : 0) +
                            " values for " + std::to_string(f.node_count()) + " nodes");
  }
  for (std::size_t i = 0; i < f.node_count(); ++i) {
    const std::vector<double> c = doubles(values[i], "values");
    if (c.size() == 1) {
      f.set_value(i, Multivector::scalar(n, c[0]));
    } else {
      f.set_value(i, Multivector(n, c));
    }
  }
  if (j.contains("boundary_band")) f.set_boundary_band(get_as<int>(j.at("boundary_band"), "boundary_band"));
  return f;
}

GridFunction read_grid_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open grid file '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const Json::exception& e) {
    throw InputError("grid file '" + path + "' is not valid JSON: " + e.what());
  }
  return grid_from_json(j);
}

void write_grid_file(const GridFunction& f, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write grid file '" + path + "'");
  out << to_json(f).dump() << '\n';
}

Json to_json(const ThresholdReport& r) {
  Json j{{"p_star", rational_to_json(r.p_star)},
         {"q_star", r.q_star ? rational_to_json(*r.q_star) : Json("inf")},
         {"w", rational_to_json(r.weight_exponent)},
         {"j", r.derivative_order},
         {"p_range", r.p_range()},
         {"q_range", r.q_range()},
         {"hilbert_viable", r.hilbert_viable}};
  if (!r.special_case.empty()) j["special_case"] = r.special_case;
  return j;
}

ThresholdReport threshold_from_json(const Json& j) {
  ThresholdReport r;
  r.p_star = rational_from_json(require(j, "p_star"));
  const Json& q = require(j, "q_star");
  if (!(q.is_string() && q.get<std::string>() == "inf")) r.q_star = rational_from_json(q);
  if (j.contains("w")) r.weight_exponent = rational_from_json(j.at("w"));
  if (j.contains("j")) r.derivative_order = get_as<int>(j.at("j"), "j");
  r.hilbert_viable = get_as<bool>(require(j, "hilbert_viable"), "hilbert_viable");
  if (j.contains("special_case")) r.special_case = get_as<std::string>(j.at("special_case"), "special_case");
  return r;
}

Json to_json(const ConvergenceReport& r) {
  Json j{{"converges", r.converges},
         {"determined", r.determined},
         {"divergence_end", std::string(to_string(r.divergence_end))},
         {"closed_form_used", r.closed_form_used},
         {"iterations", r.iterations},
         {"tail_exponent", double_to_json(r.tail_exponent)}};
  j["value"] = r.value ? double_to_json(*r.value) : Json(nullptr);
  if (r.numeric_estimate) j["numeric_estimate"] = double_to_json(*r.numeric_estimate);
  if (r.error_estimate) j["error_estimate"] = double_to_json(*r.error_estimate);
  return j;
}

Json to_json(const NormResult& r) {
  return Json{{"p", double_to_json(r.p)},
              {"k", r.derivative_order},
              {"w", double_to_json(r.weight_exponent)},
              {"value", double_to_json(r.value)},
              {"finite", std::isfinite(r.value)},
              {"method", std::string(to_string(r.method))},
              {"divergence_end", std::string(to_string(r.divergence_end))}};
}

Json to_json(const HolderResult& r) {
  return Json{{"lhs", double_to_json(r.lhs)}, {"rhs", double_to_json(r.rhs)}, {"holds", r.holds}};
}

Json to_json(const LimitScan& s) {
  Json rows = Json::array();
  for (const ScanRow& r : s.rows) {
    rows.push_back(Json{{"q", r.q},
                        {"p", r.p},
                        {"kernel_norm", double_to_json(r.kernel_norm)},
                        {"f_norm", double_to_json(r.f_norm)},
                        {"product", double_to_json(r.product)}});
  }
  Json j{{"rows", rows},
         {"limiting_value", double_to_json(s.limiting_value)},
         {"kernel_domain", to_json(s.kernel_domain)}};
  j["endpoint_value"] = s.endpoint_value ? double_to_json(*s.endpoint_value) : Json(nullptr);
  return j;
}

}  // namespace skl::io

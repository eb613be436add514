#include "skl/app.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "skl/errors.hpp"
#include "skl/transform.hpp"

namespace skl::app {

namespace {

// Looks up a nested key; nullptr when absent or null.
const Json* find(const Json& cfg, std::initializer_list<const char*> path) {
  const Json* cur = &cfg;
  for (const char* key : path) {
    if (!cur->is_object() || !cur->contains(key) || cur->at(key).is_null()) return nullptr;
    cur = &cur->at(key);
  }
  return cur;
}

double get_double(const Json& cfg, std::initializer_list<const char*> path, double fallback) {
  const Json* j = find(cfg, path);
  return j ? io::double_from_json(*j) : fallback;
}

int get_int(const Json& cfg, std::initializer_list<const char*> path, int fallback) {
  const Json* j = find(cfg, path);
  if (!j) return fallback;
  if (!j->is_number_integer()) throw InputError("expected an integer");
  return j->get<int>();
}

std::string get_string(const Json& cfg, std::initializer_list<const char*> path, const std::string& fallback) {
  const Json* j = find(cfg, path);
  if (!j) return fallback;
  if (!j->is_string()) throw InputError("expected a string");
  return j->get<std::string>();
}

bool get_bool(const Json& cfg, std::initializer_list<const char*> path) {
  const Json* j = find(cfg, path);
  return j && j->is_boolean() && j->get<bool>();
}

std::uint64_t get_seed(const Json& cfg) {
  const Json* j = find(cfg, {"numeric", "seed"});
  if (!j) return kDefaultSeed;
  if (!j->is_number_unsigned() && !j->is_number_integer()) throw InputError("seed must be an integer");
  return j->get<std::uint64_t>();
}

KernelSpec require_kernel(const Json& cfg) {
  const Json* k = find(cfg, {"kernel"});
  if (!k) throw InputError("this command needs a kernel");
  return io::kernel_from_json(*k);
}

WeightedMeasure measure_of_config(const Json& cfg) {
  const Json* m = find(cfg, {"measure"});
  return m ? io::measure_from_json(*m) : WeightedMeasure{};
}

Json record(Json& cfg, const char* section, const Json& value) {
  cfg[section] = value;
  return value;
}

std::size_t default_nodes(int n) {
  switch (n) {
    case 1: return 257;
    case 2: return 64;
    case 3: return 17;
    default: return 7;
  }
}

// A grid is either a file path or {"nodes", "half_width", "radius"} for the
// smooth bump. The resolved description is written back into the config.
GridFunction grid_of(Json& cfg, const char* key, int n) {
  Json* j = cfg.contains(key) ? &cfg[key] : nullptr;
  if (j && j->is_string()) return io::read_grid_file(j->get<std::string>());
  Json desc = j && j->is_object() ? *j : Json::object();
  if (!desc.contains("nodes")) desc["nodes"] = default_nodes(n);
  if (!desc.contains("half_width")) desc["half_width"] = 1.25;
  if (!desc.contains("radius")) desc["radius"] = 1.0;
  cfg[key] = desc;
  return smooth_bump(n, desc["nodes"].get<std::size_t>(), io::double_from_json(desc["half_width"]),
                     io::double_from_json(desc["radius"]));
}

// Sum of three Gaussian blobs on seeded random blades.
GridFunction random_smooth(const GridFunction& lattice, std::uint64_t seed) {
  const int n = lattice.dimension();
  const unsigned blades = 1u << n;
  struct Blob {
    std::vector<double> c;
    double s, a;
    unsigned mask;
  };
  std::vector<Blob> blobs;
  for (std::uint64_t m = 0; m < 3; ++m) {
    Blob b;
    for (int j = 0; j < n; ++j) {
      const double u = counter_uniform(seed, m, 10 + j);
      b.c.push_back(lattice.box().lo[j] + u * (lattice.box().hi[j] - lattice.box().lo[j]));
    }
    b.s = 0.2 + 0.6 * counter_uniform(seed, m, 1);
    b.a = -2.0 + 4.0 * counter_uniform(seed, m, 2);
    b.mask = static_cast<unsigned>(counter_uniform(seed, m, 3) * blades) % blades;
    blobs.push_back(b);
  }
  return GridFunction::sample(n, lattice.box(), lattice.shape(), [&](std::span<const double> x) {
    Multivector v(n);
    for (const Blob& b : blobs) {
      double r2 = 0.0;
      for (int j = 0; j < n; ++j) r2 += (x[j] - b.c[j]) * (x[j] - b.c[j]);
      v = v + Multivector::blade(n, b.mask, b.a * std::exp(-r2 / (b.s * b.s)));
    }
    return v;
  });
}

// Kernel on the lattice, zero outside r_in < |x| < r_out.
GridFunction sample_kernel(const KernelSpec& spec, const GridFunction& lattice, const RadialDomain& domain) {
  const double r_out = domain.outer_radius();
  return GridFunction::sample(spec.n, lattice.box(), lattice.shape(), [&](std::span<const double> x) {
    double r2 = 0.0;
    for (double v : x) r2 += v * v;
    const double r = std::sqrt(r2);
    if (r <= domain.r_in || r >= r_out) return Multivector(spec.n);
    return evaluate(spec, x);
  });
}

RadialDomain domain_of(Json& cfg, int n, const RadialDomain& fallback) {
  if (const Json* d = find(cfg, {"domain"})) return io::domain_from_json(*d, n);
  record(cfg, "domain", io::to_json(fallback));
  return fallback;
}

struct Result {
  Json value = Json::object();
  int status = kOk;
  std::string csv;
  std::vector<std::string> lines;
};

std::string flatten_csv(const Json& result) {
  std::ostringstream out;
  out << "key,value\n";
  std::function<void(const std::string&, const Json&)> walk = [&](const std::string& prefix, const Json& j) {
    if (j.is_object()) {
      for (auto it = j.begin(); it != j.end(); ++it) {
        walk(prefix.empty() ? it.key() : prefix + "." + it.key(), it.value());
      }
    } else if (j.is_number_float()) {
      out << prefix << ',' << io::format_double(j.get<double>()) << '\n';
    } else if (!j.is_array()) {
      out << prefix << ',' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
    }
  };
  walk("", result);
  return out.str();
}

// --- commands -------------------------------------------------------------

Result cmd_classify(Json& cfg) {
  const KernelSpec spec = require_kernel(cfg);
  const WeightedMeasure m = measure_of_config(cfg);
  Result r;
  r.value = {{"kernel", io::to_json(spec)},
             {"h", to_string(homogeneity_degree(spec))},
             {"w", to_string(m.weight_exponent)},
             {"n", spec.n},
             {"class", std::string(to_string(classify(spec, m.weight_exponent)))}};
  return r;
}

Result cmd_threshold(Json& cfg) {
  Result r;
  ThresholdReport rep;
  const WeightedMeasure m = measure_of_config(cfg);
  const int j = get_int(cfg, {"j"}, 0);
  const ThresholdEnd end = parse_threshold_end(get_string(cfg, {"end"}, "at_infinity"));
  if (get_bool(cfg, {"third_iterate"})) {
    // Outside the l < n family, so the kernel is not constructed.
    const Json* k = find(cfg, {"kernel"});
    if (k && !(get_string(*k, {"family"}, "") == "dirac_iterate" && get_int(*k, {"n"}, 3) == 3 &&
               get_int(*k, {"l"}, 3) == 3)) {
      throw InputError("third_iterate applies to dirac_iterate with n = 3, l = 3 only");
    }
    rep = third_iterate_in_three_dimensions();
  } else {
    const KernelSpec spec = require_kernel(cfg);
    rep = threshold_report(spec, m.weight_exponent, j);
  }
  r.value = io::to_json(rep);
  r.value["end"] = std::string(to_string(end));
  if (end == ThresholdEnd::AtOrigin) r.value["p_range"] = "(0," + to_string(rep.p_star) + ")";
  if (const Json* t = find(cfg, {"target_q"})) {
    const Rational q = io::rational_from_json(*t);
    r.value["target_q"] = to_string(q);
    r.value["viable"] = viability(rep, q).viable;
  }
  return r;
}

Result cmd_cpv(Json& cfg) {
  const KernelSpec spec = require_kernel(cfg);
  const WeightedMeasure m = measure_of_config(cfg);
  std::vector<double> schedule = default_cpv_schedule();
  if (const Json* s = find(cfg, {"numeric", "schedule"})) {
    schedule.clear();
    for (const Json& v : *s) schedule.push_back(io::double_from_json(v));
    if (schedule.empty()) throw InputError("c.p.v. schedule is empty");
  } else {
    cfg["numeric"]["schedule"] = schedule;
  }
  // Only the outer radius matters; r_in records the smallest puncture.
  const double eps_min = schedule.back();
  const RadialDomain domain = domain_of(
      cfg, spec.n,
      spec.n == 1 ? RadialDomain::interval(eps_min, 1.0) : RadialDomain::punctured_ball(spec.n, eps_min, 1.0));
  CpvOptions opts;
  opts.tolerance = get_double(cfg, {"numeric", "tolerance"}, 1e-6);
  const double r_out = domain.numeric_outer_radius();
  std::vector<double> values;
  const ConvergenceReport rep = cpv_limit(
      [&](double eps) {
        const double v = punctured_ball_integral(spec, m, eps, r_out);
        values.push_back(v);
        return v;
      },
      schedule, opts);

  Result r;
  r.value = io::to_json(rep);
  r.value["limit"] = rep.value ? io::double_to_json(*rep.value) : Json(nullptr);
  r.value["converged"] = rep.converges && rep.determined;
  Json table = Json::array();
  for (std::size_t i = 0; i < values.size(); ++i) table.push_back({{"eps", schedule[i]}, {"value", values[i]}});
  r.value["schedule"] = table;
  std::ostringstream csv;
  csv << "eps,value\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    csv << io::format_double(schedule[i]) << ',' << io::format_double(values[i]) << '\n';
  }
  r.csv = csv.str();
  if (!rep.converges) {
    r.status = kDiverged;
  } else if (!rep.determined) {
    r.status = kUndetermined;
  }
  return r;
}

Result cmd_norm(Json& cfg) {
  const WeightedMeasure m = measure_of_config(cfg);
  const Json* pj = find(cfg, {"p"});
  if (!pj) throw InputError("norm needs p");
  const double p = io::double_from_json(*pj);
  const int k = get_int(cfg, {"k"}, 0);
  Result r;
  if (find(cfg, {"grid"})) {
    const GridFunction f = grid_of(cfg, "grid", get_int(cfg, {"kernel", "n"}, 2));
    r.value = io::to_json(grid_norm(f, p, k, m));
    return r;
  }
  const KernelSpec spec = require_kernel(cfg);
  if (k != 0) throw InputError("kernel norms are closed-form at k = 0 only; use threshold --j for derivative orders");
  const RadialDomain domain = domain_of(cfg, spec.n, RadialDomain::exterior(spec.n, 1.0));
  const NormResult nr = kernel_lp_norm(spec, p, m, domain);
  r.value = io::to_json(nr);
  r.value["domain"] = io::to_json(domain);
  const int samples = get_int(cfg, {"numeric", "samples"}, 0);
  if (samples > 0) {
    const std::uint64_t seed = get_seed(cfg);
    const MonteCarloEstimate mc = numeric_lp_integral(spec, p, m, domain, samples, seed);
    const ConvergenceReport exact = kernel_power_integral(spec, p, m, domain);
    r.value["monte_carlo"] = {{"integral", mc.value},
                              {"standard_error", mc.standard_error},
                              {"samples", mc.samples},
                              {"closed_form_integral", exact.value ? io::double_to_json(*exact.value)
                                                                   : io::double_to_json(INFINITY)}};
  }
  if (!std::isfinite(nr.value)) r.status = kDiverged;
  return r;
}

Result cmd_holder(Json& cfg) {
  const WeightedMeasure m = measure_of_config(cfg);
  const Json* pj = find(cfg, {"p"});
  if (!pj) throw InputError("holder needs p");
  const double p = io::double_from_json(*pj);
  double q;
  if (const Json* qj = find(cfg, {"q"})) {
    q = io::double_from_json(*qj);
  } else {
    q = p / (p - 1.0);
    cfg["q"] = q;
  }
  const std::uint64_t seed = get_seed(cfg);
  const int n = find(cfg, {"kernel"}) ? get_int(cfg, {"kernel", "n"}, 2) : get_int(cfg, {"n"}, 2);

  std::optional<GridFunction> g;
  if (find(cfg, {"g"})) g = grid_of(cfg, "g", n);
  GridFunction f = [&] {
    if (find(cfg, {"f"})) return grid_of(cfg, "f", n);
    GridFunction base = g ? *g : grid_of(cfg, "lattice", n);
    return random_smooth(base, seed);
  }();
  if (!g) {
    const KernelSpec spec = require_kernel(cfg);
    const RadialDomain domain = domain_of(cfg, spec.n, RadialDomain::punctured_ball(spec.n, 0.1, 100.0));
    g = sample_kernel(spec, f, domain);
  }
  Result r;
  r.value = io::to_json(holder_check(*g, f, p, q, m));
  r.value["p"] = p;
  r.value["q"] = q;
  return r;
}

Result cmd_scan(Json& cfg) {
  const KernelSpec spec = require_kernel(cfg);
  const WeightedMeasure m = measure_of_config(cfg);
  const GridFunction f = grid_of(cfg, "grid", spec.n);
  Rational q_star;
  if (const Json* qs = find(cfg, {"q_star"})) {
    q_star = io::rational_from_json(*qs);
  } else {
    const ThresholdReport rep = threshold_report(spec, m.weight_exponent);
    if (!rep.q_star) throw InputError("conjugate range is unbounded; give q_star explicitly");
    q_star = *rep.q_star;
    cfg["q_star"] = to_string(q_star);
  }
  const int steps = get_int(cfg, {"steps"}, 12);
  std::optional<RadialDomain> domain;
  if (const Json* d = find(cfg, {"domain"})) domain = io::domain_from_json(*d, spec.n);
  const double puncture = get_double(cfg, {"numeric", "puncture"}, 0.1);
  const LimitScan scan = norm_limit_scan(spec, f, m, q_star, steps, domain, puncture);

  Result r;
  r.value = io::to_json(scan);
  r.value["q_star"] = to_string(q_star);
  std::ostringstream csv;
  csv << "q,p,kernel_norm,f_norm,product\n";
  for (const ScanRow& row : scan.rows) {
    csv << io::format_double(row.q) << ',' << io::format_double(row.p) << ',' << io::format_double(row.kernel_norm)
        << ',' << io::format_double(row.f_norm) << ',' << io::format_double(row.product) << '\n';
  }
  r.csv = csv.str();
  if (!std::isfinite(scan.limiting_value)) r.status = kDiverged;
  return r;
}

Result cmd_teodorescu(Json& cfg) {
  const KernelSpec spec = require_kernel(cfg);
  const WeightedMeasure m = measure_of_config(cfg);
  const GridFunction psi = grid_of(cfg, "grid", spec.n);
  ConvolutionPlan plan{spec};
  plan.refinement = get_int(cfg, {"numeric", "refine"}, 8);
  plan.near_field_cells = get_int(cfg, {"numeric", "near_field"}, 0);
  plan.puncture = parse_puncture_handling(get_string(cfg, {"numeric", "puncture_handling"}, "subgrid_refine"));
  plan.weight_exponent = m.weight_exponent;
  cfg["numeric"]["refine"] = plan.refinement;

  Result r;
  if (const Json* qj = find(cfg, {"q"})) {
    const MappingProbe probe = mapping_property_probe(psi, plan, io::rational_from_json(*qj));
    r.value = {{"q", to_string(probe.q)},
               {"thresholds", io::to_json(probe.thresholds)},
               {"psi_k0", io::to_json(probe.psi_k0)},
               {"psi_k1", io::to_json(probe.psi_k1)},
               {"phi_k0", io::to_json(probe.phi_k0)},
               {"phi_k1", io::to_json(probe.phi_k1)},
               {"all_finite", probe.all_finite},
               {"truncation_radius", probe.truncation_radius}};
    r.value["residual"] = probe.residual ? Json(*probe.residual) : Json(nullptr);
    if (!probe.all_finite) r.status = kDiverged;
  } else {
    const GridFunction phi = teodorescu(psi, plan);
    double r2 = 0.0;
    for (int j = 0; j < psi.dimension(); ++j) {
      const double a = std::max(std::abs(psi.box().lo[j]), std::abs(psi.box().hi[j]));
      r2 += a * a;
    }
    r.value = {{"nodes", psi.node_count()}, {"truncation_radius", std::sqrt(r2)}};
    r.value["residual"] = spec.family == KernelFamily::Cauchy ? Json(left_inverse_residual(psi, phi)) : Json(nullptr);
    if (const Json* out = find(cfg, {"phi_out"})) io::write_grid_file(phi, out->get<std::string>());
  }
  return r;
}

// --- verify-all -------------------------------------------------------------

struct Instance {
  std::string name;
  KernelSpec spec;
  Rational w{0};
  Rational expected_p;
  std::optional<Rational> expected_q;
};

std::vector<Instance> sweep() {
  std::vector<Instance> out;
  for (int n = 2; n <= 8; ++n) {
    out.push_back({"cauchy n=" + std::to_string(n), KernelSpec::cauchy(n), Rational(0), Rational(n, n - 1),
                   Rational(n)});
  }
  for (int n = 1; n <= 8; ++n) {
    out.push_back({"laplace_iterate n=" + std::to_string(n), KernelSpec::laplace_iterate(n), Rational(0),
                   Rational(n, n + 2), std::nullopt});
  }
  for (int eps : {1, 2, 4}) {
    for (int n : {2, 3}) {
      out.push_back({"laplace_iterate n=" + std::to_string(n) + " w=2+" + std::to_string(eps),
                     KernelSpec::laplace_iterate(n), Rational(2 + eps), Rational(1) + Rational(eps, n + 2),
                     Rational(1) + Rational(n + 2, eps)});
    }
  }
  for (int n = 2; n <= 8; ++n) {
    for (int l = 1; l < n; ++l) {
      const bool odd = l % 2 == 1;
      out.push_back({"dirac_iterate n=" + std::to_string(n) + " l=" + std::to_string(l),
                     KernelSpec::dirac_iterate(n, l), Rational(0),
                     odd ? Rational(n, n - l) : Rational(n, n + 1 - l),
                     odd ? Rational(n, l) : Rational(n, l - 1)});
    }
  }
  return out;
}

Result cmd_verify_all(Json& cfg) {
  const double delta = get_double(cfg, {"numeric", "delta"}, 0.1);
  cfg["numeric"]["delta"] = delta;
  Result r;
  Json rows = Json::array();
  std::ostringstream csv;
  csv << "instance,status\n";
  bool all = true;
  auto emit = [&](const std::string& name, bool ok, const std::string& detail) {
    all = all && ok;
    r.lines.push_back((ok ? "PASS " : "FAIL ") + name + (detail.empty() ? "" : "  " + detail));
    rows.push_back({{"instance", name}, {"pass", ok}, {"detail", detail}});
    csv << name << ',' << (ok ? "PASS" : "FAIL") << '\n';
  };

  for (const Instance& inst : sweep()) {
    const ThresholdReport rep = threshold_report(inst.spec, inst.w);
    const bool exact = rep.p_star == inst.expected_p && rep.q_star == inst.expected_q;
    const ThresholdWitness wit = verify_threshold_numerically(inst.spec, inst.w, delta);
    std::string detail = "p*=" + to_string(rep.p_star) + " q*=" + (rep.q_star ? to_string(*rep.q_star) : "inf") +
                         (wit.passed ? " finite/divergent" : " witness failed");
    emit(inst.name, exact && wit.passed, detail);
  }

  emit("viability cauchy n=2 q=2", !viability(KernelSpec::cauchy(2), Rational(0), Rational(2)).viable, "");
  emit("viability cauchy n=3 q=2", viability(KernelSpec::cauchy(3), Rational(0), Rational(2)).viable, "");
  {
    const ThresholdReport third = third_iterate_in_three_dimensions();
    emit("viability dirac_iterate n=3 l=3 q=2",
         !viability(third, Rational(2)).viable && third.q_range() == "(1,3/2)", third.q_range());
  }

  for (int k = 1; k <= 9; ++k) {
    const double alpha = 0.1 * k;
    const KernelSpec spec = KernelSpec::power_model(alpha);
    const ConvergenceReport rep = cpv_limit(
        [&](double eps) { return punctured_ball_integral(spec, {}, eps, 1.0); }, default_cpv_schedule());
    const double expected = 2.0 / (1.0 - alpha);
    const bool ok = rep.converges && rep.determined && std::abs(*rep.value - expected) <= 1e-6;
    emit("cpv alpha=" + io::format_double(alpha).substr(0, 3), ok,
         "limit=" + (rep.value ? io::format_double(*rep.value) : std::string("none")));
  }
  for (double alpha : {1.0, 1.5}) {
    const KernelSpec spec = KernelSpec::power_model(alpha);
    const ConvergenceReport rep = cpv_limit(
        [&](double eps) { return punctured_ball_integral(spec, {}, eps, 1.0); }, default_cpv_schedule());
    emit("cpv alpha=" + io::format_double(alpha), !rep.converges, "divergent");
  }

  r.value = {{"instances", rows}, {"all_pass", all}};
  r.csv = csv.str();
  if (!all) r.status = kCheckFailed;
  return r;
}

const std::map<std::string, std::function<Result(Json&)>>& table() {
  static const std::map<std::string, std::function<Result(Json&)>> t = {
      {"classify", cmd_classify}, {"threshold", cmd_threshold},   {"cpv", cmd_cpv},
      {"norm", cmd_norm},         {"holder", cmd_holder},         {"scan", cmd_scan},
      {"teodorescu", cmd_teodorescu}, {"verify-all", cmd_verify_all}};
  return t;
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"classify", "threshold", "cpv",        "norm",
                                                 "holder",   "scan",      "teodorescu", "verify-all"};
  return names;
}

std::string csv_help() {
  return "CSV columns:\n"
         "  scan        q,p,kernel_norm,f_norm,product\n"
         "  cpv         eps,value\n"
         "  verify-all  instance,status\n"
         "  others      key,value (result fields, nested keys joined by '.')\n";
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

RunOutcome run(const Json& config) {
  const auto start = std::chrono::steady_clock::now();
  RunOutcome out;
  Json cfg = config.is_object() ? config : Json::object();
  const std::string command = cfg.value("command", std::string());
  Result result;
  try {
    if (!config.is_object()) throw InputError("config must be a JSON object");
    const auto it = table().find(command);
    if (it == table().end()) throw InputError("unknown command '" + command + "'");
    if (!cfg.contains("numeric") || !cfg["numeric"].is_object()) cfg["numeric"] = Json::object();
    cfg["numeric"]["seed"] = get_seed(cfg);
    result = it->second(cfg);
  } catch (const InadmissibleExponent& e) {
    result = Result{};
    result.status = kInvalid;
    result.value = {{"error", e.what()}, {"thresholds", io::to_json(e.report())}};
  } catch (const std::invalid_argument& e) {
    result = Result{};
    result.status = kInvalid;
    result.value = {{"error", e.what()}};
  } catch (const std::domain_error& e) {
    result = Result{};
    result.status = kInvalid;
    result.value = {{"error", e.what()}};
  } catch (const Json::exception& e) {
    result = Result{};
    result.status = kInvalid;
    result.value = {{"error", std::string("malformed config: ") + e.what()}};
  }
  const double ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  std::uint64_t seed = kDefaultSeed;
  if (const Json* s = find(cfg, {"numeric", "seed"}); s && s->is_number_unsigned()) seed = s->get<std::uint64_t>();
  out.status = result.status;
  out.report = {{"command", command}, {"config", cfg}, {"seed", seed}, {"result", result.value}, {"runtime_ms", ms}};
  out.csv = result.csv.empty() ? flatten_csv(result.value) : result.csv;
  out.lines = std::move(result.lines);
  return out;
}

}  // namespace skl::app

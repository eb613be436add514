#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "skl/app.hpp"
#include "skl/errors.hpp"

namespace {

using skl::app::Json;

enum class Kind { Str, Int, Num, Bool };

// Every flag writes exactly one config key.
struct Flag {
  const char* name;
  std::vector<const char*> path;
  Kind kind;
  const char* help;
  std::string text;
  bool set = false;
};

Json convert(const Flag& f) {
  switch (f.kind) {
    case Kind::Int:
      return std::stoll(f.text);
    case Kind::Num:
      // Rationals stay strings so they are read exactly.
      if (f.text.find('/') != std::string::npos) return f.text;
      return std::stod(f.text);
    case Kind::Bool:
      return true;
    case Kind::Str:
      break;
  }
  return f.text;
}

void assign(Json& cfg, const Flag& f) {
  Json* cur = &cfg;
  for (std::size_t i = 0; i + 1 < f.path.size(); ++i) {
    if (!cur->contains(f.path[i]) || !(*cur)[f.path[i]].is_object()) (*cur)[f.path[i]] = Json::object();
    cur = &(*cur)[f.path[i]];
  }
  (*cur)[f.path.back()] = convert(f);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Singular kernel laboratory: thresholds, principal values, norms and transforms"};
  std::string command, config_path, replay_path;
  std::string command_list;
  for (const auto& c : skl::app::command_names()) command_list += (command_list.empty() ? "" : " | ") + c;
  cli.add_option("command", command, command_list);
  cli.add_option("--config", config_path, "JSON config file; flags override its keys")->check(CLI::ExistingFile);
  cli.add_option("--replay", replay_path, "re-run the config stored in a JSON report")->check(CLI::ExistingFile);

  std::vector<Flag> flags = {
      {"--family", {"kernel", "family"}, Kind::Str, "power_model | cauchy | laplace_iterate | dirac_iterate"},
      {"--n", {"kernel", "n"}, Kind::Int, "dimension"},
      {"--l", {"kernel", "l"}, Kind::Int, "iterate order (dirac_iterate)"},
      {"--alpha", {"kernel", "alpha"}, Kind::Num, "exponent (power_model)"},
      {"--theta", {"kernel", "theta"}, Kind::Num, "normalising constant (dirac_iterate)"},
      {"--w", {"measure", "w"}, Kind::Str, "weight exponent, e.g. 3 or 7/2"},
      {"--domain", {"domain", "kind"}, Kind::Str, "interval | annulus | punctured_ball | exterior"},
      {"--r-in", {"domain", "r_in"}, Kind::Num, "inner radius"},
      {"--r-out", {"domain", "r_out"}, Kind::Num, "outer radius"},
      {"--truncation-radius", {"domain", "truncation_radius"}, Kind::Num, "cut for numeric exterior integrals"},
      {"--seed", {"numeric", "seed"}, Kind::Int, "RNG seed (default 24301)"},
      {"--samples", {"numeric", "samples"}, Kind::Int, "Monte Carlo samples (norm)"},
      {"--delta", {"numeric", "delta"}, Kind::Num, "threshold offset (verify-all)"},
      {"--refine", {"numeric", "refine"}, Kind::Int, "self-cell subgrid factor (teodorescu)"},
      {"--near-field", {"numeric", "near_field"}, Kind::Int, "extra refined cells around the target"},
      {"--puncture-handling", {"numeric", "puncture_handling"}, Kind::Str, "subgrid_refine | cell_exclude"},
      {"--puncture", {"numeric", "puncture"}, Kind::Num, "inner radius of the scan's kernel domain"},
      {"--tolerance", {"numeric", "tolerance"}, Kind::Num, "c.p.v. extrapolation tolerance"},
      {"--format", {"output", "format"}, Kind::Str, "json | csv"},
      {"--output", {"output", "path"}, Kind::Str, "report path (default stdout)"},
      {"--p", {"p"}, Kind::Num, "kernel exponent"},
      {"--q", {"q"}, Kind::Str, "density exponent"},
      {"--k", {"k"}, Kind::Int, "derivative order of grid norms"},
      {"--j", {"j"}, Kind::Int, "derivative order of thresholds"},
      {"--end", {"end"}, Kind::Str, "at_infinity | at_origin"},
      {"--target-q", {"target_q"}, Kind::Str, "q to test for viability"},
      {"--third-iterate", {"third_iterate"}, Kind::Bool, "fixed report for dirac_iterate n=3 l=3"},
      {"--q-star", {"q_star"}, Kind::Str, "scan endpoint"},
      {"--steps", {"steps"}, Kind::Int, "scan rows"},
      {"--grid", {"grid"}, Kind::Str, "grid function file"},
      {"--f", {"f"}, Kind::Str, "density grid file (holder)"},
      {"--g", {"g"}, Kind::Str, "kernel grid file (holder)"},
      {"--phi-out", {"phi_out"}, Kind::Str, "write the transform to this grid file"},
  };
  for (Flag& f : flags) {
    if (f.kind == Kind::Bool) {
      cli.add_flag_callback(f.name, [&f] { f.set = true; }, f.help);
    } else {
      cli.add_option_function<std::string>(
          f.name,
          [&f](const std::string& v) {
            f.text = v;
            f.set = true;
          },
          f.help);
    }
  }
  cli.footer(std::string("Exit status: 0 ok, 1 verify-all failure, 2 invalid input, 3 divergent result, "
                         "4 undetermined.\nSKL_THREADS caps worker threads; SKL_SIMD forces scalar|avx2|neon.\n") +
             skl::app::csv_help());
  CLI11_PARSE(cli, argc, argv);

  Json cfg = Json::object();
  try {
    if (!replay_path.empty()) {
      const Json report = skl::app::load_json_file(replay_path);
      if (!report.contains("config")) throw skl::InputError("report has no config");
      cfg = report.at("config");
    } else if (!config_path.empty()) {
      cfg = skl::app::load_json_file(config_path);
    }
    for (const Flag& f : flags) {
      if (f.set) assign(cfg, f);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return skl::app::kInvalid;
  }
  if (!command.empty()) cfg["command"] = command;

  const skl::app::RunOutcome out = skl::app::run(cfg);
  for (const std::string& line : out.lines) std::cout << line << '\n';

  const Json* output = out.report["config"].contains("output") ? &out.report["config"]["output"] : nullptr;
  const std::string format = output ? output->value("format", std::string("json")) : "json";
  const std::string path = output ? output->value("path", std::string()) : "";
  const std::string body = format == "csv" ? out.csv : out.report.dump(2) + "\n";
  if (!path.empty()) {
    std::ofstream file(path);
    if (!file) {
      std::cerr << "error: cannot write '" << path << "'\n";
      return skl::app::kInvalid;
    }
    file << body;
  } else if (out.lines.empty()) {
    std::cout << body;
  }
  if (out.status == skl::app::kInvalid && out.report["result"].contains("error")) {
    std::cerr << "error: " << out.report["result"]["error"].get<std::string>() << '\n';
  }
  return out.status;
}

#pragma once

#include <string>
#include <vector>

#include "skl/io.hpp"

namespace skl::app {

using Json = io::Json;

enum Status : int {
  kOk = 0,
  kCheckFailed = 1,  // verify-all found a failing instance
  kInvalid = 2,
  kDiverged = 3,
  kUndetermined = 4,
};

/// Outcome of one command. `report` is the published JSON document
/// {"command", "config", "seed", "result", "runtime_ms"}; `config` inside it
/// is the resolved config (defaults filled in), so feeding it back through
/// run() repeats the computation exactly.
struct RunOutcome {
  int status = kOk;
  Json report;
  std::string csv;
  /// Human-readable lines (verify-all prints one per instance).
  std::vector<std::string> lines;
};

/// Config keys:
///   command                       classify | threshold | cpv | norm | holder | scan | teodorescu | verify-all
///   kernel {family, n, l, alpha, theta}
///   measure {w}
///   domain {kind, r_in, r_out, truncation_radius}
///   numeric {seed, samples, delta, refine, near_field, puncture_handling, puncture, tolerance, schedule}
///   output {format, path}
///   p, q, k, j, end, target_q, third_iterate, q_star, steps
///   grid / f / g                  grid file path, or {"nodes", "half_width", "radius"} for a bump
///   phi_out                       where teodorescu writes the transform
RunOutcome run(const Json& config);

const std::vector<std::string>& command_names();

/// CSV columns per command, for --help.
std::string csv_help();

Json load_json_file(const std::string& path);

}  // namespace skl::app

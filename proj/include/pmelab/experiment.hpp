#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "pmelab/regularity.hpp"
#include "pmelab/solver.hpp"

namespace pmelab {

/** FNV-1a 64 of the canonical (sorted-key) dump; identifies a config in
 *  every report this tool writes. */
std::uint64_t config_hash(const nlohmann::json& config);
std::string config_hash_hex(const nlohmann::json& config);

/** Experiment description, parsed from JSON.  See docs in README for the
 *  schema; parse_experiment throws std::domain_error with a field-specific
 *  message on invalid input.
 */
struct ExperimentConfig {
  double m = 2.0;
  Grid grid;
  std::string initial_kind = "barenblatt";
  nlohmann::json initial_params;
  std::string source_kind = "none";
  nlohmann::json source_params;
  std::string boundary = "dirichlet0";
  bool has_pq = false;
  double p = 2.0;
  double q = 2.0;
  double alpha = 0.6;
  int auto_probes = 0;
  std::uint64_t seed = 1;
  std::vector<ZeroPoint> probe_points;
  double tol_zero = -1.0;
  double radii_min = 0.0;  // 0 = auto (relative to domain)
  double radii_max = 0.0;
  int radii_count = 8;
  int cascade_levels = 0;
  double cascade_rho = 0.0;  // 0 = derive from measured constants
  bool two_sided_time = true;
  std::string out_prefix = "pmelab_run";
  nlohmann::json raw;
};

ExperimentConfig parse_experiment(const nlohmann::json& config);

/** Build the initial/source/boundary callables described by the config. */
PMEProblem build_problem(const ExperimentConfig& cfg);

/** Solve, probe, and write the artifact set:
 *    <out>_solution.pmes, <out>_report.json, <out>_probe<k>.csv/.svg.
 *  Returns the report (identical to the file contents).  Reruns of the same
 *  config write byte-identical outputs.
 */
nlohmann::json run_experiment(const ExperimentConfig& cfg);

/** The probing stage alone, applied to an existing field: zero set, exponent
 *  fits, cascades, and the per-probe CSV/SVG files.  Used by run_experiment
 *  and by the CLI's regularity subcommand.
 */
nlohmann::json probe_report(const Field& u, const ExperimentConfig& cfg);

nlohmann::json to_json(const ExponentReport& rep);
nlohmann::json to_json(const CascadeReport& rep);

}  // namespace pmelab

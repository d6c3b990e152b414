#pragma once

// Run configuration: a flat YAML mapping of scalar (or flow-list) values.
// Unknown keys and malformed values are rejected with the offending line
// and field.

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fracrd/krylov.hpp"
#include "fracrd/scheme.hpp"

namespace fracrd::cli {

enum class OutputFormat { Csv, Markdown };
enum class ConvergenceMode { Time, Space };

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, std::optional<int> line, const std::string& what);
  const std::string& field() const noexcept { return field_; }
  std::optional<int> line() const noexcept { return line_; }

 private:
  std::string field_;
  std::optional<int> line_;
};

struct RunConfig {
  // problem
  std::string problem = "fisher";  // fisher | manufactured
  std::vector<double> alpha;       // empty: per-command default
  std::vector<double> beta;
  ManufacturedParams params;

  // discretisation
  std::optional<int> steps;  // M
  std::optional<int> grid;   // N = N_x + 1 subdivisions per side

  // solver
  SolverConfig solver;
  std::vector<PreconditionerKind> kinds;  // empty: per-command default

  // convergence
  ConvergenceMode mode = ConvergenceMode::Time;
  std::optional<int> start_grid;
  int levels = 3;
  int space_steps = 10000;

  // spectra
  std::vector<int> sizes;  // per-side grid sizes; empty: default
  double bound_lo = 3.0 / 8.0;
  double bound_hi = 2.0;
  std::vector<int> lemma_sizes;
  std::vector<double> lemma_gammas;
  int dense_cap = static_cast<int>(kDefaultDenseCap);

  // bench
  std::vector<int> bench_steps;
  std::vector<int> bench_grids;

  // output
  OutputFormat format = OutputFormat::Csv;
  std::string output;  // empty: stdout
};

/// Parses `text` as a configuration document; `source` names it in errors.
RunConfig parse_config(std::string_view text, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

/// Keys accepted by parse_config, in documentation order.
const std::vector<std::string_view>& known_keys();

/// Problem described by the configuration for one (alpha, beta) pair.
ProblemSpec make_problem(const RunConfig& cfg, double alpha, double beta);

}  // namespace fracrd::cli

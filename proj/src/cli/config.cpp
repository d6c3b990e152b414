#include "fracrd/cli/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace fracrd::cli {

namespace {

std::string describe(const std::string& field, std::optional<int> line, const std::string& what) {
  std::ostringstream os;
  if (line) os << "line " << *line << ": ";
  os << "field '" << field << "': " << what;
  return os.str();
}

int line_of(const YAML::Node& node) { return node.Mark().line + 1; }

template <class T>
T scalar(const YAML::Node& node, const std::string& key) {
  if (!node.IsScalar()) throw ConfigError(key, line_of(node), "expected a scalar value");
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(key, line_of(node), "malformed value '" + node.Scalar() + "'");
  }
}

template <class T>
std::vector<T> list(const YAML::Node& node, const std::string& key) {
  std::vector<T> out;
  if (node.IsSequence()) {
    for (const auto& item : node) out.push_back(scalar<T>(item, key));
  } else {
    out.push_back(scalar<T>(node, key));
  }
  if (out.empty()) throw ConfigError(key, line_of(node), "list must not be empty");
  return out;
}

double finite(const YAML::Node& node, const std::string& key) {
  const double v = scalar<double>(node, key);
  if (!std::isfinite(v)) throw ConfigError(key, line_of(node), "value must be finite");
  return v;
}

double positive(const YAML::Node& node, const std::string& key) {
  const double v = finite(node, key);
  if (!(v > 0.0)) throw ConfigError(key, line_of(node), "value must be positive");
  return v;
}

int at_least(const YAML::Node& node, const std::string& key, int lo) {
  const int v = scalar<int>(node, key);
  if (v < lo) throw ConfigError(key, line_of(node), "value must be at least " + std::to_string(lo));
  return v;
}

std::vector<double> orders(const YAML::Node& node, const std::string& key) {
  auto v = list<double>(node, key);
  for (double g : v) {
    if (!(g > 1.0 && g < 2.0)) throw ConfigError(key, line_of(node), "fractional order must lie in (1, 2)");
  }
  return v;
}

std::vector<int> counts(const YAML::Node& node, const std::string& key, int lo) {
  auto v = list<int>(node, key);
  for (int n : v) {
    if (n < lo) throw ConfigError(key, line_of(node), "values must be at least " + std::to_string(lo));
  }
  return v;
}

using Handler = std::function<void(RunConfig&, const YAML::Node&, const std::string&)>;

const std::vector<std::pair<std::string_view, Handler>>& handlers() {
  static const std::vector<std::pair<std::string_view, Handler>> table = {
      {"problem",
       [](RunConfig& c, const YAML::Node& n, const std::string& k) {
         c.problem = scalar<std::string>(n, k);
         if (c.problem != "fisher" && c.problem != "manufactured") {
           throw ConfigError(k, line_of(n), "unknown problem '" + c.problem + "' (fisher|manufactured)");
         }
       }},
      {"alpha", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.alpha = orders(n, k); }},
      {"beta", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.beta = orders(n, k); }},
      {"k_alpha", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.params.k_alpha = positive(n, k); }},
      {"k_beta", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.params.k_beta = positive(n, k); }},
      {"final_time",
       [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.params.final_time = positive(n, k); }},
      {"rho", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.params.rho = finite(n, k); }},
      {"power", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.params.power = at_least(n, k, 1); }},
      {"x_left", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.params.x_left = finite(n, k); }},
      {"x_right", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.params.x_right = finite(n, k); }},
      {"y_down", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.params.y_down = finite(n, k); }},
      {"y_up", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.params.y_up = finite(n, k); }},
      {"steps", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.steps = at_least(n, k, 1); }},
      {"grid", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.grid = at_least(n, k, 2); }},
      {"preconditioner",
       [](RunConfig& c, const YAML::Node& n, const std::string& k) {
         c.kinds.clear();
         for (const auto& name : list<std::string>(n, k)) {
           const auto kind = parse_preconditioner_kind(name);
           if (!kind) throw ConfigError(k, line_of(n), "unknown preconditioner '" + name + "'");
           c.kinds.push_back(*kind);
         }
       }},
      {"tolerance",
       [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.solver.tolerance = positive(n, k); }},
      {"max_iterations",
       [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.solver.max_iterations = at_least(n, k, 1); }},
      {"mode",
       [](RunConfig& c, const YAML::Node& n, const std::string& k) {
         const auto m = scalar<std::string>(n, k);
         if (m == "time") {
           c.mode = ConvergenceMode::Time;
         } else if (m == "space") {
           c.mode = ConvergenceMode::Space;
         } else {
           throw ConfigError(k, line_of(n), "mode must be 'time' or 'space'");
         }
       }},
      {"start_grid", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.start_grid = at_least(n, k, 2); }},
      {"levels", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.levels = at_least(n, k, 1); }},
      {"space_steps",
       [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.space_steps = at_least(n, k, 1); }},
      {"sizes", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.sizes = counts(n, k, 1); }},
      {"bound_lo", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.bound_lo = finite(n, k); }},
      {"bound_hi", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.bound_hi = finite(n, k); }},
      {"lemma_sizes", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.lemma_sizes = counts(n, k, 1); }},
      {"lemma_gammas", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.lemma_gammas = orders(n, k); }},
      {"dense_cap", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.dense_cap = at_least(n, k, 1); }},
      {"bench_steps", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.bench_steps = counts(n, k, 1); }},
      {"bench_grids", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.bench_grids = counts(n, k, 2); }},
      {"format",
       [](RunConfig& c, const YAML::Node& n, const std::string& k) {
         const auto f = scalar<std::string>(n, k);
         if (f == "csv") {
           c.format = OutputFormat::Csv;
         } else if (f == "md") {
           c.format = OutputFormat::Markdown;
         } else {
           throw ConfigError(k, line_of(n), "format must be 'csv' or 'md'");
         }
       }},
      {"output", [](RunConfig& c, const YAML::Node& n, const std::string& k) { c.output = scalar<std::string>(n, k); }},
  };
  return table;
}

void cross_check(const RunConfig& c, const std::map<std::string, int>& lines) {
  auto line = [&](const std::string& k) -> std::optional<int> {
    if (auto it = lines.find(k); it != lines.end()) return it->second;
    return std::nullopt;
  };
  if (!(c.params.x_right > c.params.x_left)) throw ConfigError("x_right", line("x_right"), "must exceed x_left");
  if (!(c.params.y_up > c.params.y_down)) throw ConfigError("y_up", line("y_up"), "must exceed y_down");
  if (!(c.bound_lo < c.bound_hi)) throw ConfigError("bound_hi", line("bound_hi"), "must exceed bound_lo");
  // alpha/beta list lengths are checked by the commands: spectra takes
  // their product, the others pair them up.
  if (c.bench_steps.size() != c.bench_grids.size() && !c.bench_steps.empty() && !c.bench_grids.empty()) {
    throw ConfigError("bench_grids", line("bench_grids"), "must have as many entries as bench_steps");
  }
}

}  // namespace

ConfigError::ConfigError(std::string field, std::optional<int> line, const std::string& what)
    : std::runtime_error(describe(field, line, what)), field_(std::move(field)), line_(line) {}

const std::vector<std::string_view>& known_keys() {
  static const std::vector<std::string_view> keys = [] {
    std::vector<std::string_view> k;
    for (const auto& [name, handler] : handlers()) k.push_back(name);
    return k;
  }();
  return keys;
}

RunConfig parse_config(std::string_view text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(std::string(text));
  } catch (const YAML::ParserException& e) {
    throw ConfigError(source, e.mark.line + 1, "syntax error: " + e.msg);
  }
  RunConfig cfg;
  if (root.IsNull()) return cfg;
  if (!root.IsMap()) throw ConfigError(source, line_of(root), "configuration must be a key: value mapping");

  std::map<std::string, int> seen;
  for (const auto& entry : root) {
    const int line = line_of(entry.first);
    if (!entry.first.IsScalar()) throw ConfigError(source, line, "keys must be plain scalars");
    const std::string key = entry.first.Scalar();
    if (seen.count(key)) throw ConfigError(key, line, "duplicate key");
    seen.emplace(key, line);
    const auto& table = handlers();
    const auto it = std::find_if(table.begin(), table.end(), [&](const auto& h) { return h.first == key; });
    if (it == table.end()) throw ConfigError(key, line, "unknown key");
    if (entry.second.IsNull()) throw ConfigError(key, line, "missing value");
    if (entry.second.IsMap()) throw ConfigError(key, line, "nested mappings are not allowed");
    it->second(cfg, entry.second, key);
  }
  cross_check(cfg, seen);
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("--config", std::nullopt, "cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

ProblemSpec make_problem(const RunConfig& cfg, double alpha, double beta) {
  ManufacturedParams p = cfg.params;
  p.fisher_reaction = cfg.problem == "fisher";
  return manufactured_problem(FractionalOrder(alpha), FractionalOrder(beta), p);
}

}  // namespace fracrd::cli

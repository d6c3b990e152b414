#include "fracrd/cli/commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "fracrd/analysis.hpp"
#include "fracrd/cli/config.hpp"
#include "fracrd/cli/tables.hpp"

namespace fracrd::cli {

namespace {

// (alpha, beta) pairs used when none are configured.
const std::vector<std::pair<double, double>> kDefaultPairs = {{1.1, 1.2}, {1.4, 1.5}, {1.8, 1.9}, {1.1, 1.9}};

struct Flags {
  std::string config;
  std::string format;
  std::string out;
  std::string precond;
  std::string mode;
  double alpha = 0.0;
  double beta = 0.0;
  int levels = 0;
  int grid = 0;
  int steps = 0;
};

struct Options {
  CLI::Option* format = nullptr;
  CLI::Option* out = nullptr;
  CLI::Option* precond = nullptr;
  CLI::Option* mode = nullptr;
  CLI::Option* alpha = nullptr;
  CLI::Option* beta = nullptr;
  CLI::Option* levels = nullptr;
  CLI::Option* grid = nullptr;
  CLI::Option* steps = nullptr;
  CLI::Option* config = nullptr;
};

Options add_common(CLI::App& sub, Flags& f) {
  Options o;
  o.config = sub.add_option("--config", f.config, "YAML configuration file");
  o.format = sub.add_option("--format", f.format, "Output format")->check(CLI::IsMember({"csv", "md"}));
  o.out = sub.add_option("--out", f.out, "Output path (default: stdout)");
  o.precond = sub.add_option("--precond", f.precond, "Preconditioner")
                  ->check(CLI::IsMember({"identity", "tau", "strang", "chan"}));
  o.alpha = sub.add_option("--alpha", f.alpha, "Fractional order in x, in (1, 2)");
  o.beta = sub.add_option("--beta", f.beta, "Fractional order in y, in (1, 2)");
  o.levels = sub.add_option("--levels", f.levels, "Number of refinement levels");
  o.grid = sub.add_option("--grid", f.grid, "N = N_x + 1 subdivisions per side");
  o.steps = sub.add_option("--steps", f.steps, "Number of time steps M");
  return o;
}

void check_order(double v, const char* flag) {
  if (!(v > 1.0 && v < 2.0)) throw ConfigError(flag, std::nullopt, "fractional order must lie in (1, 2)");
}

RunConfig resolve(const Flags& f, const Options& o) {
  RunConfig c = o.config->count() ? load_config(f.config) : RunConfig{};
  if (o.format->count()) c.format = f.format == "md" ? OutputFormat::Markdown : OutputFormat::Csv;
  if (o.out->count()) c.output = f.out;
  if (o.precond->count()) c.kinds = {*parse_preconditioner_kind(f.precond)};
  if (o.alpha->count()) {
    check_order(f.alpha, "--alpha");
    c.alpha = {f.alpha};
  }
  if (o.beta->count()) {
    check_order(f.beta, "--beta");
    c.beta = {f.beta};
  }
  if (o.levels->count()) {
    if (f.levels < 1) throw ConfigError("--levels", std::nullopt, "must be at least 1");
    c.levels = f.levels;
  }
  if (o.grid->count()) {
    if (f.grid < 2) throw ConfigError("--grid", std::nullopt, "must be at least 2");
    c.grid = f.grid;
  }
  if (o.steps->count()) {
    if (f.steps < 1) throw ConfigError("--steps", std::nullopt, "must be at least 1");
    c.steps = f.steps;
  }
  if (o.mode && o.mode->count()) c.mode = f.mode == "space" ? ConvergenceMode::Space : ConvergenceMode::Time;
  return c;
}

std::vector<std::pair<double, double>> pairs(const RunConfig& c) {
  if (c.alpha.empty() && c.beta.empty()) return kDefaultPairs;
  if (c.alpha.empty() || c.beta.empty()) {
    const auto& given = c.alpha.empty() ? c.beta : c.alpha;
    std::vector<std::pair<double, double>> out;
    for (double g : given) out.emplace_back(c.alpha.empty() ? 1.5 : g, c.beta.empty() ? 1.5 : g);
    return out;
  }
  if (c.alpha.size() != c.beta.size()) {
    throw ConfigError("beta", std::nullopt, "alpha and beta lists must have the same length");
  }
  std::vector<std::pair<double, double>> out;
  for (std::size_t k = 0; k < c.alpha.size(); ++k) out.emplace_back(c.alpha[k], c.beta[k]);
  return out;
}

void emit(const RunConfig& c, const Table& t, std::ostream& out) {
  auto write = [&](std::ostream& os) {
    if (c.format == OutputFormat::Markdown) {
      t.write_markdown(os);
    } else {
      t.write_csv(os);
    }
  };
  if (c.output.empty()) {
    write(out);
    return;
  }
  std::ofstream file(c.output, std::ios::binary);
  if (!file) throw ConfigError("output", std::nullopt, "cannot write '" + c.output + "'");
  write(file);
}

Cell maybe_error(const ProblemSpec& p, const RunResult& r) {
  if (!p.has_exact() || std::abs(r.grid.hx() - r.grid.hy()) > 1e-12 * r.grid.hx()) return std::monostate{};
  return discrete_l2_error(r.solution, p, r.grid, p.final_time);
}

int cmd_solve(const RunConfig& c, std::ostream& out) {
  const auto ps = c.alpha.empty() && c.beta.empty() ? std::vector<std::pair<double, double>>{{1.1, 1.2}} : pairs(c);
  if (ps.size() != 1) throw ConfigError("alpha", std::nullopt, "solve takes a single (alpha, beta) pair");
  if (c.kinds.size() > 1) throw ConfigError("preconditioner", std::nullopt, "solve takes a single preconditioner");
  const auto [a, b] = ps.front();
  const int steps = c.steps.value_or(8);
  const int grid = c.grid.value_or(256);
  SolverConfig solver = c.solver;
  solver.preconditioner = c.kinds.empty() ? PreconditionerKind::Tau : c.kinds.front();

  const ProblemSpec p = make_problem(c, a, b);
  const auto n = static_cast<std::size_t>(grid - 1);
  const RunResult r = run(p, steps, n, n, solver);

  Table t({{"problem"},
           {"alpha", Style::Fixed4},
           {"beta", Style::Fixed4},
           {"steps", Style::Integer},
           {"grid", Style::Integer},
           {"h", Style::Reciprocal},
           {"dt", Style::Reciprocal},
           {"preconditioner"},
           {"error", Style::Scientific},
           {"avg_iter", Style::Fixed2},
           {"wall_seconds", Style::Fixed2}});
  t.add_row({p.name, a, b, static_cast<long long>(steps), static_cast<long long>(grid), r.grid.hx(), r.dt,
             std::string(to_string(solver.preconditioner)), maybe_error(p, r), r.average_iterations(),
             r.wall_seconds});
  emit(c, t, out);
  return kExitOk;
}

int cmd_convergence(const RunConfig& c, std::ostream& out) {
  if (c.kinds.size() > 1) throw ConfigError("preconditioner", std::nullopt, "convergence takes a single preconditioner");
  SolverConfig solver = c.solver;
  solver.preconditioner = c.kinds.empty() ? PreconditionerKind::Tau : c.kinds.front();
  const bool time = c.mode == ConvergenceMode::Time;
  const int start = c.grid.value_or(c.start_grid.value_or(time ? 64 : 8));
  const int space_steps = c.steps.value_or(c.space_steps);

  Table t({{"alpha", Style::Fixed4},
           {"beta", Style::Fixed4},
           {"h", Style::Reciprocal},
           {"dt", Style::Reciprocal},
           {"error", Style::Scientific},
           {"order", Style::Fixed4},
           {"avg_iter", Style::Fixed2}});
  for (const auto& [a, b] : pairs(c)) {
    const ProblemSpec p = make_problem(c, a, b);
    const auto rows = time ? temporal_convergence(p, start, c.levels, solver)
                           : spatial_convergence(p, start, c.levels, space_steps, solver);
    for (const auto& row : rows) {
      t.add_row({a, b, row.h, row.dt, row.error, row.order ? Cell(*row.order) : Cell(std::monostate{}),
                 row.average_iterations});
    }
  }
  emit(c, t, out);
  return kExitOk;
}

int cmd_spectra(const RunConfig& c, std::ostream& out) {
  const std::vector<double> grid_orders = {1.1, 1.3, 1.5, 1.7, 1.9};
  const auto& alphas = c.alpha.empty() ? grid_orders : c.alpha;
  const auto& betas = c.beta.empty() ? grid_orders : c.beta;
  std::vector<int> sizes = c.sizes.empty() ? std::vector<int>{1, 7, 15, 31} : c.sizes;
  if (c.grid) sizes = {*c.grid - 1};
  const auto cap = static_cast<std::size_t>(c.dense_cap);
  for (int n : sizes) {
    if (static_cast<std::size_t>(n) * static_cast<std::size_t>(n) > cap) {
      throw ConfigError("sizes", std::nullopt,
                        std::to_string(n) + "x" + std::to_string(n) + " grid exceeds dense_cap " +
                            std::to_string(cap));
    }
  }
  const auto lemma_sizes = c.lemma_sizes.empty() ? std::vector<int>{16, 32, 64} : c.lemma_sizes;
  const auto gammas = c.lemma_gammas.empty() ? std::vector<double>{1.1, 1.4674, 1.5, 1.9} : c.lemma_gammas;

  Table t({{"check"},
           {"alpha", Style::Fixed4},
           {"beta", Style::Fixed4},
           {"n", Style::Integer},
           {"lambda_min", Style::Fixed4},
           {"lambda_max", Style::Fixed4},
           {"bound_lo", Style::Fixed4},
           {"bound_hi", Style::Fixed4},
           {"margin", Style::Scientific},
           {"pass"}});
  bool all = true;
  const SpectralBounds bounds{c.bound_lo, c.bound_hi};
  const double width = c.params.x_right - c.params.x_left;
  for (int n : sizes) {
    const double h = width / (n + 1);
    for (double a : alphas) {
      for (double b : betas) {
        const auto cert = certify_spectrum(FractionalOrder(a), FractionalOrder(b), c.params.k_alpha, c.params.k_beta,
                                           h, h, static_cast<std::size_t>(n), static_cast<std::size_t>(n), bounds, cap);
        all = all && cert.pass;
        t.add_row({std::string("tau_2d"), a, b, static_cast<long long>(n), cert.lambda_min, cert.lambda_max,
                   bounds.lo, bounds.hi, cert.margin(), std::string(cert.pass ? "pass" : "FAIL")});
      }
    }
  }
  for (double g : gammas) {
    for (int n : lemma_sizes) {
      const auto lc = certify_1d_lemmas(FractionalOrder(g), static_cast<std::size_t>(n));
      for (const IntervalReport* r : {&lc.tau_vs_fcd, &lc.fourth_vs_fcd, &lc.fourth_vs_tau}) {
        all = all && r->pass;
        t.add_row({"lemma " + r->name, g, std::monostate{}, static_cast<long long>(n), r->lambda_min, r->lambda_max,
                   r->lo, r->hi, std::min(r->lambda_min - r->lo, r->hi - r->lambda_max),
                   std::string(r->pass ? "pass" : "FAIL")});
      }
    }
  }
  emit(c, t, out);
  return all ? kExitOk : kExitFailure;
}

int cmd_bench(const RunConfig& c, std::ostream& out) {
  std::vector<std::pair<int, int>> sizes;  // (M, N)
  if (c.steps || c.grid) {
    sizes.emplace_back(c.steps.value_or(8), c.grid.value_or(256));
  } else if (!c.bench_steps.empty() || !c.bench_grids.empty()) {
    if (c.bench_steps.size() != c.bench_grids.size()) {
      throw ConfigError("bench_grids", std::nullopt, "bench_steps and bench_grids must have the same length");
    }
    for (std::size_t k = 0; k < c.bench_steps.size(); ++k) sizes.emplace_back(c.bench_steps[k], c.bench_grids[k]);
  } else {
    sizes = {{8, 256}, {16, 512}};
  }
  const std::vector<PreconditionerKind> kinds =
      c.kinds.empty() ? std::vector<PreconditionerKind>{PreconditionerKind::Identity, PreconditionerKind::ChanCirculant,
                                                        PreconditionerKind::StrangCirculant, PreconditionerKind::Tau}
                      : c.kinds;

  const bool md = c.format == OutputFormat::Markdown;
  std::vector<Column> cols = {{"alpha", Style::Fixed4}, {"beta", Style::Fixed4}, {"M", Style::Integer},
                              {"N", Style::Integer}};
  for (const auto kind : kinds) {
    const std::string name(to_string(kind));
    cols.push_back({name + "_cpu", Style::Fixed2});
    cols.push_back({name + "_iter", Style::Fixed2});
  }
  Table t(std::move(cols));
  for (const auto& [a, b] : pairs(c)) {
    const ProblemSpec p = make_problem(c, a, b);
    for (const auto& [m, n] : sizes) {
      std::vector<Cell> row = {a, b, static_cast<long long>(m), static_cast<long long>(n)};
      for (const auto& r : bench_preconditioners(p, m, static_cast<std::size_t>(n - 1), kinds, c.solver)) {
        row.push_back(r.exceeded && md ? Cell(Exceeded{}) : Cell(r.cpu_seconds));
        row.push_back(r.exceeded ? Cell(Exceeded{}) : Cell(r.average_iterations));
      }
      t.add_row(std::move(row));
    }
  }
  emit(c, t, out);
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fourth-order solver for 2D Riesz space-fractional reaction-diffusion equations", "fracrd"};
  app.require_subcommand(1);
  Flags flags;
  auto* solve = app.add_subcommand("solve", "Run one simulation and report error, iterations and time");
  auto* conv = app.add_subcommand("convergence", "Temporal or spatial convergence table");
  auto* spectra = app.add_subcommand("spectra", "Dense spectral certificates of the tau preconditioner");
  auto* bench = app.add_subcommand("bench", "Compare CG and the preconditioned variants");
  const Options o_solve = add_common(*solve, flags);
  Options o_conv = add_common(*conv, flags);
  o_conv.mode = conv->add_option("--mode", flags.mode, "time or space")->check(CLI::IsMember({"time", "space"}));
  const Options o_spectra = add_common(*spectra, flags);
  const Options o_bench = add_common(*bench, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (solve->parsed()) return cmd_solve(resolve(flags, o_solve), out);
    if (conv->parsed()) return cmd_convergence(resolve(flags, o_conv), out);
    if (spectra->parsed()) return cmd_spectra(resolve(flags, o_spectra), out);
    if (bench->parsed()) return cmd_bench(resolve(flags, o_bench), out);
  } catch (const ConfigError& e) {
    err << "fracrd: configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const StepFailure& e) {
    err << "fracrd: solver failure: " << e.what() << '\n';
    return kExitFailure;
  } catch (const std::exception& e) {
    err << "fracrd: error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitConfig;
}

}  // namespace fracrd::cli

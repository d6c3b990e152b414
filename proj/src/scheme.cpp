#include "fracrd/scheme.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <memory>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>

namespace fracrd {

void ProblemSpec::validate() const {
  if (!(k_alpha > 0.0) || !(k_beta > 0.0)) throw std::invalid_argument("ProblemSpec: diffusion constants must be positive");
  if (!(final_time > 0.0)) throw std::invalid_argument("ProblemSpec: final time must be positive");
  if (!(x_right > x_left) || !(y_up > y_down)) throw std::invalid_argument("ProblemSpec: empty domain");
  if (!source || !initial) throw std::invalid_argument("ProblemSpec: source and initial condition are required");
}

GridSpec ProblemSpec::grid(std::size_t nx, std::size_t ny) const {
  GridSpec g{x_left, x_right, y_down, y_up, nx, ny};
  g.validate();
  return g;
}

double riesz_derivative_power_bump(double g, int p, double a, double b, double x) {
  const double len = b - a;
  const double s = x - a;
  const double r = b - x;
  double sum = 0.0;
  double binom = 1.0;  // C(p, j)
  for (int j = 0; j <= p; ++j) {
    const double q = p + j;
    const double gamma_ratio = std::exp(std::lgamma(q + 1.0) - std::lgamma(q + 1.0 - g));
    const double sign = (j % 2 == 0) ? 1.0 : -1.0;
    sum += sign * binom * std::pow(len, p - j) * gamma_ratio * (std::pow(s, q - g) + std::pow(r, q - g));
    binom = binom * (p - j) / (j + 1);
  }
  return -sum / (2.0 * std::cos(g * std::numbers::pi / 2.0));
}

namespace {

// The forcing is separable, so the same 1D derivative is requested once per
// grid line and step. Memoised by coordinate; shared across OpenMP threads.
class RieszMemo {
 public:
  RieszMemo(double g, int p, double a, double b) : g_(g), p_(p), a_(a), b_(b) {}

  double operator()(double x) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = values_.find(x); it != values_.end()) return it->second;
    }
    const double v = riesz_derivative_power_bump(g_, p_, a_, b_, x);
    std::unique_lock lock(mutex_);
    values_.emplace(x, v);
    return v;
  }

 private:
  double g_;
  int p_;
  double a_;
  double b_;
  std::shared_mutex mutex_;
  std::unordered_map<double, double> values_;
};

}  // namespace

ProblemSpec manufactured_problem(FractionalOrder alpha, FractionalOrder beta, const ManufacturedParams& mp) {
  if (mp.power < 1) throw std::invalid_argument("manufactured_problem: power must be >= 1");
  ProblemSpec p;
  p.name = mp.fisher_reaction ? "fisher" : "manufactured";
  p.x_left = mp.x_left;
  p.x_right = mp.x_right;
  p.y_down = mp.y_down;
  p.y_up = mp.y_up;
  p.k_alpha = mp.k_alpha;
  p.k_beta = mp.k_beta;
  p.alpha = alpha;
  p.beta = beta;
  p.final_time = mp.final_time;

  const double a = alpha.value();
  const double b = beta.value();
  auto bump = [](int pw, double lo, double hi, double z) { return std::pow((z - lo) * (hi - z), pw); };
  auto exact = [mp, bump](double x, double y, double t) {
    return mp.rho * std::exp(-t) * bump(mp.power, mp.x_left, mp.x_right, x) *
           bump(mp.power, mp.y_down, mp.y_up, y);
  };
  p.exact = exact;
  p.initial = [exact](double x, double y) { return exact(x, y, 0.0); };
  auto riesz_x = std::make_shared<RieszMemo>(a, mp.power, mp.x_left, mp.x_right);
  auto riesz_y = std::make_shared<RieszMemo>(b, mp.power, mp.y_down, mp.y_up);
  p.source = [mp, bump, exact, riesz_x, riesz_y](double x, double y, double t, double u) {
    const double X = bump(mp.power, mp.x_left, mp.x_right, x);
    const double Y = bump(mp.power, mp.y_down, mp.y_up, y);
    const double amp = mp.rho * std::exp(-t);
    const double rx = (*riesz_x)(x);
    const double ry = (*riesz_y)(y);
    const double ue = exact(x, y, t);
    // g = u_t - K_a R_a u - K_b R_b u - reaction(u_exact), with u_t = -u.
    double g = -amp * X * Y - mp.k_alpha * amp * rx * Y - mp.k_beta * amp * X * ry;
    if (mp.fisher_reaction) g -= ue * (1.0 - ue);
    return mp.fisher_reaction ? u * (1.0 - u) + g : g;
  };
  return p;
}

ProblemSpec fisher_problem(FractionalOrder alpha, FractionalOrder beta) {
  return manufactured_problem(alpha, beta, ManufacturedParams{});
}

FieldVector source_vector(const ProblemSpec& p, const GridSpec& grid, double t_half, const FieldVector& u) {
  if (!u.conforms_to(grid)) throw std::invalid_argument("source_vector: field does not conform to grid");
  FieldVector out(grid.nx, grid.ny);
  const auto ny = static_cast<std::ptrdiff_t>(grid.ny);
  bool bad = false;
#pragma omp parallel for schedule(static) if (grid.size() > 4096) reduction(|| : bad)
  for (std::ptrdiff_t jj = 0; jj < ny; ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    const double y = grid.y(j);
    for (std::size_t i = 0; i < grid.nx; ++i) {
      const double v = p.source(grid.x(i), y, t_half, u(i, j));
      out(i, j) = v;
      bad = bad || !std::isfinite(v);
    }
  }
  if (bad) {
    for (std::size_t j = 0; j < grid.ny; ++j) {
      for (std::size_t i = 0; i < grid.nx; ++i) {
        if (!std::isfinite(out(i, j))) {
          std::ostringstream msg;
          msg << "source term is not finite at node (x=" << grid.x(i) << ", y=" << grid.y(j) << ", t=" << t_half
              << ")";
          throw ProblemError(msg.str());
        }
      }
    }
  }
  return out;
}

FieldVector sample_initial(const ProblemSpec& p, const GridSpec& grid) {
  FieldVector out(grid.nx, grid.ny);
  for (std::size_t j = 0; j < grid.ny; ++j) {
    for (std::size_t i = 0; i < grid.nx; ++i) out(i, j) = p.initial(grid.x(i), grid.y(j));
  }
  return out;
}

FieldVector sample_exact(const ProblemSpec& p, const GridSpec& grid, double t) {
  if (!p.has_exact()) throw std::invalid_argument("problem '" + p.name + "' has no exact solution");
  FieldVector out(grid.nx, grid.ny);
  for (std::size_t j = 0; j < grid.ny; ++j) {
    for (std::size_t i = 0; i < grid.nx; ++i) out(i, j) = p.exact(grid.x(i), grid.y(j), t);
  }
  return out;
}

TimeStepState TimeStepState::initial(FieldVector u0) {
  TimeStepState s;
  s.m = 0;
  s.previous = u0;
  s.current = std::move(u0);
  return s;
}

StepFailure::StepFailure(int step, SolveReport report)
    : std::runtime_error("linear solve at step " + std::to_string(step) + " did not converge within " +
                         std::to_string(report.iterations) + " iterations (relative residual " +
                         std::to_string(report.final_relative_residual) + ")"),
      step_(step),
      report_(std::move(report)) {}

FieldVector step_rhs(const DiscreteOperator& op, const ProblemSpec& p, const TimeStepState& state, double dt) {
  const GridSpec& g = op.grid();
  const double t_half = (state.m + 0.5) * dt;
  FieldVector rhs = op.apply_explicit(state.current);
  const FieldVector f_curr = source_vector(p, g, t_half, state.current);
  const FieldVector f_prev = source_vector(p, g, t_half, state.previous);
  auto r = rhs.span();
  const auto fc = f_curr.span();
  const auto fp = f_prev.span();
  for (std::size_t k = 0; k < r.size(); ++k) r[k] += dt * (1.5 * fc[k] - 0.5 * fp[k]);
  return rhs;
}

StepOutcome step(const DiscreteOperator& op, const Preconditioner& precond, const ProblemSpec& p,
                 const TimeStepState& state, double dt, const SolverConfig& cfg) {
  if (op.dt() && std::abs(*op.dt() - dt) > 1e-14 * dt) {
    throw std::invalid_argument("step: operator was built for a different time step");
  }
  const FieldVector rhs = step_rhs(op, p, state, dt);
  const GridSpec& g = op.grid();
  LinearAction apply_a = [&op](std::span<const double> in, std::span<double> out) { op.apply_implicit(in, out); };
  SolveReport report = pcg(apply_a, as_action(precond), rhs.span(), cfg);
  if (!report.converged) throw StepFailure(state.m + 1, std::move(report));

  StepOutcome out;
  out.state.m = state.m + 1;
  out.state.previous = state.current;
  out.state.current = FieldVector(g.nx, g.ny, report.solution);
  out.report = std::move(report);
  return out;
}

StepOutcome step(const DiscreteOperator& op, const ProblemSpec& p, const TimeStepState& state, double dt,
                 const SolverConfig& cfg) {
  const auto precond = make_preconditioner(op, cfg.preconditioner);
  return step(op, *precond, p, state, dt, cfg);
}

double RunResult::average_iterations() const {
  if (iterations.empty()) return 0.0;
  return std::accumulate(iterations.begin(), iterations.end(), 0.0) / static_cast<double>(iterations.size());
}

RunResult run(const ProblemSpec& p, int steps, std::size_t nx, std::size_t ny, const SolverConfig& cfg) {
  p.validate();
  cfg.validate();
  if (steps < 1) throw std::invalid_argument("run: need at least one time step");
  const auto start = std::chrono::steady_clock::now();

  RunResult result;
  result.grid = p.grid(nx, ny);
  result.dt = p.final_time / steps;
  const DiscreteOperator op(result.grid, p.alpha, p.beta, p.k_alpha, p.k_beta, result.dt);
  const auto precond = make_preconditioner(op, cfg.preconditioner);

  TimeStepState state = TimeStepState::initial(sample_initial(p, result.grid));
  result.iterations.reserve(static_cast<std::size_t>(steps));
  for (int m = 0; m < steps; ++m) {
    StepOutcome next = step(op, *precond, p, state, result.dt, cfg);
    result.iterations.push_back(next.report.iterations);
    state = std::move(next.state);
  }
  result.solution = std::move(state.current);
  result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace fracrd

#include "fracrd/analysis.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "fracrd/reference.hpp"
#include "fracrd/transforms.hpp"

namespace fracrd {

double discrete_l2_error(const FieldVector& numerical, const ProblemSpec& p, const GridSpec& grid, double t) {
  if (!p.has_exact()) throw std::invalid_argument("discrete_l2_error: problem '" + p.name + "' has no exact solution");
  if (!numerical.conforms_to(grid)) throw std::invalid_argument("discrete_l2_error: field does not conform to grid");
  const double h = grid.hx();
  if (std::abs(grid.hy() - h) > 1e-12 * h) throw std::invalid_argument("discrete_l2_error: grid must have hx == hy");
  double sum = 0.0;
  for (std::size_t j = 0; j < grid.ny; ++j) {
    for (std::size_t i = 0; i < grid.nx; ++i) {
      const double psi = p.exact(grid.x(i), grid.y(j), t) - numerical(i, j);
      sum += psi * psi;
    }
  }
  return h * std::sqrt(sum);
}

double order_between(const ConvergenceRow& coarse, const ConvergenceRow& fine) {
  return std::log2(coarse.error / fine.error);
}

namespace {

ConvergenceRow measure(const ProblemSpec& p, int subdivisions, int steps, const SolverConfig& cfg) {
  const auto n = static_cast<std::size_t>(subdivisions - 1);
  const RunResult r = run(p, steps, n, n, cfg);
  ConvergenceRow row;
  row.h = r.grid.hx();
  row.dt = r.dt;
  row.error = discrete_l2_error(r.solution, p, r.grid, p.final_time);
  row.average_iterations = r.average_iterations();
  return row;
}

void fill_orders(std::vector<ConvergenceRow>& rows) {
  for (std::size_t k = 1; k < rows.size(); ++k) rows[k].order = order_between(rows[k - 1], rows[k]);
}

void require_levels(int start, int levels) {
  if (start < 2) throw std::invalid_argument("convergence study: need at least 2 subdivisions");
  if (levels < 1) throw std::invalid_argument("convergence study: need at least one level");
}

}  // namespace

std::vector<ConvergenceRow> temporal_convergence(const ProblemSpec& p, int start_subdivisions, int levels,
                                                 const SolverConfig& cfg) {
  require_levels(start_subdivisions, levels);
  std::vector<ConvergenceRow> rows;
  for (int l = 0; l < levels; ++l) {
    const int n = start_subdivisions << l;
    rows.push_back(measure(p, n, static_cast<int>(std::lround(n * p.final_time)), cfg));
  }
  fill_orders(rows);
  return rows;
}

std::vector<ConvergenceRow> spatial_convergence(const ProblemSpec& p, int start_subdivisions, int levels,
                                                int steps, const SolverConfig& cfg) {
  require_levels(start_subdivisions, levels);
  std::vector<ConvergenceRow> rows;
  for (int l = 0; l < levels; ++l) rows.push_back(measure(p, start_subdivisions << l, steps, cfg));
  fill_orders(rows);
  return rows;
}

Eigen::VectorXd generalized_eigenvalues(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, b, Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success) throw std::runtime_error("generalized eigensolver failed");
  return solver.eigenvalues();
}

double SpectrumCertificate::margin() const noexcept {
  return std::min(lambda_min - bounds.lo, bounds.hi - lambda_max);
}

Eigen::MatrixXd dense_direction_preconditioner(FractionalOrder gamma, std::size_t n) {
  const Eigen::MatrixXd S = reference::sine_matrix(n);
  const auto lambda = tau_direction_eigenvalues(gamma, n);
  const Eigen::Map<const Eigen::VectorXd> l(lambda.data(), static_cast<Eigen::Index>(n));
  return S * l.asDiagonal() * S;
}

SpectrumCertificate certify_spectrum(const DiscreteOperator& op, SpectralBounds bounds, std::size_t cap) {
  const GridSpec& g = op.grid();
  const Eigen::MatrixXd a = dense_assemble(op, cap);
  Eigen::MatrixXd p = kronecker_sum(op.eta_alpha() * dense_direction_preconditioner(op.alpha(), g.nx),
                                    op.eta_beta() * dense_direction_preconditioner(op.beta(), g.ny));
  p.diagonal().array() += 1.0;
  const Eigen::VectorXd ev = generalized_eigenvalues(a, p);

  SpectrumCertificate c;
  c.alpha = op.alpha();
  c.beta = op.beta();
  c.eta_alpha = op.eta_alpha();
  c.eta_beta = op.eta_beta();
  c.nx = g.nx;
  c.ny = g.ny;
  c.lambda_min = ev.minCoeff();
  c.lambda_max = ev.maxCoeff();
  c.bounds = bounds;
  c.pass = bounds.lo < c.lambda_min && c.lambda_max < bounds.hi;
  return c;
}

SpectrumCertificate certify_spectrum(FractionalOrder alpha, FractionalOrder beta, double k_alpha, double k_beta,
                                     double dt, double h, std::size_t nx, std::size_t ny, SpectralBounds bounds,
                                     std::size_t cap) {
  if (nx * ny > cap) throw std::length_error("certify_spectrum: grid exceeds dense cap");
  GridSpec g;
  g.nx = nx;
  g.ny = ny;
  g.x_right = h * static_cast<double>(nx + 1);
  g.y_up = h * static_cast<double>(ny + 1);
  return certify_spectrum(DiscreteOperator(g, alpha, beta, k_alpha, k_beta, dt), bounds, cap);
}

namespace {

IntervalReport interval(std::string name, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b, double lo, double hi) {
  const Eigen::VectorXd ev = generalized_eigenvalues(a, b);
  IntervalReport r;
  r.name = std::move(name);
  r.lo = lo;
  r.hi = hi;
  r.lambda_min = ev.minCoeff();
  r.lambda_max = ev.maxCoeff();
  r.pass = lo < r.lambda_min && r.lambda_max < hi;
  return r;
}

}  // namespace

LemmaCertificate certify_1d_lemmas(FractionalOrder gamma, std::size_t n) {
  if (n == 0 || n > 4096) throw std::length_error("certify_1d_lemmas: n must be in [1, 4096]");
  const WeightTable g = fcd_weights(gamma, n);
  const WeightTable s = fourth_order_weights(gamma, n);
  const Eigen::MatrixXd a_fcd = reference::toeplitz_matrix(g.one_sided());
  const Eigen::MatrixXd a_fourth = reference::toeplitz_matrix(s.one_sided());

  const auto tau_eigs = tau_eigenvalues(tau_projection(g.one_sided()));
  const Eigen::MatrixXd S = reference::sine_matrix(n);
  const Eigen::Map<const Eigen::VectorXd> tl(tau_eigs.data(), static_cast<Eigen::Index>(n));
  const Eigen::MatrixXd tau = S * tl.asDiagonal() * S;

  LemmaCertificate c;
  c.gamma = gamma;
  c.n = n;
  c.tau_vs_fcd = interval("tau(A_fcd)^-1 A_fcd", a_fcd, tau, 0.5, 1.5);
  c.fourth_vs_fcd = interval("A_fcd^-1 A_4th", a_fourth, a_fcd, 1.0, 4.0 / 3.0);
  c.fourth_vs_tau = interval("P^-1 A_4th", a_fourth, dense_direction_preconditioner(gamma, n), 3.0 / 8.0, 2.0);
  return c;
}

std::vector<BenchRow> bench_preconditioners(const ProblemSpec& p, int steps, std::size_t n_interior,
                                            std::span<const PreconditionerKind> kinds, const SolverConfig& base) {
  std::vector<BenchRow> rows;
  for (const PreconditionerKind kind : kinds) {
    SolverConfig cfg = base;
    cfg.preconditioner = kind;
    BenchRow row;
    row.kind = kind;
    const auto start = std::chrono::steady_clock::now();
    try {
      const RunResult r = run(p, steps, n_interior, n_interior, cfg);
      row.iterations = r.iterations;
      row.average_iterations = r.average_iterations();
    } catch (const StepFailure& f) {
      row.exceeded = true;
      row.iterations.push_back(f.report().iterations);
    }
    row.cpu_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace fracrd

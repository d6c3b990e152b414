#pragma once

// Error norms, observed orders, dense spectral certificates and the
// preconditioner comparison.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fracrd/scheme.hpp"

namespace fracrd {

struct ConvergenceRow {
  double h = 0.0;
  double dt = 0.0;
  double error = 0.0;
  std::optional<double> order;  // empty on the first row
  double average_iterations = 0.0;
};

/// h * ||u(t) - U||_2 over interior nodes; requires hx == hy.
double discrete_l2_error(const FieldVector& numerical, const ProblemSpec& p, const GridSpec& grid, double t);

/// log2(coarse.error / fine.error)
double order_between(const ConvergenceRow& coarse, const ConvergenceRow& fine);

/// h = dt = 1/n, n = start_subdivisions * 2^l for l = 0..levels-1 (unit-length domain).
std::vector<ConvergenceRow> temporal_convergence(const ProblemSpec& p, int start_subdivisions, int levels,
                                                 const SolverConfig& cfg);

/// Fixed number of time steps; h = 1/n with n doubling from start_subdivisions.
std::vector<ConvergenceRow> spatial_convergence(const ProblemSpec& p, int start_subdivisions, int levels,
                                                int steps, const SolverConfig& cfg);

/// Eigenvalues of the symmetric-definite pencil (A, B), ascending, via
/// Cholesky reduction of B.
Eigen::VectorXd generalized_eigenvalues(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

struct SpectralBounds {
  double lo = 3.0 / 8.0;
  double hi = 2.0;
};

struct SpectrumCertificate {
  double alpha = 0.0;
  double beta = 0.0;
  double eta_alpha = 0.0;
  double eta_beta = 0.0;
  std::size_t nx = 0;
  std::size_t ny = 0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  SpectralBounds bounds;
  bool pass = false;

  /// Distance of the spectrum to the nearest bound (negative on failure).
  double margin() const noexcept;
};

/// Extreme eigenvalues of P_tau^{-1} (I + J) from the dense pencil.
SpectrumCertificate certify_spectrum(const DiscreteOperator& op, SpectralBounds bounds = {},
                                     std::size_t cap = kDefaultDenseCap);
SpectrumCertificate certify_spectrum(FractionalOrder alpha, FractionalOrder beta, double k_alpha, double k_beta,
                                     double dt, double h, std::size_t nx, std::size_t ny,
                                     SpectralBounds bounds = {}, std::size_t cap = kDefaultDenseCap);

struct IntervalReport {
  std::string name;
  double lo = 0.0;
  double hi = 0.0;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  bool pass = false;
};

struct LemmaCertificate {
  double gamma = 0.0;
  std::size_t n = 0;
  IntervalReport tau_vs_fcd;       // tau(A^)^{-1} A^ in (1/2, 3/2)
  IntervalReport fourth_vs_fcd;    // A^^{-1} A in (1, 4/3)
  IntervalReport fourth_vs_tau;    // P^{-1} A in (3/8, 2)

  bool pass() const noexcept { return tau_vs_fcd.pass && fourth_vs_fcd.pass && fourth_vs_tau.pass; }
};

LemmaCertificate certify_1d_lemmas(FractionalOrder gamma, std::size_t n);

/// Dense P_g = Q_g tau(A^_g).
Eigen::MatrixXd dense_direction_preconditioner(FractionalOrder gamma, std::size_t n);

struct BenchRow {
  PreconditionerKind kind = PreconditionerKind::Identity;
  double cpu_seconds = 0.0;
  double average_iterations = 0.0;
  bool exceeded = false;  // some step needed more than max_iterations
  std::vector<int> iterations;
};

/// One run per kind with otherwise identical inputs; n_interior per side.
std::vector<BenchRow> bench_preconditioners(const ProblemSpec& p, int steps, std::size_t n_interior,
                                            std::span<const PreconditionerKind> kinds,
                                            const SolverConfig& base = {});

}  // namespace fracrd

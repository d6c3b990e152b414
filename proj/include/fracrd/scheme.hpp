#pragma once

// Linearised Crank-Nicolson time stepping for
//   u_t = K_a d^a u/d|x|^a + K_b d^b u/d|y|^b + f(x, y, t, u)
// with homogeneous exterior data:
//   (I + J) U^{m+1} = (I - J) U^m + dt (3/2 F^m - 1/2 F^{m-1}),
// where both F^m and F^{m-1} are evaluated at t_{m+1/2} (with U^m and
// U^{m-1} respectively) and U^{-1} = U^0.

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracrd/krylov.hpp"
#include "fracrd/operators.hpp"

namespace fracrd {

using SourceFn = std::function<double(double x, double y, double t, double u)>;
using InitialFn = std::function<double(double x, double y)>;
using ExactFn = std::function<double(double x, double y, double t)>;

struct ProblemSpec {
  std::string name;
  double x_left = 0.0;
  double x_right = 1.0;
  double y_down = 0.0;
  double y_up = 1.0;
  double k_alpha = 1.0;
  double k_beta = 1.0;
  FractionalOrder alpha{1.5};
  FractionalOrder beta{1.5};
  double final_time = 1.0;
  SourceFn source;
  InitialFn initial;
  ExactFn exact;  // empty when no closed form is known

  bool has_exact() const noexcept { return static_cast<bool>(exact); }
  void validate() const;
  GridSpec grid(std::size_t nx, std::size_t ny) const;
};

/// Separable manufactured solution
///   u = rho e^{-t} X(x) Y(y),  X = (x - x_L)^p (x_R - x)^p,  Y likewise,
/// with the forcing chosen so the PDE holds exactly. With `fisher_reaction`
/// the source is u(1-u) + g(x, y, t); otherwise it is g alone.
struct ManufacturedParams {
  double rho = 1e5;
  int power = 5;
  double k_alpha = 5.0;
  double k_beta = 30.0;
  double final_time = 1.0;
  bool fisher_reaction = true;
  double x_left = 0.0;
  double x_right = 1.0;
  double y_down = 0.0;
  double y_up = 1.0;
};

ProblemSpec manufactured_problem(FractionalOrder alpha, FractionalOrder beta, const ManufacturedParams& params);

/// 2D space-fractional Fisher equation on the unit square:
/// K_a = 5, K_b = 30, T = 1, u = 1e5 e^{-t} x^5 (1-x)^5 y^5 (1-y)^5.
ProblemSpec fisher_problem(FractionalOrder alpha, FractionalOrder beta);

/// Riesz derivative of order g of the one-dimensional factor
/// (x - a)^p (b - x)^p extended by zero outside (a, b).
double riesz_derivative_power_bump(double g, int p, double a, double b, double x);

/// Thrown when the source produces a non-finite value.
class ProblemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Pointwise f(x_i, y_j, t_half, U_ij) in x-fastest order.
FieldVector source_vector(const ProblemSpec& p, const GridSpec& grid, double t_half, const FieldVector& u);

FieldVector sample_initial(const ProblemSpec& p, const GridSpec& grid);
FieldVector sample_exact(const ProblemSpec& p, const GridSpec& grid, double t);

struct TimeStepState {
  int m = 0;
  FieldVector current;   // U^m
  FieldVector previous;  // U^{m-1}

  /// m = 0 with U^{-1} = U^0.
  static TimeStepState initial(FieldVector u0);
};

struct StepOutcome {
  TimeStepState state;
  SolveReport report;
};

/// Thrown when the linear solve fails to reach the tolerance.
class StepFailure : public std::runtime_error {
 public:
  StepFailure(int step, SolveReport report);
  int step() const noexcept { return step_; }
  const SolveReport& report() const noexcept { return report_; }

 private:
  int step_;
  SolveReport report_;
};

/// Right-hand side (I - J) U^m + dt (3/2 F^m - 1/2 F^{m-1}).
FieldVector step_rhs(const DiscreteOperator& op, const ProblemSpec& p, const TimeStepState& state, double dt);

StepOutcome step(const DiscreteOperator& op, const Preconditioner& precond, const ProblemSpec& p,
                 const TimeStepState& state, double dt, const SolverConfig& cfg);
/// Builds the preconditioner named in cfg for this single step.
StepOutcome step(const DiscreteOperator& op, const ProblemSpec& p, const TimeStepState& state, double dt,
                 const SolverConfig& cfg);

struct RunResult {
  FieldVector solution;           // U^M
  std::vector<int> iterations;    // Iter(m), m = 1..M
  double wall_seconds = 0.0;
  double dt = 0.0;
  GridSpec grid;

  double average_iterations() const;
};

/// M steps of size T/M on an nx x ny interior grid.
RunResult run(const ProblemSpec& p, int steps, std::size_t nx, std::size_t ny, const SolverConfig& cfg);

}  // namespace fracrd

#pragma once

// Conjugate gradients for SPD operators given as actions.

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "fracrd/preconditioners.hpp"

namespace fracrd {

/// out = M in
using LinearAction = std::function<void(std::span<const double> in, std::span<double> out)>;

struct SolverConfig {
  double tolerance = 1e-10;
  int max_iterations = 1000;
  PreconditionerKind preconditioner = PreconditionerKind::Tau;

  void validate() const;
};

struct SolveReport {
  std::vector<double> solution;
  int iterations = 0;
  /// ||r_k|| / ||r_0|| from the residual recurrence at exit.
  double final_relative_residual = 0.0;
  /// ||b - A x|| / ||b|| recomputed once at exit.
  double true_relative_residual = 0.0;
  bool converged = false;
};

class SolverError : public std::runtime_error {
 public:
  enum class Reason { NonFinite, NotPositiveDefinite };
  SolverError(Reason reason, const std::string& what) : std::runtime_error(what), reason_(reason) {}
  Reason reason() const noexcept { return reason_; }

 private:
  Reason reason_;
};

/// Preconditioned CG from a zero initial guess. Stops when
/// ||r_k||_2 / ||r_0||_2 <= tolerance or after max_iterations passes.
/// b = 0 returns x = 0 with zero iterations.
SolveReport pcg(const LinearAction& apply_a, const LinearAction& apply_pinv, std::span<const double> b,
                const SolverConfig& cfg);

/// Unpreconditioned CG, written out separately; pcg with an identity
/// action follows the same arithmetic and reproduces it bit for bit.
SolveReport cg(const LinearAction& apply_a, std::span<const double> b, const SolverConfig& cfg);

LinearAction as_action(const Preconditioner& p);

}  // namespace fracrd

#include "fracrd/krylov.hpp"

#include <cmath>
#include <string>

#include "fracrd/detail/blas1.hpp"

namespace fracrd {

using detail::axpy;
using detail::dot;
using detail::norm2;
using detail::xpby;

void SolverConfig::validate() const {
  if (!(tolerance > 0.0)) throw std::invalid_argument("SolverConfig: tolerance must be positive");
  if (max_iterations < 1) throw std::invalid_argument("SolverConfig: max_iterations must be at least 1");
}

namespace {

void check_curvature(double pap, int iteration) {
  if (!std::isfinite(pap)) {
    throw SolverError(SolverError::Reason::NonFinite,
                      "CG: non-finite curvature at iteration " + std::to_string(iteration));
  }
  if (pap <= 0.0) {
    throw SolverError(SolverError::Reason::NotPositiveDefinite,
                      "CG: <p, Ap> = " + std::to_string(pap) + " <= 0 at iteration " + std::to_string(iteration));
  }
}

void check_finite(double v, const char* what, int iteration) {
  if (!std::isfinite(v)) {
    throw SolverError(SolverError::Reason::NonFinite,
                      std::string("CG: non-finite ") + what + " at iteration " + std::to_string(iteration));
  }
}

void finish(const LinearAction& apply_a, std::span<const double> b, double norm_b, SolveReport& rep) {
  std::vector<double> ax(b.size());
  apply_a(rep.solution, ax);
  for (std::size_t i = 0; i < ax.size(); ++i) ax[i] = b[i] - ax[i];
  rep.true_relative_residual = norm2(ax) / norm_b;
}

}  // namespace

SolveReport pcg(const LinearAction& apply_a, const LinearAction& apply_pinv, std::span<const double> b,
                const SolverConfig& cfg) {
  cfg.validate();
  const std::size_t n = b.size();
  SolveReport rep;
  rep.solution.assign(n, 0.0);

  std::vector<double> r(b.begin(), b.end());
  const double norm_r0 = norm2(r);
  check_finite(norm_r0, "right-hand side", 0);
  if (norm_r0 == 0.0) {
    rep.converged = true;
    return rep;
  }

  std::vector<double> z(n), p(n), q(n);
  double rho_prev = 0.0;
  double rel = 1.0;
  int it = 0;
  while (it < cfg.max_iterations) {
    ++it;
    apply_pinv(r, z);
    const double rho = dot(r, z);
    check_finite(rho, "<r, z>", it);
    if (it == 1) {
      detail::copy(z, p);
    } else {
      xpby(z, rho / rho_prev, p);
    }
    apply_a(p, q);
    const double pq = dot(p, q);
    check_curvature(pq, it);
    const double step = rho / pq;
    axpy(step, p, rep.solution);
    axpy(-step, q, r);
    rho_prev = rho;
    rel = norm2(r) / norm_r0;
    check_finite(rel, "residual", it);
    if (rel <= cfg.tolerance) {
      rep.converged = true;
      break;
    }
  }
  rep.iterations = it;
  rep.final_relative_residual = rel;
  finish(apply_a, b, norm_r0, rep);
  return rep;
}

SolveReport cg(const LinearAction& apply_a, std::span<const double> b, const SolverConfig& cfg) {
  cfg.validate();
  const std::size_t n = b.size();
  SolveReport rep;
  rep.solution.assign(n, 0.0);

  std::vector<double> r(b.begin(), b.end());
  const double norm_r0 = norm2(r);
  check_finite(norm_r0, "right-hand side", 0);
  if (norm_r0 == 0.0) {
    rep.converged = true;
    return rep;
  }

  std::vector<double> p(n), q(n);
  double rr_prev = 0.0;
  double rel = 1.0;
  int it = 0;
  while (it < cfg.max_iterations) {
    ++it;
    const double rr = dot(r, r);
    check_finite(rr, "<r, r>", it);
    if (it == 1) {
      detail::copy(r, p);
    } else {
      xpby(r, rr / rr_prev, p);
    }
    apply_a(p, q);
    const double pq = dot(p, q);
    check_curvature(pq, it);
    const double step = rr / pq;
    axpy(step, p, rep.solution);
    axpy(-step, q, r);
    rr_prev = rr;
    rel = norm2(r) / norm_r0;
    check_finite(rel, "residual", it);
    if (rel <= cfg.tolerance) {
      rep.converged = true;
      break;
    }
  }
  rep.iterations = it;
  rep.final_relative_residual = rel;
  finish(apply_a, b, norm_r0, rep);
  return rep;
}

LinearAction as_action(const Preconditioner& p) {
  return [&p](std::span<const double> in, std::span<double> out) { p.apply_inverse(in, out); };
}

}  // namespace fracrd

#include <doctest.h>

#include <cmath>

#include "fracrd/krylov.hpp"
#include "oracles.hpp"

using namespace fracrd;

namespace {

LinearAction dense_action(const Eigen::MatrixXd& m) {
  return [&m](std::span<const double> in, std::span<double> out) {
    Eigen::Map<Eigen::VectorXd>(out.data(), m.rows()) = m * oracle::as_eigen(in);
  };
}

Eigen::MatrixXd random_spd(std::size_t n, std::uint64_t seed) {
  const auto v = oracle::random_vector(n * n, seed);
  const Eigen::Map<const Eigen::MatrixXd> g(v.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  return g * g.transpose() + static_cast<double>(n) * Eigen::MatrixXd::Identity(n, n);
}

}  // namespace

TEST_CASE("zero right-hand side returns immediately") {
  const Eigen::MatrixXd a = random_spd(5, 1);
  const std::vector<double> b(5, 0.0);
  const auto rep = pcg(dense_action(a), as_action(IdentityPreconditioner{}), b, SolverConfig{});
  CHECK(rep.iterations == 0);
  CHECK(rep.converged);
  CHECK(rep.solution == b);
}

TEST_CASE("identity operator converges in one iteration") {
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(7, 7);
  const auto b = oracle::random_vector(7, 2);
  const auto rep = cg(dense_action(a), b, SolverConfig{});
  CHECK(rep.iterations == 1);
  CHECK(oracle::rel_diff(oracle::as_eigen(rep.solution), oracle::as_eigen(b)) <= 1e-15);
}

TEST_CASE("SPD system agrees with a direct solve; finite termination") {
  const std::size_t n = 30;
  const Eigen::MatrixXd a = random_spd(n, 3);
  const auto b = oracle::random_vector(n, 4);
  const Eigen::VectorXd x = a.ldlt().solve(oracle::as_eigen(b));
  const auto rep = cg(dense_action(a), b, SolverConfig{});
  CHECK(rep.converged);
  CHECK(rep.iterations <= static_cast<int>(n) + 5);
  CHECK(rep.final_relative_residual <= 1e-10);
  CHECK(rep.true_relative_residual <= 1e-9);
  CHECK(oracle::rel_diff(oracle::as_eigen(rep.solution), x) <= 1e-8);

  // diagonal system with 3 distinct eigenvalues: at most 3 iterations
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = 1.0 + static_cast<double>(i % 3);
  CHECK(cg(dense_action(d), b, SolverConfig{}).iterations <= 3);
}

TEST_CASE("a diagonal preconditioner equal to A converges at once") {
  const std::size_t n = 20;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) d(i, i) = 1.0 + static_cast<double>(i);
  const LinearAction pinv = [&](std::span<const double> in, std::span<double> out) {
    for (std::size_t i = 0; i < n; ++i) out[i] = in[i] / d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
  };
  const auto b = oracle::random_vector(n, 5);
  const auto rep = pcg(dense_action(d), pinv, b, SolverConfig{});
  CHECK(rep.iterations == 1);
}

TEST_CASE("PCG with the identity reproduces CG bit for bit") {
  const Eigen::MatrixXd a = random_spd(40, 6);
  const auto b = oracle::random_vector(40, 7);
  const auto plain = cg(dense_action(a), b, SolverConfig{});
  const auto pre = pcg(dense_action(a), as_action(IdentityPreconditioner{}), b, SolverConfig{});
  CHECK(plain.iterations == pre.iterations);
  CHECK(plain.solution == pre.solution);
  CHECK(plain.final_relative_residual == pre.final_relative_residual);
}

TEST_CASE("iteration cap and failure modes") {
  const Eigen::MatrixXd a = random_spd(50, 8);
  const auto b = oracle::random_vector(50, 9);
  SolverConfig capped;
  capped.max_iterations = 3;
  const auto rep = cg(dense_action(a), b, capped);
  CHECK_FALSE(rep.converged);
  CHECK(rep.iterations == 3);

  const Eigen::MatrixXd neg = -Eigen::MatrixXd::Identity(4, 4);
  const std::vector<double> ones(4, 1.0);
  CHECK_THROWS_AS(cg(dense_action(neg), ones, SolverConfig{}), SolverError);

  std::vector<double> bad = ones;
  bad[2] = std::nan("");
  CHECK_THROWS_AS(cg(dense_action(Eigen::MatrixXd::Identity(4, 4)), bad, SolverConfig{}), SolverError);

  SolverConfig invalid;
  invalid.tolerance = -1.0;
  CHECK_THROWS(invalid.validate());
}

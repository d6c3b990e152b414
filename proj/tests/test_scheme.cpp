#include <doctest.h>

#include <cmath>
#include <random>

#include "fracrd/scheme.hpp"
#include "oracles.hpp"

using namespace fracrd;

namespace {

SolverConfig tight(PreconditionerKind k = PreconditionerKind::Tau) {
  SolverConfig c;
  c.preconditioner = k;
  return c;
}

ProblemSpec zero_source_problem() {
  ProblemSpec p = fisher_problem(FractionalOrder(1.5), FractionalOrder(1.5));
  p.name = "zero";
  p.source = [](double, double, double, double) { return 0.0; };
  p.initial = [](double, double) { return 0.0; };
  p.exact = nullptr;
  return p;
}

}  // namespace

TEST_CASE("Fisher exact solution values") {
  const auto p = fisher_problem(FractionalOrder(1.1), FractionalOrder(1.2));
  CHECK(p.exact(0.5, 0.5, 0.0) == doctest::Approx(1e5 * std::pow(0.5, 20)).epsilon(1e-14));
  CHECK(p.exact(0.3, 0.7, 1.0) ==
        doctest::Approx(1e5 * std::exp(-1.0) * std::pow(0.3 * 0.7, 5) * std::pow(0.7 * 0.3, 5)).epsilon(1e-14));
  for (double s : {0.0, 0.25, 1.0}) {
    CHECK(p.exact(0.0, s, 0.4) == 0.0);
    CHECK(p.exact(1.0, s, 0.4) == 0.0);
    CHECK(p.exact(s, 0.0, 0.4) == 0.0);
    CHECK(p.exact(s, 1.0, 0.4) == 0.0);
  }
  CHECK(p.k_alpha == 5.0);
  CHECK(p.k_beta == 30.0);
  CHECK(p.final_time == 1.0);
}

TEST_CASE("Riesz derivative of the bump matches the monomial oracle") {
  for (double g : {1.1, 1.5, 1.9}) {
    for (double x : {0.05, 0.3, 0.5, 0.77, 0.99}) {
      CHECK(riesz_derivative_power_bump(g, 5, 0.0, 1.0, x) ==
            doctest::Approx(oracle::riesz_of_beta_polynomial(g, 5, 5, x)).epsilon(1e-10));
    }
    // shifted and stretched interval: L^{2p-g} times the unit-interval value
    const double a = -1.0, b = 2.0, len = 3.0;
    const double x = 0.4, z = (x - a) / len;
    CHECK(riesz_derivative_power_bump(g, 3, a, b, x) ==
          doctest::Approx(std::pow(len, 6.0 - g) * oracle::riesz_of_beta_polynomial(g, 3, 3, z)).epsilon(1e-10));
  }
}

TEST_CASE("manufactured forcing makes the exact solution a PDE solution") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unit(0.02, 0.98);
  for (auto [a, b] : std::vector<std::pair<double, double>>{{1.1, 1.2}, {1.8, 1.9}}) {
    const auto p = fisher_problem(FractionalOrder(a), FractionalOrder(b));
    for (int i = 0; i < 10; ++i) {
      const double x = unit(rng), y = unit(rng), t = unit(rng);
      const double scale = 1e5 * std::exp(-t);
      const double X = std::pow(x * (1 - x), 5), Y = std::pow(y * (1 - y), 5);
      const double u = scale * X * Y;
      const double u_t = -u;
      const double rx = scale * oracle::riesz_of_beta_polynomial(a, 5, 5, x) * Y;
      const double ry = scale * X * oracle::riesz_of_beta_polynomial(b, 5, 5, y);
      const double lhs = u_t;
      const double rhs = 5.0 * rx + 30.0 * ry + p.source(x, y, t, u);
      const double mag = std::abs(u_t) + std::abs(5.0 * rx) + std::abs(30.0 * ry);
      CHECK(std::abs(lhs - rhs) <= 1e-8 * mag);
    }
  }
}

TEST_CASE("source_vector: zero, identity, Fisher pointwise") {
  const GridSpec g = GridSpec::unit_square(7);
  const FieldVector u(7, 7, oracle::random_vector(49, 3));

  auto p = zero_source_problem();
  const auto z = source_vector(p, g, 0.3, u);
  for (double v : z.values()) CHECK(v == 0.0);

  p.source = [](double, double, double, double w) { return w; };
  CHECK(source_vector(p, g, 0.3, u) == u);

  const auto fisher = fisher_problem(FractionalOrder(1.4), FractionalOrder(1.5));
  const auto u0 = sample_initial(fisher, g);
  const auto f0 = source_vector(fisher, g, 0.0, u0);
  for (auto [i, j] : {std::pair<std::size_t, std::size_t>{0, 0}, {3, 3}, {6, 1}, {2, 5}, {4, 0}}) {
    const double x = g.x(i), y = g.y(j);
    CHECK(std::isfinite(f0(i, j)));
    CHECK(f0(i, j) == doctest::Approx(fisher.source(x, y, 0.0, u0(i, j))).epsilon(1e-15));
    CHECK(u0(i, j) == doctest::Approx(fisher.exact(x, y, 0.0)).epsilon(1e-15));
  }

  auto bad = zero_source_problem();
  bad.source = [](double, double, double, double) { return std::nan(""); };
  CHECK_THROWS_AS(source_vector(bad, g, 0.0, u), ProblemError);
}

TEST_CASE("zero is a fixed point") {
  const auto p = zero_source_problem();
  const auto res = run(p, 4, 15, 15, tight());
  for (double v : res.solution.values()) CHECK(v == 0.0);
  for (int it : res.iterations) CHECK(it == 0);
}

TEST_CASE("linear source: RHS is (I - J) U0 + dt U0 at the first step") {
  auto p = fisher_problem(FractionalOrder(1.3), FractionalOrder(1.7));
  p.source = [](double, double, double, double w) { return w; };
  const GridSpec g = p.grid(9, 9);
  const double dt = 0.05;
  const DiscreteOperator op(g, p.alpha, p.beta, p.k_alpha, p.k_beta, dt);
  const auto u0 = sample_initial(p, g);
  const auto rhs = step_rhs(op, p, TimeStepState::initial(u0), dt);
  const auto expl = op.apply_explicit(u0);
  for (std::size_t k = 0; k < u0.size(); ++k)
    CHECK(rhs.values()[k] == doctest::Approx(expl.values()[k] + dt * u0.values()[k]).epsilon(1e-14));
}

TEST_CASE("one step agrees with a dense direct solve") {
  const auto p = fisher_problem(FractionalOrder(1.4), FractionalOrder(1.5));
  const std::size_t n = 31;
  const GridSpec g = p.grid(n, n);
  const double dt = 1.0 / 32;
  const DiscreteOperator op(g, p.alpha, p.beta, p.k_alpha, p.k_beta, dt);
  const auto state = TimeStepState::initial(sample_initial(p, g));
  const auto rhs = step_rhs(op, p, state, dt);
  const Eigen::VectorXd direct = dense_assemble(op).llt().solve(oracle::as_eigen(rhs.span()));
  for (auto kind : {PreconditionerKind::Tau, PreconditionerKind::Identity, PreconditionerKind::ChanCirculant}) {
    const auto out = step(op, p, state, dt, tight(kind));
    CHECK(out.state.m == 1);
    CHECK(out.state.previous == state.current);
    CHECK(oracle::rel_diff(oracle::as_eigen(out.state.current.span()), direct) <= 1e-8);
  }
}

TEST_CASE("run with M = 1 equals a single step; reruns are bitwise identical") {
  const auto p = fisher_problem(FractionalOrder(1.8), FractionalOrder(1.9));
  const auto cfg = tight();
  const auto once = run(p, 1, 15, 15, cfg);
  const GridSpec g = p.grid(15, 15);
  const DiscreteOperator op(g, p.alpha, p.beta, p.k_alpha, p.k_beta, 1.0);
  const auto st = step(op, p, TimeStepState::initial(sample_initial(p, g)), 1.0, cfg);
  CHECK(once.solution == st.state.current);
  REQUIRE(once.iterations.size() == 1);
  CHECK(once.iterations[0] == st.report.iterations);

  const auto a = run(p, 6, 31, 31, cfg);
  const auto b = run(p, 6, 31, 31, cfg);
  CHECK(a.solution == b.solution);
  CHECK(a.iterations == b.iterations);
  for (double v : a.solution.values()) CHECK(std::isfinite(v));
}

TEST_CASE("operator built for another dt is rejected; bad step counts too") {
  const auto p = fisher_problem(FractionalOrder(1.5), FractionalOrder(1.5));
  const GridSpec g = p.grid(7, 7);
  const DiscreteOperator op(g, p.alpha, p.beta, p.k_alpha, p.k_beta, 0.1);
  const auto st = TimeStepState::initial(sample_initial(p, g));
  CHECK_THROWS_AS(step(op, p, st, 0.2, tight()), std::invalid_argument);
  CHECK_THROWS_AS(run(p, 0, 7, 7, tight()), std::invalid_argument);
}

TEST_CASE("iteration cap surfaces as StepFailure") {
  const auto p = fisher_problem(FractionalOrder(1.5), FractionalOrder(1.5));
  SolverConfig cfg = tight(PreconditionerKind::Identity);
  cfg.max_iterations = 2;
  CHECK_THROWS_AS(run(p, 2, 31, 31, cfg), StepFailure);
}

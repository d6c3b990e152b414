#include <doctest.h>

#include "fracrd/preconditioners.hpp"
#include "oracles.hpp"

using namespace fracrd;

namespace {

Eigen::MatrixXd circulant(std::span<const double> c) {
  const auto n = static_cast<Eigen::Index>(c.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = c[static_cast<std::size_t>(((i - j) % n + n) % n)];
  return m;
}

GridSpec rect(std::size_t nx, std::size_t ny) {
  GridSpec g;
  g.nx = nx;
  g.ny = ny;
  return g;
}

}  // namespace

TEST_CASE("parse and print preconditioner kinds") {
  for (auto k : {PreconditionerKind::Identity, PreconditionerKind::Tau, PreconditionerKind::StrangCirculant,
                 PreconditionerKind::ChanCirculant}) {
    CHECK(parse_preconditioner_kind(to_string(k)) == k);
  }
  CHECK_FALSE(parse_preconditioner_kind("jacobi").has_value());
}

TEST_CASE("Strang and Chan first columns") {
  const std::vector<double> t{4.0, 3.0, 2.0, 1.0};
  const auto s = strang_first_column(t);
  const auto c = chan_first_column(t);
  const std::vector<double> se{4.0, 3.0, 2.0, 3.0}, ce{4.0, 2.5, 2.0, 2.5};
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(s[k] == doctest::Approx(se[k]));
    CHECK(c[k] == doctest::Approx(ce[k]));
  }
}

TEST_CASE("Chan's circulant is Frobenius-optimal") {
  const std::size_t n = 12;
  const auto t = oracle::random_vector(n, 21);
  const Eigen::MatrixXd tm = oracle::toeplitz(t);
  const auto c = chan_first_column(t);
  const double best = (circulant(c) - tm).norm();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto other = c;
    const auto d = oracle::random_vector(n, 500 + seed);
    for (std::size_t k = 0; k < n; ++k) other[k] += 0.1 * d[k];
    CHECK((circulant(other) - tm).norm() > best);
  }
}

TEST_CASE("circulant eigenvalues of a symmetric column are real") {
  const auto t = oracle::random_vector(33, 8);
  const auto spec = circulant_eigenvalues(strang_first_column(t));
  CHECK(spec.max_imag <= 1e-12);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(circulant(strang_first_column(t)), Eigen::EigenvaluesOnly);
  auto got = spec.eigenvalues;
  std::sort(got.begin(), got.end());
  for (std::size_t j = 0; j < got.size(); ++j)
    CHECK(got[j] == doctest::Approx(es.eigenvalues()(static_cast<Eigen::Index>(j))).epsilon(1e-11));
}

TEST_CASE("tau preconditioner: dense round trip and positive spectrum") {
  for (auto [a, b] : std::vector<std::pair<double, double>>{{1.1, 1.2}, {1.5, 1.5}, {1.9, 1.7}}) {
    const DiscreteOperator op(rect(11, 8), FractionalOrder(a), FractionalOrder(b), 1.0, 1.0, 0.02);
    const auto p = TauPreconditioner::build(op);
    for (double l : p.eigen_grid()) CHECK(l > 1.0);

    // independent dense P = I + eta_a I (x) Q tau(A^) + ..., A^ the second-order FCD matrix
    auto direction = [](FractionalOrder g, std::size_t n) {
      const auto w = fcd_weights(g, n);
      std::vector<double> t(w.one_sided().begin(), w.one_sided().end());
      Eigen::MatrixXd tau = oracle::toeplitz(t);
      if (n > 2) tau -= oracle::hankel_correction(t);
      Eigen::MatrixXd q = Eigen::MatrixXd::Identity(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        q(i, i) += 2.0 * g / 24.0;
        if (i + 1 < n) q(i, i + 1) = q(i + 1, i) = -g / 24.0;
      }
      return Eigen::MatrixXd(q * tau);
    };
    const Eigen::MatrixXd pd =
        Eigen::MatrixXd::Identity(88, 88) +
        oracle::kron_sum(op.eta_alpha() * direction(op.alpha(), 11), op.eta_beta() * direction(op.beta(), 8));
    CHECK((dense_tau_preconditioner(p) - pd).norm() <= 1e-11 * pd.norm());

    const auto r = oracle::random_vector(88, 1);
    std::vector<double> z(88);
    p.apply_inverse(r, z);
    CHECK(oracle::rel_diff(pd * oracle::as_eigen(z), oracle::as_eigen(r)) <= 1e-10);
    // aliasing is allowed
    auto rz = r;
    p.apply_inverse(rz, rz);
    CHECK(oracle::rel_diff(oracle::as_eigen(rz), oracle::as_eigen(z)) == 0.0);
  }
}

TEST_CASE("circulant preconditioners: dense round trip, tiny residue") {
  for (auto kind : {PreconditionerKind::StrangCirculant, PreconditionerKind::ChanCirculant}) {
    const DiscreteOperator op(rect(10, 7), FractionalOrder(1.3), FractionalOrder(1.6), 1.0, 1.0, 0.02);
    const auto p = CirculantPreconditioner::build(op, kind);
    CHECK(p.kind() == kind);
    CHECK(p.spectrum_imag_residue() <= 1e-12);
    const Eigen::MatrixXd pd = dense_circulant_preconditioner(op, kind);
    const auto r = oracle::random_vector(70, 2);
    std::vector<double> z(70);
    const double residue = p.apply_inverse_with_residue(r, z);
    CHECK(residue <= 1e-12);
    CHECK(oracle::rel_diff(pd * oracle::as_eigen(z), oracle::as_eigen(r)) <= 1e-10);
  }
}

TEST_CASE("1x1 preconditioners are scalars") {
  const auto op = DiscreteOperator::from_eta(rect(1, 1), FractionalOrder(1.4), FractionalOrder(1.6), 0.5, 0.25);
  const double s0a = fourth_order_weights(FractionalOrder(1.4), 1)[0];
  const double s0b = fourth_order_weights(FractionalOrder(1.6), 1)[0];
  const double g0a = fcd_weights(FractionalOrder(1.4), 1)[0];
  const double g0b = fcd_weights(FractionalOrder(1.6), 1)[0];
  const auto tau = TauPreconditioner::build(op);
  // Q eigenvalue for n = 1: 1 + g/6 sin^2(pi/4) = 1 + g/12
  CHECK(tau.eigen_grid()[0] ==
        doctest::Approx(1.0 + 0.5 * (1.0 + 1.4 / 12.0) * g0a + 0.25 * (1.0 + 1.6 / 12.0) * g0b).epsilon(1e-14));
  const auto strang = CirculantPreconditioner::build(op, PreconditionerKind::StrangCirculant);
  CHECK(strang.eigen_grid()[0] == doctest::Approx(1.0 + 0.5 * s0a + 0.25 * s0b).epsilon(1e-14));
}

TEST_CASE("identity and the factory") {
  const auto op = DiscreteOperator::from_eta(rect(4, 4), FractionalOrder(1.4), FractionalOrder(1.6), 0.5, 0.25);
  for (auto k : {PreconditionerKind::Identity, PreconditionerKind::Tau, PreconditionerKind::StrangCirculant,
                 PreconditionerKind::ChanCirculant}) {
    CHECK(make_preconditioner(op, k)->kind() == k);
  }
  const auto r = oracle::random_vector(16, 3);
  std::vector<double> z(16);
  IdentityPreconditioner{}.apply_inverse(r, z);
  CHECK(z == r);
  CHECK_THROWS_AS(TauPreconditioner(2, 2, {1.0, 2.0, 0.0, 1.0}), PreconditionerError);
}

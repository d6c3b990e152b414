#include "fracrd/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fracrd/detail/lines.hpp"
#include "fracrd/reference.hpp"

namespace fracrd {

void GridSpec::validate() const {
  if (!(x_right > x_left) || !(y_up > y_down)) throw std::invalid_argument("GridSpec: empty domain");
  if (nx < 1 || ny < 1) throw std::invalid_argument("GridSpec: need at least one interior node per direction");
}

GridSpec GridSpec::unit_square(std::size_t n_interior) {
  GridSpec g;
  g.nx = n_interior;
  g.ny = n_interior;
  g.validate();
  return g;
}

namespace {

std::size_t embedding_length(std::size_t n) {
  if (n == 0) throw std::invalid_argument("SymmetricToeplitz: empty first column");
  return detail::good_fft_size(2 * n - 1);
}

}  // namespace

SymmetricToeplitz::SymmetricToeplitz(std::vector<double> first_column)
    : t_(std::move(first_column)), embed_(embedding_length(t_.size())) {
  // Circulant of length L whose leading n x n block is T.
  detail::AlignedVector<double> c(embed_, 0.0);
  const std::size_t n = t_.size();
  c[0] = t_[0];
  for (std::size_t k = 1; k < n; ++k) {
    c[k] = t_[k];
    c[embed_ - k] = t_[k];
  }
  Workspace ws(embed_);
  ws.dft.forward(c.data(), ws.spec.data());
  symbol_.resize(ws.dft.bins());
  const double inv = 1.0 / static_cast<double>(embed_);
  for (std::size_t k = 0; k < symbol_.size(); ++k) symbol_[k] = ws.spec[k].real() * inv;
}

void SymmetricToeplitz::apply(std::span<const double> in, std::span<double> out, Workspace& ws) const {
  const std::size_t n = t_.size();
  if (n == 1) {
    out[0] = t_[0] * in[0];
    return;
  }
  std::copy(in.begin(), in.begin() + static_cast<std::ptrdiff_t>(n), ws.pad.begin());
  std::fill(ws.pad.begin() + static_cast<std::ptrdiff_t>(n), ws.pad.end(), 0.0);
  ws.dft.forward(ws.pad.data(), ws.spec.data());
  for (std::size_t k = 0; k < symbol_.size(); ++k) ws.spec[k] *= symbol_[k];
  ws.dft.backward(ws.spec.data(), ws.pad.data());
  std::copy(ws.pad.begin(), ws.pad.begin() + static_cast<std::ptrdiff_t>(n), out.begin());
}

std::vector<double> SymmetricToeplitz::apply(std::span<const double> in) const {
  if (in.size() != t_.size()) throw std::invalid_argument("SymmetricToeplitz::apply: size mismatch");
  std::vector<double> out(in.size());
  Workspace ws(embed_);
  apply(in, out, ws);
  return out;
}

std::vector<double> sym_toeplitz_matvec(std::span<const double> t, std::span<const double> v) {
  return SymmetricToeplitz(std::vector<double>(t.begin(), t.end())).apply(v);
}

DiscreteOperator::DiscreteOperator(const GridSpec& grid, FractionalOrder alpha, FractionalOrder beta,
                                   double eta_alpha, double eta_beta, std::optional<double> dt)
    : grid_(grid),
      alpha_(alpha),
      beta_(beta),
      eta_alpha_(eta_alpha),
      eta_beta_(eta_beta),
      dt_(dt),
      wx_(fourth_order_weights(alpha, grid.nx)),
      wy_(fourth_order_weights(beta, grid.ny)),
      ax_(std::vector<double>(wx_.one_sided().begin(), wx_.one_sided().end())),
      ay_(std::vector<double>(wy_.one_sided().begin(), wy_.one_sided().end())) {
  grid_.validate();
  if (!(eta_alpha_ >= 0.0) || !(eta_beta_ >= 0.0) || !std::isfinite(eta_alpha_) || !std::isfinite(eta_beta_)) {
    throw std::invalid_argument("DiscreteOperator: scaled coefficients must be finite and non-negative");
  }
}

namespace {

double eta(double k, double dt, double h, double order) {
  if (!(k > 0.0)) throw std::invalid_argument("DiscreteOperator: diffusion constant must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("DiscreteOperator: time step must be positive");
  return k * dt / (2.0 * std::pow(h, order));
}

}  // namespace

DiscreteOperator::DiscreteOperator(const GridSpec& grid, FractionalOrder alpha, FractionalOrder beta,
                                   double k_alpha, double k_beta, double dt)
    : DiscreteOperator(grid, alpha, beta, eta(k_alpha, dt, grid.hx(), alpha), eta(k_beta, dt, grid.hy(), beta),
                       std::optional<double>(dt)) {}

DiscreteOperator DiscreteOperator::from_eta(const GridSpec& grid, FractionalOrder alpha, FractionalOrder beta,
                                            double eta_alpha, double eta_beta) {
  return DiscreteOperator(grid, alpha, beta, eta_alpha, eta_beta, std::nullopt);
}

void DiscreteOperator::check_shape(std::span<const double> in, std::span<const double> out) const {
  if (in.size() != grid_.size() || out.size() != grid_.size()) {
    throw std::invalid_argument("DiscreteOperator: vector of length " + std::to_string(in.size()) +
                                " does not conform to a " + std::to_string(grid_.nx) + "x" +
                                std::to_string(grid_.ny) + " grid");
  }
}

void DiscreteOperator::require_conforming(const FieldVector& u) const {
  if (!u.conforms_to(grid_)) {
    throw std::invalid_argument("DiscreteOperator: field of shape " + std::to_string(u.nx()) + "x" +
                                std::to_string(u.ny()) + " does not conform to the operator grid");
  }
}

void DiscreteOperator::apply_J(std::span<const double> in, std::span<double> out) const {
  check_shape(in, out);
  if (in.data() == out.data()) throw std::invalid_argument("DiscreteOperator::apply_J: in and out alias");
  auto kernel = [](const SymmetricToeplitz& t) {
    return [&t](std::span<const double> a, std::span<double> b, SymmetricToeplitz::Workspace& ws) {
      t.apply(a, b, ws);
    };
  };
  detail::for_each_line(in, out, grid_.nx, grid_.ny, detail::Axis::X, detail::Combine::Assign, eta_alpha_,
                        [this] { return ax_.make_workspace(); }, kernel(ax_));
  detail::for_each_line(in, out, grid_.nx, grid_.ny, detail::Axis::Y, detail::Combine::Add, eta_beta_,
                        [this] { return ay_.make_workspace(); }, kernel(ay_));
}

void DiscreteOperator::apply_implicit(std::span<const double> in, std::span<double> out) const {
  apply_J(in, out);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = in[k] + out[k];
}

void DiscreteOperator::apply_explicit(std::span<const double> in, std::span<double> out) const {
  apply_J(in, out);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = in[k] - out[k];
}

FieldVector DiscreteOperator::apply_J(const FieldVector& u) const {
  FieldVector out(grid_.nx, grid_.ny);
  require_conforming(u);
  apply_J(u.span(), out.span());
  return out;
}

FieldVector DiscreteOperator::apply_implicit(const FieldVector& u) const {
  FieldVector out(grid_.nx, grid_.ny);
  require_conforming(u);
  apply_implicit(u.span(), out.span());
  return out;
}

FieldVector DiscreteOperator::apply_explicit(const FieldVector& u) const {
  FieldVector out(grid_.nx, grid_.ny);
  require_conforming(u);
  apply_explicit(u.span(), out.span());
  return out;
}

Eigen::MatrixXd kronecker_sum(const Eigen::MatrixXd& mx, const Eigen::MatrixXd& my) {
  const Eigen::Index nx = mx.rows();
  const Eigen::Index ny = my.rows();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(nx * ny, nx * ny);
  for (Eigen::Index j = 0; j < ny; ++j) {
    out.block(j * nx, j * nx, nx, nx) += mx;
    for (Eigen::Index q = 0; q < ny; ++q) {
      out.block(j * nx, q * nx, nx, nx).diagonal().array() += my(j, q);
    }
  }
  return out;
}

Eigen::MatrixXd dense_assemble_J(const DiscreteOperator& op, std::size_t cap) {
  const GridSpec& g = op.grid();
  if (g.size() > cap) {
    throw std::length_error("dense assembly refused: " + std::to_string(g.size()) + " unknowns exceed cap " +
                            std::to_string(cap));
  }
  const Eigen::MatrixXd ax = reference::toeplitz_matrix(op.weights_x().one_sided());
  const Eigen::MatrixXd ay = reference::toeplitz_matrix(op.weights_y().one_sided());
  return kronecker_sum(op.eta_alpha() * ax, op.eta_beta() * ay);
}

Eigen::MatrixXd dense_assemble(const DiscreteOperator& op, std::size_t cap) {
  Eigen::MatrixXd m = dense_assemble_J(op, cap);
  m.diagonal().array() += 1.0;
  return m;
}

}  // namespace fracrd

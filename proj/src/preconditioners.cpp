#include "fracrd/preconditioners.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracrd/detail/fft.hpp"
#include "fracrd/reference.hpp"
#include "fracrd/transforms.hpp"

namespace fracrd {

namespace {

constexpr double kMinEigenvalue = 1e-14;

void require_size(std::span<const double> r, std::span<double> z, std::size_t n) {
  if (r.size() != n || z.size() != n) throw std::invalid_argument("preconditioner: vector does not conform to grid");
}

std::vector<double> kronecker_sum_grid(std::span<const double> lx, std::span<const double> ly, double eta_x,
                                       double eta_y) {
  std::vector<double> grid(lx.size() * ly.size());
  for (std::size_t j = 0; j < ly.size(); ++j) {
    for (std::size_t i = 0; i < lx.size(); ++i) grid[i + lx.size() * j] = 1.0 + eta_x * lx[i] + eta_y * ly[j];
  }
  return grid;
}

void require_positive(std::span<const double> values, std::string_view what) {
  const auto it = std::find_if(values.begin(), values.end(), [](double v) { return !(v > kMinEigenvalue); });
  if (it != values.end()) {
    throw PreconditionerError(std::string(what) + ": eigenvalue " + std::to_string(*it) + " at index " +
                              std::to_string(it - values.begin()) + " is not positive");
  }
}

}  // namespace

std::string_view to_string(PreconditionerKind kind) {
  switch (kind) {
    case PreconditionerKind::Identity: return "identity";
    case PreconditionerKind::Tau: return "tau";
    case PreconditionerKind::StrangCirculant: return "strang";
    case PreconditionerKind::ChanCirculant: return "chan";
  }
  return "unknown";
}

std::optional<PreconditionerKind> parse_preconditioner_kind(std::string_view name) {
  for (auto k : {PreconditionerKind::Identity, PreconditionerKind::Tau, PreconditionerKind::StrangCirculant,
                 PreconditionerKind::ChanCirculant}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

void IdentityPreconditioner::apply_inverse(std::span<const double> r, std::span<double> z) const {
  if (r.size() != z.size()) throw std::invalid_argument("preconditioner: size mismatch");
  if (r.data() != z.data()) std::copy(r.begin(), r.end(), z.begin());
}

// ---------------------------------------------------------------- tau

std::vector<double> tau_direction_eigenvalues(FractionalOrder order, std::size_t n) {
  const WeightTable g = fcd_weights(order, n);
  std::vector<double> lambda = tau_eigenvalues(tau_projection(g.one_sided()));
  const std::vector<double> q = q_gamma_eigenvalues(order, n);
  for (std::size_t j = 0; j < n; ++j) lambda[j] *= q[j];
  return lambda;
}

TauPreconditioner::TauPreconditioner(std::size_t nx, std::size_t ny, std::vector<double> eigen_grid)
    : nx_(nx), ny_(ny), eigen_grid_(std::move(eigen_grid)) {
  if (eigen_grid_.size() != nx_ * ny_ || eigen_grid_.empty()) {
    throw std::invalid_argument("TauPreconditioner: eigenvalue grid does not match nx*ny");
  }
  require_positive(eigen_grid_, "tau preconditioner");
}

TauPreconditioner TauPreconditioner::build(const DiscreteOperator& op) {
  const GridSpec& g = op.grid();
  const auto lx = tau_direction_eigenvalues(op.alpha(), g.nx);
  const auto ly = tau_direction_eigenvalues(op.beta(), g.ny);
  require_positive(lx, "tau preconditioner (x direction)");
  require_positive(ly, "tau preconditioner (y direction)");
  return TauPreconditioner(g.nx, g.ny, kronecker_sum_grid(lx, ly, op.eta_alpha(), op.eta_beta()));
}

void TauPreconditioner::apply_inverse(std::span<const double> r, std::span<double> z) const {
  require_size(r, z, eigen_grid_.size());
  if (r.data() != z.data()) std::copy(r.begin(), r.end(), z.begin());
  dst1_2d(z, nx_, ny_);
  const auto n = static_cast<std::ptrdiff_t>(z.size());
#pragma omp parallel for schedule(static) if (n > 8192)
  for (std::ptrdiff_t k = 0; k < n; ++k) z[k] /= eigen_grid_[k];
  dst1_2d(z, nx_, ny_);
}

Eigen::MatrixXd dense_tau_preconditioner(const TauPreconditioner& p) {
  const Eigen::MatrixXd S = reference::sine_matrix_2d(p.nx(), p.ny());
  const Eigen::Map<const Eigen::VectorXd> lambda(p.eigen_grid().data(),
                                                 static_cast<Eigen::Index>(p.eigen_grid().size()));
  return S * lambda.asDiagonal() * S;
}

// ---------------------------------------------------------------- circulant

std::vector<double> strang_first_column(std::span<const double> t) {
  const std::size_t n = t.size();
  std::vector<double> c(n);
  for (std::size_t k = 0; k < n; ++k) c[k] = k <= n / 2 ? t[k] : t[n - k];
  return c;
}

std::vector<double> chan_first_column(std::span<const double> t) {
  const std::size_t n = t.size();
  std::vector<double> c(n);
  if (n == 0) return c;
  c[0] = t[0];
  const double dn = static_cast<double>(n);
  for (std::size_t k = 1; k < n; ++k) {
    c[k] = (static_cast<double>(n - k) * t[k] + static_cast<double>(k) * t[n - k]) / dn;
  }
  return c;
}

CirculantSpectrum circulant_eigenvalues(std::span<const double> c) {
  const std::size_t n = c.size();
  if (n == 0) throw std::invalid_argument("circulant_eigenvalues: empty column");
  detail::AlignedVector<detail::Complex> buf(c.begin(), c.end());
  detail::ComplexDft(n).forward(buf.data());
  CirculantSpectrum out;
  out.eigenvalues.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = buf[k].real();
    out.max_imag = std::max(out.max_imag, std::abs(buf[k].imag()));
  }
  return out;
}

namespace {

std::vector<double> circulant_column(std::span<const double> t, PreconditionerKind kind) {
  switch (kind) {
    case PreconditionerKind::StrangCirculant: return strang_first_column(t);
    case PreconditionerKind::ChanCirculant: return chan_first_column(t);
    default: throw std::invalid_argument("not a circulant preconditioner kind");
  }
}

Eigen::MatrixXd dense_circulant(std::span<const double> c) {
  const auto n = static_cast<Eigen::Index>(c.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = c[static_cast<std::size_t>(((i - j) % n + n) % n)];
  }
  return m;
}

// 2D DFT of an x-fastest complex grid, lines distributed over threads and
// copied through aligned scratch.
void dft_2d(std::span<detail::Complex> data, std::size_t nx, std::size_t ny, bool forward) {
  const auto rows = static_cast<std::ptrdiff_t>(ny);
  const auto cols = static_cast<std::ptrdiff_t>(nx);
#pragma omp parallel if (nx * ny > 4096)
  {
    const detail::ComplexDft fx(nx);
    const detail::ComplexDft fy(ny);
    detail::AlignedVector<detail::Complex> line(std::max(nx, ny));
#pragma omp for schedule(static)
    for (std::ptrdiff_t j = 0; j < rows; ++j) {
      auto* row = data.data() + static_cast<std::size_t>(j) * nx;
      std::copy(row, row + nx, line.begin());
      forward ? fx.forward(line.data()) : fx.backward(line.data());
      std::copy(line.begin(), line.begin() + static_cast<std::ptrdiff_t>(nx), row);
    }
#pragma omp for schedule(static)
    for (std::ptrdiff_t i = 0; i < cols; ++i) {
      for (std::size_t j = 0; j < ny; ++j) line[j] = data[static_cast<std::size_t>(i) + nx * j];
      forward ? fy.forward(line.data()) : fy.backward(line.data());
      for (std::size_t j = 0; j < ny; ++j) data[static_cast<std::size_t>(i) + nx * j] = line[j];
    }
  }
}

}  // namespace

CirculantPreconditioner::CirculantPreconditioner(PreconditionerKind kind, std::size_t nx, std::size_t ny,
                                                 std::vector<double> grid, double imag_residue)
    : kind_(kind), nx_(nx), ny_(ny), eigen_grid_(std::move(grid)), imag_residue_(imag_residue) {}

CirculantPreconditioner CirculantPreconditioner::build(const DiscreteOperator& op, PreconditionerKind kind) {
  const auto sx = circulant_eigenvalues(circulant_column(op.weights_x().one_sided(), kind));
  const auto sy = circulant_eigenvalues(circulant_column(op.weights_y().one_sided(), kind));
  auto grid = kronecker_sum_grid(sx.eigenvalues, sy.eigenvalues, op.eta_alpha(), op.eta_beta());
  require_positive(grid, std::string(to_string(kind)) + " circulant preconditioner");
  return CirculantPreconditioner(kind, op.grid().nx, op.grid().ny, std::move(grid),
                                 std::max(sx.max_imag, sy.max_imag));
}

double CirculantPreconditioner::apply_inverse_with_residue(std::span<const double> r, std::span<double> z) const {
  require_size(r, z, eigen_grid_.size());
  detail::AlignedVector<detail::Complex> buf(r.begin(), r.end());
  dft_2d(buf, nx_, ny_, true);
  for (std::size_t k = 0; k < buf.size(); ++k) buf[k] /= eigen_grid_[k];
  dft_2d(buf, nx_, ny_, false);
  const double scale = 1.0 / static_cast<double>(buf.size());
  double residue = 0.0;
  for (std::size_t k = 0; k < buf.size(); ++k) {
    z[k] = buf[k].real() * scale;
    residue = std::max(residue, std::abs(buf[k].imag() * scale));
  }
  return residue;
}

void CirculantPreconditioner::apply_inverse(std::span<const double> r, std::span<double> z) const {
  apply_inverse_with_residue(r, z);
}

Eigen::MatrixXd dense_circulant_preconditioner(const DiscreteOperator& op, PreconditionerKind kind) {
  const Eigen::MatrixXd cx = dense_circulant(circulant_column(op.weights_x().one_sided(), kind));
  const Eigen::MatrixXd cy = dense_circulant(circulant_column(op.weights_y().one_sided(), kind));
  Eigen::MatrixXd m = kronecker_sum(op.eta_alpha() * cx, op.eta_beta() * cy);
  m.diagonal().array() += 1.0;
  return m;
}

std::unique_ptr<Preconditioner> make_preconditioner(const DiscreteOperator& op, PreconditionerKind kind) {
  switch (kind) {
    case PreconditionerKind::Identity: return std::make_unique<IdentityPreconditioner>();
    case PreconditionerKind::Tau: return std::make_unique<TauPreconditioner>(TauPreconditioner::build(op));
    case PreconditionerKind::StrangCirculant:
    case PreconditionerKind::ChanCirculant:
      return std::make_unique<CirculantPreconditioner>(CirculantPreconditioner::build(op, kind));
  }
  throw std::invalid_argument("unknown preconditioner kind");
}

}  // namespace fracrd

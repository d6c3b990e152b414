#include "fracrd/reference.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fracrd::reference {

std::vector<double> dst1(std::span<const double> v) {
  const std::size_t n = v.size();
  const double np1 = static_cast<double>(n + 1);
  const double scale = std::sqrt(2.0 / np1);
  std::vector<double> out(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double s = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      s += std::sin(std::numbers::pi * static_cast<double>((j + 1) * (k + 1)) / np1) * v[k];
    }
    out[j] = scale * s;
  }
  return out;
}

void dst1_2d(std::span<double> grid, std::size_t nx, std::size_t ny) {
  if (grid.size() != nx * ny) throw std::invalid_argument("reference::dst1_2d: grid shape mismatch");
  std::vector<double> line(nx);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) line[i] = grid[i + nx * j];
    const auto t = dst1(line);
    for (std::size_t i = 0; i < nx; ++i) grid[i + nx * j] = t[i];
  }
  line.resize(ny);
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) line[j] = grid[i + nx * j];
    const auto t = dst1(line);
    for (std::size_t j = 0; j < ny; ++j) grid[i + nx * j] = t[j];
  }
}

std::vector<double> toeplitz_matvec(std::span<const double> t, std::span<const double> v) {
  const std::size_t n = v.size();
  if (t.size() != n) throw std::invalid_argument("reference::toeplitz_matvec: size mismatch");
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += t[i > j ? i - j : j - i] * v[j];
    out[i] = s;
  }
  return out;
}

void kronecker_sum_apply(std::span<const double> tx, std::span<const double> ty, double eta_x, double eta_y,
                         std::size_t nx, std::size_t ny, std::span<const double> in, std::span<double> out) {
  if (tx.size() != nx || ty.size() != ny || in.size() != nx * ny || out.size() != nx * ny) {
    throw std::invalid_argument("reference::kronecker_sum_apply: shape mismatch");
  }
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      double sx = 0.0;
      for (std::size_t p = 0; p < nx; ++p) sx += tx[i > p ? i - p : p - i] * in[p + nx * j];
      double sy = 0.0;
      for (std::size_t q = 0; q < ny; ++q) sy += ty[j > q ? j - q : q - j] * in[i + nx * q];
      out[i + nx * j] = eta_x * sx + eta_y * sy;
    }
  }
}

Eigen::MatrixXd sine_matrix(std::size_t n) {
  const auto N = static_cast<Eigen::Index>(n);
  const double np1 = static_cast<double>(n + 1);
  Eigen::MatrixXd S(N, N);
  for (Eigen::Index j = 0; j < N; ++j) {
    for (Eigen::Index k = 0; k < N; ++k) {
      S(j, k) = std::sqrt(2.0 / np1) * std::sin(std::numbers::pi * static_cast<double>((j + 1) * (k + 1)) / np1);
    }
  }
  return S;
}

Eigen::MatrixXd toeplitz_matrix(std::span<const double> t) {
  const auto N = static_cast<Eigen::Index>(t.size());
  Eigen::MatrixXd T(N, N);
  for (Eigen::Index i = 0; i < N; ++i) {
    for (Eigen::Index j = 0; j < N; ++j) T(i, j) = t[static_cast<std::size_t>(i > j ? i - j : j - i)];
  }
  return T;
}

Eigen::MatrixXd sine_matrix_2d(std::size_t nx, std::size_t ny) {
  const Eigen::MatrixXd Sx = sine_matrix(nx);
  const Eigen::MatrixXd Sy = sine_matrix(ny);
  const auto NX = static_cast<Eigen::Index>(nx);
  const auto NY = static_cast<Eigen::Index>(ny);
  Eigen::MatrixXd S(NX * NY, NX * NY);
  // (S_y (x) S_x)_{(i + nx j), (p + nx q)} = S_y(j,q) S_x(i,p)
  for (Eigen::Index j = 0; j < NY; ++j) {
    for (Eigen::Index q = 0; q < NY; ++q) {
      S.block(j * NX, q * NX, NX, NX) = Sy(j, q) * Sx;
    }
  }
  return S;
}

}  // namespace fracrd::reference

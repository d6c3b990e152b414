#pragma once

// DST-I and the tau matrix algebra it diagonalises.
//
// The orthonormal DST-I matrix is S_{jk} = sqrt(2/(n+1)) sin(pi j k/(n+1)),
// j,k = 1..n. It is symmetric and orthogonal, so S^2 = I. A tau matrix is
// any S diag(lambda) S; it is fixed by its first column.

#include <cstddef>
#include <span>
#include <vector>

#include "fracrd/frac_coeffs.hpp"

namespace fracrd {

/// Fast orthonormal DST-I via a real FFT of length 2(n+1) applied to the odd extension.
std::vector<double> dst1(std::span<const double> v);

/// In-place DST-I along x for every y, then along y for every x, on an
/// x-fastest nx*ny array. OpenMP-parallel over lines.
void dst1_2d(std::span<double> grid, std::size_t nx, std::size_t ny);

class TauMatrix {
 public:
  explicit TauMatrix(std::vector<double> first_column);

  std::size_t size() const noexcept { return first_column_.size(); }
  std::span<const double> first_column() const noexcept { return first_column_; }

 private:
  std::vector<double> first_column_;
};

/// tau(T) = T - H for the symmetric Toeplitz T with first column t, where H
/// is the Hankel correction with first row (t_2, ..., t_{n-1}, 0, 0) and last
/// row its reverse. For n <= 2, tau(T) = T.
TauMatrix tau_projection(std::span<const double> toeplitz_first_column);

/// Eigenvalues in DST frequency order j = 1..n:
/// lambda_j = [S c]_j / (sqrt(2/(n+1)) sin(j pi/(n+1))).
std::vector<double> tau_eigenvalues(const TauMatrix& m);

/// Eigenvalues of Q = I + gamma/24 tridiag(-1, 2, -1) in DST frequency order:
/// 1 + gamma/6 sin^2(j pi / (2(n+1))).
std::vector<double> q_gamma_eigenvalues(FractionalOrder order, std::size_t n);

}  // namespace fracrd

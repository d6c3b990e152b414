#pragma once

// Serial reference kernels.
//
// Straightforward O(n^2) counterparts of the fast, OpenMP-parallel kernels
// in transforms/operators. They exist for verification and for the
// benchmark that compares the two paths; nothing on the solver path calls
// them.

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace fracrd::reference {

/// Explicit sine-matrix product, O(n^2).
std::vector<double> dst1(std::span<const double> v);

/// Serial 2D DST-I built from the explicit 1D product.
void dst1_2d(std::span<double> grid, std::size_t nx, std::size_t ny);

/// y_i = sum_j t_{|i-j|} v_j, O(n^2).
std::vector<double> toeplitz_matvec(std::span<const double> t, std::span<const double> v);

/// Direct stencil form of eta_x (I (x) A_x) + eta_y (A_y (x) I) on an
/// x-fastest nx*ny field, where A_x, A_y are the symmetric Toeplitz matrices
/// with first columns tx (length nx) and ty (length ny).
void kronecker_sum_apply(std::span<const double> tx, std::span<const double> ty, double eta_x, double eta_y,
                         std::size_t nx, std::size_t ny, std::span<const double> in, std::span<double> out);

/// Dense orthonormal DST-I matrix.
Eigen::MatrixXd sine_matrix(std::size_t n);

/// Dense symmetric Toeplitz matrix with first column t.
Eigen::MatrixXd toeplitz_matrix(std::span<const double> t);

/// Dense 2D sine transform S_y (x) S_x matching the x-fastest layout.
Eigen::MatrixXd sine_matrix_2d(std::size_t nx, std::size_t ny);

}  // namespace fracrd::reference

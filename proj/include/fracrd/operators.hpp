#pragma once

// Fast symmetric Toeplitz products and the 2D implicit/explicit operators
//   I +/- J,   J = eta_a (I_{Ny} (x) A_a) + eta_b (A_b (x) I_{Nx}),
// where A_g is the symmetric Toeplitz matrix of fourth-order weights and
// eta_g = K_g dt / (2 h^g).

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fracrd/detail/fft.hpp"
#include "fracrd/frac_coeffs.hpp"
#include "fracrd/grid.hpp"

namespace fracrd {

/// Symmetric Toeplitz matrix applied in O(n log n) through a circulant
/// embedding of length L >= 2n-1 (rounded up to an FFT-friendly size).
class SymmetricToeplitz {
 public:
  explicit SymmetricToeplitz(std::vector<double> first_column);

  std::size_t size() const noexcept { return t_.size(); }
  std::size_t embedding_size() const noexcept { return embed_; }
  std::span<const double> first_column() const noexcept { return t_; }

  /// Per-thread FFT buffers.
  class Workspace {
   public:
    explicit Workspace(std::size_t embed) : dft(embed), pad(embed), spec(dft.bins()) {}
    detail::RealDft dft;
    detail::AlignedVector<double> pad;
    detail::AlignedVector<detail::Complex> spec;
  };
  Workspace make_workspace() const { return Workspace(embed_); }

  void apply(std::span<const double> in, std::span<double> out, Workspace& ws) const;
  std::vector<double> apply(std::span<const double> in) const;

 private:
  std::vector<double> t_;
  std::size_t embed_;
  std::vector<double> symbol_;  // circulant eigenvalues / L, bins 0..L/2
};

/// T v for the symmetric Toeplitz T with first column t.
std::vector<double> sym_toeplitz_matvec(std::span<const double> t, std::span<const double> v);

class DiscreteOperator {
 public:
  /// Physical construction: eta_g = K_g dt / (2 h_g^g). Requires K_g, dt > 0.
  DiscreteOperator(const GridSpec& grid, FractionalOrder alpha, FractionalOrder beta, double k_alpha,
                   double k_beta, double dt);

  /// Direct construction from scaled coefficients (eta >= 0); used for
  /// limiting cases and spectral studies.
  static DiscreteOperator from_eta(const GridSpec& grid, FractionalOrder alpha, FractionalOrder beta,
                                   double eta_alpha, double eta_beta);

  const GridSpec& grid() const noexcept { return grid_; }
  FractionalOrder alpha() const noexcept { return alpha_; }
  FractionalOrder beta() const noexcept { return beta_; }
  double eta_alpha() const noexcept { return eta_alpha_; }
  double eta_beta() const noexcept { return eta_beta_; }
  /// Time step the coefficients were built for, if physical.
  std::optional<double> dt() const noexcept { return dt_; }
  const WeightTable& weights_x() const noexcept { return wx_; }
  const WeightTable& weights_y() const noexcept { return wy_; }
  const SymmetricToeplitz& toeplitz_x() const noexcept { return ax_; }
  const SymmetricToeplitz& toeplitz_y() const noexcept { return ay_; }

  /// out = J u. `in` and `out` must not alias.
  void apply_J(std::span<const double> in, std::span<double> out) const;
  /// out = (I + J) u
  void apply_implicit(std::span<const double> in, std::span<double> out) const;
  /// out = (I - J) u
  void apply_explicit(std::span<const double> in, std::span<double> out) const;

  FieldVector apply_J(const FieldVector& u) const;
  FieldVector apply_implicit(const FieldVector& u) const;
  FieldVector apply_explicit(const FieldVector& u) const;

 private:
  DiscreteOperator(const GridSpec& grid, FractionalOrder alpha, FractionalOrder beta, double eta_alpha,
                   double eta_beta, std::optional<double> dt);
  void check_shape(std::span<const double> in, std::span<const double> out) const;
  void require_conforming(const FieldVector& u) const;

  GridSpec grid_;
  FractionalOrder alpha_;
  FractionalOrder beta_;
  double eta_alpha_;
  double eta_beta_;
  std::optional<double> dt_;
  WeightTable wx_;
  WeightTable wy_;
  SymmetricToeplitz ax_;
  SymmetricToeplitz ay_;
};

inline constexpr std::size_t kDefaultDenseCap = 4096;

/// Explicit I + J via Kronecker products of the dense Toeplitz factors.
/// Throws std::length_error when Nx*Ny exceeds `cap`.
Eigen::MatrixXd dense_assemble(const DiscreteOperator& op, std::size_t cap = kDefaultDenseCap);

/// Dense J alone (same cap rule).
Eigen::MatrixXd dense_assemble_J(const DiscreteOperator& op, std::size_t cap = kDefaultDenseCap);

/// I_{ny} (x) Mx + My (x) I_{nx} for the x-fastest layout.
Eigen::MatrixXd kronecker_sum(const Eigen::MatrixXd& mx, const Eigen::MatrixXd& my);

}  // namespace fracrd

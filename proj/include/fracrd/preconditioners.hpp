#pragma once

// Preconditioners for I + J, all applied by diagonalisation
// (transform, divide by the eigenvalue grid, transform back).
//
//   Tau:      P = I + eta_a (I (x) P_a) + eta_b (P_b (x) I), P_g = Q_g tau(A^_g),
//             diagonalised by the 2D DST-I.
//   Strang /  the same Kronecker sum with P_g replaced by a circulant
//   Chan:     approximation of A_g, diagonalised by the 2D DFT.
//   Identity: plain CG.

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "fracrd/operators.hpp"

namespace fracrd {

enum class PreconditionerKind { Identity, Tau, StrangCirculant, ChanCirculant };

std::string_view to_string(PreconditionerKind kind);
/// Accepts "identity", "tau", "strang", "chan".
std::optional<PreconditionerKind> parse_preconditioner_kind(std::string_view name);

class Preconditioner {
 public:
  virtual ~Preconditioner() = default;
  virtual PreconditionerKind kind() const noexcept = 0;
  /// z = P^{-1} r. `r` and `z` may alias.
  virtual void apply_inverse(std::span<const double> r, std::span<double> z) const = 0;
};

/// Thrown when an eigenvalue grid is not strictly positive.
class PreconditionerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IdentityPreconditioner final : public Preconditioner {
 public:
  PreconditionerKind kind() const noexcept override { return PreconditionerKind::Identity; }
  void apply_inverse(std::span<const double> r, std::span<double> z) const override;
};

class TauPreconditioner final : public Preconditioner {
 public:
  /// Eigenvalue grid given directly, x-fastest nx*ny.
  TauPreconditioner(std::size_t nx, std::size_t ny, std::vector<double> eigen_grid);

  static TauPreconditioner build(const DiscreteOperator& op);

  PreconditionerKind kind() const noexcept override { return PreconditionerKind::Tau; }
  void apply_inverse(std::span<const double> r, std::span<double> z) const override;

  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  std::span<const double> eigen_grid() const noexcept { return eigen_grid_; }

 private:
  std::size_t nx_;
  std::size_t ny_;
  std::vector<double> eigen_grid_;
};

/// Eigenvalues of P_g = Q_g tau(A^_g) for n points, in DST frequency order.
std::vector<double> tau_direction_eigenvalues(FractionalOrder order, std::size_t n);

/// Strang: c_k = t_k for k <= n/2, t_{n-k} otherwise.
std::vector<double> strang_first_column(std::span<const double> t);
/// T. Chan (Frobenius-optimal): c_k = ((n-k) t_k + k t_{n-k}) / n.
std::vector<double> chan_first_column(std::span<const double> t);

struct CirculantSpectrum {
  std::vector<double> eigenvalues;  // real parts, DFT frequency order
  double max_imag = 0.0;            // largest |imaginary part| before truncation
};

/// Eigenvalues of the circulant with first column c.
CirculantSpectrum circulant_eigenvalues(std::span<const double> c);

class CirculantPreconditioner final : public Preconditioner {
 public:
  static CirculantPreconditioner build(const DiscreteOperator& op, PreconditionerKind kind);

  PreconditionerKind kind() const noexcept override { return kind_; }
  void apply_inverse(std::span<const double> r, std::span<double> z) const override;
  /// Same as apply_inverse; returns the largest |imaginary part| discarded.
  double apply_inverse_with_residue(std::span<const double> r, std::span<double> z) const;

  std::size_t nx() const noexcept { return nx_; }
  std::size_t ny() const noexcept { return ny_; }
  std::span<const double> eigen_grid() const noexcept { return eigen_grid_; }
  /// Largest imaginary part seen among the 1D circulant eigenvalues.
  double spectrum_imag_residue() const noexcept { return imag_residue_; }

 private:
  CirculantPreconditioner(PreconditionerKind kind, std::size_t nx, std::size_t ny, std::vector<double> grid,
                          double imag_residue);

  PreconditionerKind kind_;
  std::size_t nx_;
  std::size_t ny_;
  std::vector<double> eigen_grid_;
  double imag_residue_;
};

std::unique_ptr<Preconditioner> make_preconditioner(const DiscreteOperator& op, PreconditionerKind kind);

/// Dense P for small grids, built from the eigenvalue grid and the dense
/// transform matrices (test/analysis oracle).
Eigen::MatrixXd dense_tau_preconditioner(const TauPreconditioner& p);
Eigen::MatrixXd dense_circulant_preconditioner(const DiscreteOperator& op, PreconditionerKind kind);

}  // namespace fracrd

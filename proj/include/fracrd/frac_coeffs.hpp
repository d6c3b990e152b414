#pragma once

// Stencil weights for the Riesz derivative of order gamma in (1,2).
//
// Two families are provided:
//   * the second-order fractional centred difference (FCD) weights g_k,
//     the Fourier coefficients of G(theta) = (2 - 2 cos theta)^{gamma/2};
//   * the fourth-order weights s_k, the Fourier coefficients of
//     S(theta) = [1 + gamma/24 (2 - 2 cos theta)] G(theta).
// Both stencils are symmetric, so only the one-sided half k >= 0 is stored.

#include <cstddef>
#include <span>
#include <vector>

namespace fracrd {

/// A fractional order strictly inside (1, 2). Used for both directions.
class FractionalOrder {
 public:
  explicit FractionalOrder(double value);

  double value() const noexcept { return value_; }
  operator double() const noexcept { return value_; }

 private:
  double value_;
};

enum class WeightKind { SecondOrderFcd, FourthOrder };

class WeightTable {
 public:
  WeightTable(FractionalOrder order, WeightKind kind, std::vector<double> weights);

  FractionalOrder order() const noexcept { return order_; }
  WeightKind kind() const noexcept { return kind_; }
  std::size_t size() const noexcept { return weights_.size(); }

  /// Weight at signed offset k, |k| < size().
  double operator[](std::ptrdiff_t offset) const;

  /// Weights for k = 0..size()-1; this is also the first column of the
  /// symmetric Toeplitz matrix the stencil generates.
  std::span<const double> one_sided() const noexcept { return weights_; }

  /// Offsets -(n-1)..(n-1), length 2n-1.
  std::vector<double> full_stencil() const;

 private:
  FractionalOrder order_;
  WeightKind kind_;
  std::vector<double> weights_;
};

WeightTable fcd_weights(FractionalOrder order, std::size_t n);
WeightTable fourth_order_weights(FractionalOrder order, std::size_t n);

/// S(theta) = [1 + gamma/6 sin^2(theta/2)] (2 |sin(theta/2)|)^gamma.
double generating_S(FractionalOrder order, double theta);
/// G(theta) = (2 - 2 cos theta)^{gamma/2}.
double generating_G(FractionalOrder order, double theta);

}  // namespace fracrd

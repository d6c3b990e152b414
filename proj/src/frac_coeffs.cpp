#include "fracrd/frac_coeffs.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fracrd {

FractionalOrder::FractionalOrder(double value) : value_(value) {
  if (!(value > 1.0 && value < 2.0)) {
    throw std::invalid_argument("fractional order must lie in (1, 2), got " +
                                std::to_string(value));
  }
}

WeightTable::WeightTable(FractionalOrder order, WeightKind kind, std::vector<double> weights)
    : order_(order), kind_(kind), weights_(std::move(weights)) {
  if (weights_.empty()) throw std::invalid_argument("weight table must hold at least one weight");
}

double WeightTable::operator[](std::ptrdiff_t offset) const {
  const auto k = static_cast<std::size_t>(offset < 0 ? -offset : offset);
  if (k >= weights_.size()) throw std::out_of_range("stencil offset outside weight table");
  return weights_[k];
}

std::vector<double> WeightTable::full_stencil() const {
  const std::size_t n = weights_.size();
  std::vector<double> out(2 * n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    out[n - 1 + k] = weights_[k];
    out[n - 1 - k] = weights_[k];
  }
  return out;
}

WeightTable fcd_weights(FractionalOrder order, std::size_t n) {
  if (n == 0) throw std::invalid_argument("fcd_weights: n must be positive");
  const double g = order.value();
  const double half = 0.5 * g;
  std::vector<double> w(n);
  // g_0 = Gamma(g+1) / Gamma(g/2+1)^2, then the ratio of consecutive closed
  // forms, which never touches Gamma at negative arguments.
  w[0] = std::exp(std::lgamma(g + 1.0) - 2.0 * std::lgamma(half + 1.0));
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const auto kk = static_cast<double>(k);
    w[k + 1] = w[k] * (kk - half) / (kk + 1.0 + half);
  }
  return WeightTable(order, WeightKind::SecondOrderFcd, std::move(w));
}

WeightTable fourth_order_weights(FractionalOrder order, std::size_t n) {
  const WeightTable fcd = fcd_weights(order, n);
  const double g = order.value();
  const double c = g * (g + 1.0) * (g + 2.0) / 6.0;
  std::vector<double> w(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double two_k = 2.0 * static_cast<double>(k);
    w[k] = fcd.one_sided()[k] * (1.0 + c / ((g - two_k + 2.0) * (g + two_k + 2.0)));
  }
  return WeightTable(order, WeightKind::FourthOrder, std::move(w));
}

double generating_G(FractionalOrder order, double theta) {
  return std::pow(2.0 - 2.0 * std::cos(theta), 0.5 * order.value());
}

double generating_S(FractionalOrder order, double theta) {
  const double g = order.value();
  const double s = std::sin(0.5 * theta);
  return (1.0 + g / 6.0 * s * s) * std::pow(2.0 * std::abs(s), g);
}

}  // namespace fracrd

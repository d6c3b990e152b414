#include "fracrd/detail/blas1.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fracrd::detail {

namespace {

constexpr std::ptrdiff_t kChunk = 2048;

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) throw std::invalid_argument("vector length mismatch");
}

}  // namespace

double dot(std::span<const double> a, std::span<const double> b) {
  require_same_size(a.size(), b.size());
  const auto n = static_cast<std::ptrdiff_t>(a.size());
  const std::ptrdiff_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<double> partial(static_cast<std::size_t>(chunks), 0.0);
#pragma omp parallel for schedule(static) if (chunks > 4)
  for (std::ptrdiff_t c = 0; c < chunks; ++c) {
    const std::ptrdiff_t lo = c * kChunk;
    const std::ptrdiff_t hi = std::min(n, lo + kChunk);
    double s = 0.0;
    for (std::ptrdiff_t i = lo; i < hi; ++i) s += a[i] * b[i];
    partial[c] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

double norm2(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void axpy(double a, std::span<const double> x, std::span<double> y) {
  require_same_size(x.size(), y.size());
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) if (n > 4 * kChunk)
  for (std::ptrdiff_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void xpby(std::span<const double> x, double b, std::span<double> y) {
  require_same_size(x.size(), y.size());
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static) if (n > 4 * kChunk)
  for (std::ptrdiff_t i = 0; i < n; ++i) y[i] = x[i] + b * y[i];
}

void copy(std::span<const double> x, std::span<double> y) {
  require_same_size(x.size(), y.size());
  std::copy(x.begin(), x.end(), y.begin());
}

bool all_finite(std::span<const double> x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace fracrd::detail

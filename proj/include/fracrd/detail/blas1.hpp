#pragma once

// Level-1 vector kernels used by the Krylov solvers.
//
// Reductions are computed over fixed-size chunks whose partial sums are
// combined in index order, so results are bitwise reproducible for any
// OpenMP thread count.

#include <span>

namespace fracrd::detail {

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
/// y += a * x
void axpy(double a, std::span<const double> x, std::span<double> y);
/// y = x + b * y
void xpby(std::span<const double> x, double b, std::span<double> y);
void copy(std::span<const double> x, std::span<double> y);
bool all_finite(std::span<const double> x);

}  // namespace fracrd::detail

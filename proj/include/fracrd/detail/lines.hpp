#pragma once

// Batched application of a 1D kernel along every grid line of an x-fastest
// Nx x Ny field. This is the parallel skeleton shared by the 2D sine
// transform, the Kronecker-sum Toeplitz operator and the circulant
// preconditioner: lines are independent, so they are distributed over
// OpenMP threads, each with its own gather buffers and kernel scratch.

#include <cstddef>
#include <span>
#include <vector>

#include "fracrd/detail/aligned.hpp"

namespace fracrd::detail {

enum class Axis { X, Y };
enum class Combine { Assign, Add };

/// For every line along `axis`, calls kernel(line_in, line_out, scratch)
/// and writes (or adds, times `scale`) line_out into `out`. `in` and `out`
/// may alias only when combine == Assign.
/// make_scratch() is invoked once per thread.
template <class MakeScratch, class Kernel>
void for_each_line(std::span<const double> in, std::span<double> out, std::size_t nx, std::size_t ny,
                   Axis axis, Combine combine, double scale, MakeScratch&& make_scratch, Kernel&& kernel) {
  const std::size_t len = axis == Axis::X ? nx : ny;
  const std::size_t count = axis == Axis::X ? ny : nx;
  const std::size_t stride = axis == Axis::X ? 1 : nx;
  const std::size_t step = axis == Axis::X ? nx : 1;
  const auto lines = static_cast<std::ptrdiff_t>(count);

#pragma omp parallel if (count * len > 4096)
  {
    auto scratch = make_scratch();
    AlignedVector<double> line_in(len);
    AlignedVector<double> line_out(len);
#pragma omp for schedule(static)
    for (std::ptrdiff_t l = 0; l < lines; ++l) {
      const std::size_t base = static_cast<std::size_t>(l) * step;
      for (std::size_t k = 0; k < len; ++k) line_in[k] = in[base + k * stride];
      kernel(std::span<const double>(line_in), std::span<double>(line_out), scratch);
      if (combine == Combine::Assign) {
        for (std::size_t k = 0; k < len; ++k) out[base + k * stride] = scale * line_out[k];
      } else {
        for (std::size_t k = 0; k < len; ++k) out[base + k * stride] += scale * line_out[k];
      }
    }
  }
}

}  // namespace fracrd::detail

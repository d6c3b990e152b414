#pragma once

// Thin RAII layer over FFTW plans.
//
// Plans are created once per transform size (guarded by a global mutex, as
// FFTW's planner is not reentrant) and executed through the new-array
// interface, which is safe to call concurrently from OpenMP threads on
// distinct buffers. Plans are SIMD plans, so every buffer handed to
// forward/backward must be 64-byte aligned (see aligned.hpp); anything else
// throws std::invalid_argument.

#include <complex>
#include <cstddef>
#include <memory>

#include "fracrd/detail/aligned.hpp"

namespace fracrd::detail {

using Complex = std::complex<double>;

struct PlanHandle;

/// Unnormalised real DFT of length n: forward maps n reals to n/2+1
/// complex bins; backward maps them back (scaled by n).
class RealDft {
 public:
  explicit RealDft(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  std::size_t bins() const noexcept { return n_ / 2 + 1; }

  void forward(const double* in, Complex* out) const;
  /// Overwrites `in` as scratch.
  void backward(Complex* in, double* out) const;

 private:
  std::size_t n_;
  std::shared_ptr<const PlanHandle> fwd_;
  std::shared_ptr<const PlanHandle> bwd_;
};

/// Unnormalised in-place complex DFT of length n.
class ComplexDft {
 public:
  explicit ComplexDft(std::size_t n);

  std::size_t size() const noexcept { return n_; }
  void forward(Complex* data) const;
  void backward(Complex* data) const;

 private:
  std::size_t n_;
  std::shared_ptr<const PlanHandle> fwd_;
  std::shared_ptr<const PlanHandle> bwd_;
};

/// Smallest m >= n of the form 2^a 3^b 5^c 7^d.
std::size_t good_fft_size(std::size_t n);

}  // namespace fracrd::detail

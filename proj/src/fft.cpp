#include "fracrd/detail/fft.hpp"

#include <fftw3.h>

#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace fracrd::detail {

struct PlanHandle {
  fftw_plan plan = nullptr;
  explicit PlanHandle(fftw_plan p) : plan(p) {
    if (plan == nullptr) throw std::runtime_error("FFTW failed to create a plan");
  }
  PlanHandle(const PlanHandle&) = delete;
  PlanHandle& operator=(const PlanHandle&) = delete;
  ~PlanHandle() { fftw_destroy_plan(plan); }
};

namespace {

enum class PlanType { R2C, C2R, CForward, CBackward };

using PlanKey = std::pair<PlanType, std::size_t>;

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

std::map<PlanKey, std::shared_ptr<const PlanHandle>>& plan_cache() {
  static std::map<PlanKey, std::shared_ptr<const PlanHandle>> cache;
  return cache;
}

std::shared_ptr<const PlanHandle> get_plan(PlanType type, std::size_t n) {
  if (n == 0) throw std::invalid_argument("FFT length must be positive");
  std::lock_guard lock(planner_mutex());
  auto& cache = plan_cache();
  const PlanKey key{type, n};
  constexpr unsigned kFlags = FFTW_ESTIMATE;
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  const int len = static_cast<int>(n);
  AlignedVector<double> real(n);
  AlignedVector<Complex> cplx(n);
  auto* c = reinterpret_cast<fftw_complex*>(cplx.data());
  fftw_plan p = nullptr;
  switch (type) {
    case PlanType::R2C:
      p = fftw_plan_dft_r2c_1d(len, real.data(), c, kFlags);
      break;
    case PlanType::C2R:
      p = fftw_plan_dft_c2r_1d(len, c, real.data(), kFlags | FFTW_DESTROY_INPUT);
      break;
    case PlanType::CForward:
      p = fftw_plan_dft_1d(len, c, c, FFTW_FORWARD, kFlags);
      break;
    case PlanType::CBackward:
      p = fftw_plan_dft_1d(len, c, c, FFTW_BACKWARD, kFlags);
      break;
  }
  auto handle = std::make_shared<const PlanHandle>(p);
  cache.emplace(key, handle);
  return handle;
}

bool is_aligned(const void* p) {
  return fftw_alignment_of(static_cast<double*>(const_cast<void*>(p))) == 0 &&
         reinterpret_cast<std::uintptr_t>(p) % 64 == 0;
}

// The SIMD plans are only valid on aligned arrays. There is deliberately no
// unaligned fallback: its rounding differs, so results would depend on where
// the allocator happened to place a buffer.
fftw_plan checked(const std::shared_ptr<const PlanHandle>& plan, const void* a, const void* b) {
  if (!is_aligned(a) || !is_aligned(b)) throw std::invalid_argument("FFT buffers must be 64-byte aligned");
  return plan->plan;
}

}  // namespace

RealDft::RealDft(std::size_t n)
    : n_(n),
      fwd_(get_plan(PlanType::R2C, n)),
      bwd_(get_plan(PlanType::C2R, n)) {}

void RealDft::forward(const double* in, Complex* out) const {
  fftw_execute_dft_r2c(checked(fwd_, in, out), const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(out));
}

void RealDft::backward(Complex* in, double* out) const {
  fftw_execute_dft_c2r(checked(bwd_, in, out), reinterpret_cast<fftw_complex*>(in), out);
}

ComplexDft::ComplexDft(std::size_t n)
    : n_(n),
      fwd_(get_plan(PlanType::CForward, n)),
      bwd_(get_plan(PlanType::CBackward, n)) {}

void ComplexDft::forward(Complex* data) const {
  auto* c = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(checked(fwd_, data, data), c, c);
}

void ComplexDft::backward(Complex* data) const {
  auto* c = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(checked(bwd_, data, data), c, c);
}

std::size_t good_fft_size(std::size_t n) {
  if (n <= 1) return 1;
  for (std::size_t m = n;; ++m) {
    std::size_t r = m;
    for (std::size_t p : {2u, 3u, 5u, 7u}) {
      while (r % p == 0) r /= p;
    }
    if (r == 1) return m;
  }
}

}  // namespace fracrd::detail

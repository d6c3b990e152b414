// Serial reference kernels against the fast OpenMP paths.
//
//   ./fracrd_bench --benchmark_filter=Dst
//   OMP_NUM_THREADS=4 ./fracrd_bench

#include <benchmark/benchmark.h>
#include <omp.h>

#include <cmath>
#include <vector>

#include "fracrd/operators.hpp"
#include "fracrd/preconditioners.hpp"
#include "fracrd/reference.hpp"
#include "fracrd/transforms.hpp"

namespace {

using namespace fracrd;

std::vector<double> field(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::sin(0.37 * static_cast<double>(i));
  return v;
}

DiscreteOperator make_op(std::size_t n) {
  return DiscreteOperator(GridSpec::unit_square(n), FractionalOrder(1.4), FractionalOrder(1.5), 5.0, 30.0,
                          1.0 / static_cast<double>(n + 1));
}

void set_counters(benchmark::State& state, std::size_t n) {
  state.counters["threads"] = omp_get_max_threads();
  state.counters["unknowns"] = static_cast<double>(n * n);
}

void BM_Dst1_Serial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto v = field(n);
  for (auto _ : state) benchmark::DoNotOptimize(reference::dst1(v));
}

void BM_Dst1_Fast(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto v = field(n);
  for (auto _ : state) benchmark::DoNotOptimize(dst1(v));
}

void BM_Dst2d_Serial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto g = field(n * n);
  for (auto _ : state) {
    reference::dst1_2d(g, n, n);
    benchmark::ClobberMemory();
  }
  set_counters(state, n);
}

void BM_Dst2d_Parallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  auto g = field(n * n);
  for (auto _ : state) {
    dst1_2d(g, n, n);
    benchmark::ClobberMemory();
  }
  set_counters(state, n);
}

void BM_ApplyJ_Serial(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto op = make_op(n);
  const auto u = field(n * n);
  std::vector<double> out(u.size());
  for (auto _ : state) {
    reference::kronecker_sum_apply(op.weights_x().one_sided(), op.weights_y().one_sided(), op.eta_alpha(),
                                   op.eta_beta(), n, n, u, out);
    benchmark::ClobberMemory();
  }
  set_counters(state, n);
}

void BM_ApplyJ_Parallel(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto op = make_op(n);
  const auto u = field(n * n);
  std::vector<double> out(u.size());
  for (auto _ : state) {
    op.apply_J(u, out);
    benchmark::ClobberMemory();
  }
  set_counters(state, n);
}

void BM_TauInverse(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = TauPreconditioner::build(make_op(n));
  const auto r = field(n * n);
  std::vector<double> z(r.size());
  for (auto _ : state) {
    p.apply_inverse(r, z);
    benchmark::ClobberMemory();
  }
  set_counters(state, n);
}

}  // namespace

BENCHMARK(BM_Dst1_Serial)->Arg(63)->Arg(255)->Arg(1023);
BENCHMARK(BM_Dst1_Fast)->Arg(63)->Arg(255)->Arg(1023);
BENCHMARK(BM_Dst2d_Serial)->Arg(63)->Arg(127)->Arg(255)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Dst2d_Parallel)->Arg(63)->Arg(127)->Arg(255)->Arg(511)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ApplyJ_Serial)->Arg(63)->Arg(127)->Arg(255)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ApplyJ_Parallel)->Arg(63)->Arg(127)->Arg(255)->Arg(511)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TauInverse)->Arg(127)->Arg(255)->Arg(511)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

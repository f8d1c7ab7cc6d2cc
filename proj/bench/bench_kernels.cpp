#include <benchmark/benchmark.h>

#include <vector>

#include "etflab/kernels.hpp"
#include "etflab/sphere.hpp"

namespace {

namespace ks = etflab::kernels::serial;
namespace kp = etflab::kernels::parallel;

constexpr std::size_t kDim = 8;

template <double (*Kernel)(etflab::kernels::PointsView, double, std::span<double>)>
void BM_SymCE(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto c = etflab::sample_uniform(n, kDim, 1);
  std::vector<double> grad(n * kDim);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(c, 2.0, grad));
}

template <double (*Kernel)(etflab::kernels::PointsView, double, double, std::span<double>)>
void BM_PairExp(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto c = etflab::sample_uniform(n, kDim, 2);
  std::vector<double> grad(n * kDim);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(c, 2.0, 2.0, grad));
}

template <double (*Kernel)(etflab::kernels::PointsView, etflab::kernels::PointsView, std::span<double>, std::span<double>)>
void BM_AsymCE(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto u = etflab::sample_uniform(n, kDim, 3);
  const auto v = etflab::sample_uniform(n, kDim, 4);
  std::vector<double> gu(n * kDim), gv(n * kDim);
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(u, v, gu, gv));
}

template <void (*Kernel)(etflab::kernels::PointsView, double, std::span<double>)>
void BM_Moments(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto c = etflab::sample_uniform(n, kDim, 5);
  std::vector<double> out(9);
  for (auto _ : state) {
    Kernel(c, 3.0, out);
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(BM_SymCE<ks::sym_ce>)->Name("sym_ce/serial")->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(BM_SymCE<kp::sym_ce>)->Name("sym_ce/parallel")->RangeMultiplier(4)->Range(64, 1024)->UseRealTime();
BENCHMARK(BM_PairExp<ks::pair_exp_sum>)->Name("pair_exp/serial")->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(BM_PairExp<kp::pair_exp_sum>)->Name("pair_exp/parallel")->RangeMultiplier(4)->Range(64, 1024)->UseRealTime();
BENCHMARK(BM_AsymCE<ks::asym_ce>)->Name("asym_ce/serial")->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(BM_AsymCE<kp::asym_ce>)->Name("asym_ce/parallel")->RangeMultiplier(4)->Range(64, 1024)->UseRealTime();
BENCHMARK(BM_Moments<ks::moment_sums>)->Name("moments/serial")->RangeMultiplier(4)->Range(64, 1024);
BENCHMARK(BM_Moments<kp::moment_sums>)->Name("moments/parallel")->RangeMultiplier(4)->Range(64, 1024)->UseRealTime();

BENCHMARK_MAIN();

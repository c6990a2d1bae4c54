// Google Benchmark comparison of the streaming kernels: direct sweep vs the
// minimal-filtering tiling, serial vs OpenMP-parallel, plus the fixed-point
// datapath simulation cost.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "winofir/fixed.hpp"
#include "winofir/streaming.hpp"

using namespace winofir;

namespace {

std::vector<double> random_signal(std::size_t n) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> s(n);
  for (double& v : s) v = dist(rng);
  return s;
}

const Taps3<double> kTaps{0.25, 0.5, 0.25};

void BM_naive_serial(benchmark::State& state) {
  const std::vector<double> signal = random_signal(state.range(0));
  for (auto _ : state) {
    auto result = convolve(signal, kTaps, Mode::naive, 1);
    benchmark::DoNotOptimize(result.outputs.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(signal.size() - 2));
}

void BM_winograd_serial(benchmark::State& state) {
  const std::vector<double> signal = random_signal(state.range(0));
  for (auto _ : state) {
    auto result = convolve(signal, kTaps, Mode::winograd, 1);
    benchmark::DoNotOptimize(result.outputs.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(signal.size() - 2));
}

void BM_winograd_parallel(benchmark::State& state) {
  const std::vector<double> signal = random_signal(state.range(0));
  for (auto _ : state) {
    auto result = convolve(signal, kTaps, Mode::winograd, 0);
    benchmark::DoNotOptimize(result.outputs.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(signal.size() - 2));
}

void BM_naive_parallel(benchmark::State& state) {
  const std::vector<double> signal = random_signal(state.range(0));
  for (auto _ : state) {
    auto result = convolve(signal, kTaps, Mode::naive, 0);
    benchmark::DoNotOptimize(result.outputs.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(signal.size() - 2));
}

void BM_winograd_fixed(benchmark::State& state) {
  const FixedFormat fmt = FixedFormat::validated(16, 8);
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int64_t> dist(-1000, 1000);
  std::vector<Fixed> signal;
  signal.reserve(state.range(0));
  for (int64_t i = 0; i < state.range(0); ++i) {
    signal.push_back(Fixed::from_raw(dist(rng), fmt));
  }
  const Taps3<Fixed> taps{Fixed::from_raw(64, fmt), Fixed::from_raw(128, fmt),
                          Fixed::from_raw(64, fmt)};
  for (auto _ : state) {
    auto result = convolve(signal, taps, Mode::winograd, 1);
    benchmark::DoNotOptimize(result.outputs.data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(signal.size() - 2));
}

}  // namespace

BENCHMARK(BM_naive_serial)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_winograd_serial)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_naive_parallel)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_winograd_parallel)->Arg(1 << 16)->Arg(1 << 20);
BENCHMARK(BM_winograd_fixed)->Arg(1 << 16);

BENCHMARK_MAIN();

#include <benchmark/benchmark.h>

#include <random>

#include "endolift/gf2_kernels.hpp"

using endolift::gf2::BitMatrix;

namespace {

BitMatrix random_bits(std::size_t r, std::size_t c, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  BitMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i) {
    auto row = m.row(i);
    for (auto& w : row) w = rng();
    if (c % 64) row[row.size() - 1] &= (std::uint64_t{1} << (c % 64)) - 1;
  }
  return m;
}

void BM_mul_serial(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = random_bits(n, n, 1), b = random_bits(n, n, 2);
  for (auto _ : st) benchmark::DoNotOptimize(endolift::gf2::mul_serial(a, b));
}

void BM_mul_omp(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = random_bits(n, n, 1), b = random_bits(n, n, 2);
  for (auto _ : st) benchmark::DoNotOptimize(endolift::gf2::mul(a, b));
}

void BM_rref_serial(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = random_bits(n, n, 3);
  for (auto _ : st) {
    auto c = a;
    benchmark::DoNotOptimize(endolift::gf2::rref_serial(c));
  }
}

void BM_rref_omp(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto a = random_bits(n, n, 3);
  for (auto _ : st) {
    auto c = a;
    benchmark::DoNotOptimize(endolift::gf2::rref(c));
  }
}

}  // namespace

BENCHMARK(BM_mul_serial)->RangeMultiplier(2)->Range(64, 2048);
BENCHMARK(BM_mul_omp)->RangeMultiplier(2)->Range(64, 2048);
BENCHMARK(BM_rref_serial)->RangeMultiplier(2)->Range(64, 4096);
BENCHMARK(BM_rref_omp)->RangeMultiplier(2)->Range(64, 4096);

BENCHMARK_MAIN();

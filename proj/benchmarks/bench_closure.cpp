// Microbenchmarks for the hot paths: product closure, Terwilliger algebra
// generation, radical computation, and the end-to-end verification pipeline.

#include <benchmark/benchmark.h>

#include "twa/algebra.hpp"
#include "twa/field.hpp"
#include "twa/terwilliger.hpp"
#include "twa/verify.hpp"

namespace {

// Thin scheme of the cyclic group Z_n: rel(i, j) = (j - i) mod n.
twa::Scheme thin_cyclic(int n) {
  twa::Scheme s{n, n - 1, std::vector<int>(static_cast<std::size_t>(n) * n)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s.rel[static_cast<std::size_t>(i) * n + j] = ((j - i) % n + n) % n;
  return s;
}

// Quasi-thin fusion of Z_6 with classes {0}, {3}, {1,5}, {2,4}.
twa::Scheme c6_fusion() {
  const int lbl[6] = {0, 2, 3, 1, 3, 2};
  twa::Scheme s{6, 3, std::vector<int>(36)};
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) s.rel[static_cast<std::size_t>(i) * 6 + j] = lbl[((j - i) % 6 + 6) % 6];
  return s;
}

void BM_closure_thin_gf2(benchmark::State& state) {
  const twa::Scheme s = thin_cyclic(static_cast<int>(state.range(0)));
  const twa::GFp f(2);
  for (auto _ : state) {
    auto ctx = twa::build_context(f, s, 0);
    auto T = twa::generate_T(ctx);
    benchmark::DoNotOptimize(T.dim());
  }
}
BENCHMARK(BM_closure_thin_gf2)->Arg(4)->Arg(6)->Arg(8)->Arg(10);

void BM_closure_c6_gf2(benchmark::State& state) {
  const twa::Scheme s = c6_fusion();
  const twa::GFp f(2);
  for (auto _ : state) {
    auto ctx = twa::build_context(f, s, 0);
    auto T = twa::generate_T(ctx);
    benchmark::DoNotOptimize(T.dim());
  }
}
BENCHMARK(BM_closure_c6_gf2);

void BM_closure_c6_rationals(benchmark::State& state) {
  const twa::Scheme s = c6_fusion();
  const twa::Rationals q;
  for (auto _ : state) {
    auto ctx = twa::build_context(q, s, 0);
    auto T = twa::generate_T(ctx);
    benchmark::DoNotOptimize(T.dim());
  }
}
BENCHMARK(BM_closure_c6_rationals);

void BM_radical_char0_c6(benchmark::State& state) {
  const twa::Scheme s = c6_fusion();
  const twa::Rationals q;
  auto ctx = twa::build_context(q, s, 0);
  auto T = twa::generate_T(ctx);
  for (auto _ : state) {
    auto rad = twa::radical_char0(T);
    benchmark::DoNotOptimize(rad.dim());
  }
}
BENCHMARK(BM_radical_char0_c6);

void BM_decompose_c6_gf2(benchmark::State& state) {
  const twa::Scheme s = c6_fusion();
  const twa::GFp f(2);
  auto ctx = twa::build_context(f, s, 0);
  auto T = twa::generate_T(ctx);
  for (auto _ : state) {
    auto dec = twa::decompose(ctx, T);
    benchmark::DoNotOptimize(dec.certified());
  }
}
BENCHMARK(BM_decompose_c6_gf2);

void BM_verify_c6(benchmark::State& state) {
  const twa::Scheme s = c6_fusion();
  for (auto _ : state) {
    auto rep = twa::verify_scheme(s, "c6-fusion", {});
    benchmark::DoNotOptimize(rep.all_pass());
  }
}
BENCHMARK(BM_verify_c6);

}  // namespace

BENCHMARK_MAIN();

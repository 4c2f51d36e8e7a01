// OpenMP kernels against their serial references.

#include <random>

#include <benchmark/benchmark.h>

#include "lsrbd/harness.hpp"
#include "lsrbd/sepgen.hpp"

using namespace lsrbd;

namespace {

std::vector<CorpusEntry> corpus(std::size_t count) {
  std::mt19937_64 rng(99);
  std::vector<CorpusEntry> out;
  for (std::size_t i = 0; i < count; ++i) {
    Cnf f;
    f.num_vars = 50;
    for (int c = 0; c < 213; ++c) {
      Clause cl;
      while (cl.size() < 3) {
        const Var v(static_cast<std::uint32_t>(rng() % 50));
        bool dup = false;
        for (Lit l : cl) dup = dup || l.var() == v;
        if (!dup) cl.push_back(Lit(v, (rng() & 1u) != 0));
      }
      f.clauses.push_back(cl);
    }
    out.push_back({"r" + std::to_string(i), std::move(f)});
  }
  return out;
}

const std::vector<RestartPolicy> kPolicies = {RestartPolicy::luby, RestartPolicy::always, RestartPolicy::never};

void BM_MinDExhaustive(benchmark::State& st) {
  const OrderingSpec o = ordering_interleaved(static_cast<unsigned>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(min_d_exhaustive(o).min_value);
}

void BM_MinDExhaustiveSerial(benchmark::State& st) {
  const OrderingSpec o = ordering_interleaved(static_cast<unsigned>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(min_d_exhaustive_serial(o).min_value);
}

void BM_MinDSampled(benchmark::State& st) {
  const OrderingSpec o = ordering_interleaved(5);
  for (auto _ : st) benchmark::DoNotOptimize(min_d_sampled(o, static_cast<std::uint64_t>(st.range(0)), 1).min_value);
}

void BM_MinDSampledSerial(benchmark::State& st) {
  const OrderingSpec o = ordering_interleaved(5);
  for (auto _ : st) {
    benchmark::DoNotOptimize(min_d_sampled_serial(o, static_cast<std::uint64_t>(st.range(0)), 1).min_value);
  }
}

void BM_Lens(benchmark::State& st) {
  const auto c = corpus(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(run_lens(c, kPolicies, 1, {}).size());
}

void BM_LensSerial(benchmark::State& st) {
  const auto c = corpus(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(run_lens_serial(c, kPolicies, 1, {}).size());
}

void BM_Params(benchmark::State& st) {
  const auto c = corpus(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(run_params(c, {}).size());
}

void BM_ParamsSerial(benchmark::State& st) {
  const auto c = corpus(static_cast<std::size_t>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(run_params_serial(c, {}).size());
}

}  // namespace

BENCHMARK(BM_MinDExhaustive)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinDExhaustiveSerial)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinDSampled)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MinDSampledSerial)->Arg(100000)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Lens)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_LensSerial)->Arg(32)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Params)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParamsSerial)->Arg(16)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

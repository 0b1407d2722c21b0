#include <benchmark/benchmark.h>

#include <random>

#include "fgw/enumerate.hpp"
#include "fgw/morphism.hpp"
#include "fgw/word.hpp"

namespace {

fgw::Word random_word(std::mt19937& rng, int rank, int len) {
  std::vector<fgw::Letter> ls;
  for (int i = 0; i < len; ++i)
    ls.emplace_back(static_cast<int>(rng() % rank) + 1, rng() % 2 ? 1 : -1);
  return fgw::Word(ls);
}

void BM_reduce(benchmark::State& state) {
  std::mt19937 rng(1);
  std::vector<fgw::Word> words;
  for (int i = 0; i < 256; ++i) words.push_back(random_word(rng, 3, state.range(0)));
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fgw::reduce(words[i++ % words.size()]));
  }
}
BENCHMARK(BM_reduce)->Arg(16)->Arg(256)->Arg(4096);

void BM_is_basis(benchmark::State& state) {
  std::mt19937 rng(2);
  auto gens = fgw::nielsen_generators(3);
  std::vector<std::vector<fgw::Word>> tuples;
  for (int i = 0; i < 64; ++i) {
    fgw::Endomorphism e = fgw::identity_endomorphism(3);
    for (int j = 0; j < state.range(0); ++j) e = fgw::compose(e, gens[rng() % gens.size()]);
    tuples.push_back(e.images);
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(fgw::is_basis(tuples[i++ % tuples.size()], 3));
  }
}
BENCHMARK(BM_is_basis)->Arg(4)->Arg(10)->Arg(16);

void BM_scan_level(benchmark::State& state) {
  for (auto _ : state) {
    long n = 0;
    fgw::detail::scan_level(2, static_cast<int>(state.range(0)), {},
                            [&](std::uint64_t, const fgw::Diagram&, const fgw::Endomorphism&,
                                const std::string&) { ++n; });
    benchmark::DoNotOptimize(n);
  }
}
BENCHMARK(BM_scan_level)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

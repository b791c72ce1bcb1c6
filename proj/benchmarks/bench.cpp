#include <benchmark/benchmark.h>

#include <random>

#include "mcg2/catalog.hpp"
#include "mcg2/defs.hpp"
#include "mcg2/group.hpp"
#include "mcg2/orbifold.hpp"
#include "mcg2/parse.hpp"
#include "mcg2/script.hpp"
#include "mcg2/symplectic.hpp"

using namespace mcg2;

namespace {

const std::filesystem::path kData = MCG2_BENCH_DATA_DIR;

std::vector<SpMatrix> gl23_gens() {
  const auto defs = standard_defs(2);
  const auto cfg = SymplecticConfig::standard(2);
  std::vector<SpMatrix> out;
  for (const char* w : {"z2^4", "z3^2", "w1 w2 w3 w5 w4 w3 w1^-1"})
    out.push_back(evaluate(parse_word(w, 2, defs), cfg, &defs));
  return out;
}

} // namespace

static void BM_EvaluateRandom(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> gen(1, 5);
  std::vector<Letter> letters;
  for (int i = 0; i < 30; ++i)
    letters.push_back(Letter::gen(gen(rng), rng() % 2 ? 1 : -1));
  const TwistWord w(2, letters);
  const auto cfg = SymplecticConfig::standard(2);
  for (auto _ : state)
    benchmark::DoNotOptimize(evaluate(w, cfg));
  state.SetItemsProcessed(state.iterations() * 30);
}
BENCHMARK(BM_EvaluateRandom);

// Random words overflow 64-bit entries long before 1000 letters; a power of a
// periodic element keeps the entries bounded.
static void BM_EvaluatePeriodic(benchmark::State& state) {
  const auto defs = standard_defs(2);
  const auto w = power(parse_word("w1 w2 w3 w4 w5", 2, defs), static_cast<int>(state.range(0)));
  const auto cfg = SymplecticConfig::standard(2);
  for (auto _ : state)
    benchmark::DoNotOptimize(evaluate(w, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(w.size()));
}
BENCHMARK(BM_EvaluatePeriodic)->Arg(6)->Arg(200);

static void BM_ClosureGL23(benchmark::State& state) {
  const auto gens = gl23_gens();
  for (auto _ : state)
    benchmark::DoNotOptimize(closure(gens).order());
}
BENCHMARK(BM_ClosureGL23);

static void BM_SignatureGL23(benchmark::State& state) {
  const auto table = closure(gl23_gens());
  for (auto _ : state)
    benchmark::DoNotOptimize(signature(table));
}
BENCHMARK(BM_SignatureGL23);

static void BM_ToddCoxeterGL23(benchmark::State& state) {
  auto p = Presentation::parse({"x", "y", "u"},
                               {"x^3", "y^4", "(x y)^3", "x y^2 x^-1 y^-2",
                                "u^2 y^-2 x y^-1 x^-1", "u x u^-1 y^-1 x y",
                                "u y u^-1 x^-1 y^-1 x"});
  for (auto _ : state)
    benchmark::DoNotOptimize(todd_coxeter(p));
}
BENCHMARK(BM_ToddCoxeterGL23);

static void BM_ScriptLibraryGenus2(benchmark::State& state) {
  for (auto _ : state) {
    ScriptLibrary lib(kData / "scripts");
    auto v = lib.check_instance("aar5", 2);
    benchmark::DoNotOptimize(v.verified);
  }
}
BENCHMARK(BM_ScriptLibraryGenus2)->Unit(benchmark::kMillisecond);

static void BM_VerifyAll(benchmark::State& state) {
  const auto cat = Catalog::load(kData / "catalog.txt");
  for (auto _ : state) {
    ScriptLibrary lib(kData / "scripts");
    CatalogVerifier v(cat, lib);
    benchmark::DoNotOptimize(v.run().all_pass());
  }
}
BENCHMARK(BM_VerifyAll)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();

#include "lamdelta/hereditary.hpp"
#include "lamdelta/propgen.hpp"
#include "lamdelta/reduction.hpp"
#include "lamdelta/syntax.hpp"

#include <benchmark/benchmark.h>

using namespace lamdelta;

namespace {

struct Case {
    Context ctx;
    Term term;
};

// Well-typed terms of roughly the requested size, fixed seed.
std::vector<Case> corpus(std::size_t size, std::size_t n = 64) {
    GenConfig cfg;
    cfg.max_term_size = size;
    std::vector<Case> out;
    for (std::uint64_t i = 0; out.size() < n && i < n * 50; ++i) {
        Rng rng(derive_seed(0xBE4C, size, i));
        Context ctx = gen_context(cfg, rng);
        auto t = gen_term(cfg, ctx, gen_type(cfg, rng), size, rng);
        if (t && t->size() * 2 >= size) out.push_back({ctx, *t});
    }
    return out;
}

void BM_ExampleHsubst(benchmark::State& state) {
    Term t = parse_term("delta f:~(b->b). f (delta f':~(b->b). f' (\\z:b. z))");
    Term target = parse_term("x u");
    Type cut = parse_type("b -> b");
    for (auto _ : state) benchmark::DoNotOptimize(hsubst(t, "x", cut, target));
}
BENCHMARK(BM_ExampleHsubst);

void BM_Norm(benchmark::State& state) {
    auto cases = corpus(static_cast<std::size_t>(state.range(0)));
    std::size_t i = 0;
    for (auto _ : state) {
        const Case& c = cases[i++ % cases.size()];
        benchmark::DoNotOptimize(norm(c.ctx, c.term));
    }
}
BENCHMARK(BM_Norm)->Arg(10)->Arg(20)->Arg(30)->Arg(60);

void BM_ReduceToNf(benchmark::State& state) {
    auto cases = corpus(static_cast<std::size_t>(state.range(0)));
    std::size_t i = 0;
    for (auto _ : state) {
        const Case& c = cases[i++ % cases.size()];
        benchmark::DoNotOptimize(reduce_to_nf(c.term));
    }
}
BENCHMARK(BM_ReduceToNf)->Arg(10)->Arg(20)->Arg(30)->Arg(60);

void BM_GenTerm(benchmark::State& state) {
    GenConfig cfg;
    Rng rng(1);
    Context ctx = parse_context("u:b, f:b -> b");
    Type goal = parse_type("(b -> b) -> b");
    for (auto _ : state) benchmark::DoNotOptimize(gen_term(cfg, ctx, goal, cfg.max_term_size, rng));
}
BENCHMARK(BM_GenTerm);

}  // namespace
BENCHMARK_MAIN();

#include "stopmove/resm.hpp"
#include "stopmove/smgraph.hpp"
#include "stopmove/stops.hpp"

#include <benchmark/benchmark.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

using namespace stopmove;

namespace {

// 10 x 10 squares of side 10, 20 apart.
Pia grid() {
    std::vector<PoI> pois;
    for (int i = 0; i < 10; ++i)
        for (int j = 0; j < 10; ++j) {
            const double x = 20.0 * i, y = 20.0 * j;
            const std::string id = "G" + std::to_string(i) + "_" + std::to_string(j);
            pois.push_back({id, "Grid", id,
                            Geometry::polygon({{x, y}, {x + 10, y}, {x + 10, y + 10}, {x, y + 10}}), 5.0, 0.0});
        }
    return Pia(std::move(pois));
}

Trajectory walk(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> step(-3.0, 3.0);
    std::uniform_int_distribution<int> dwell(0, 9);
    Trajectory tr{"O", {}};
    double x = 100, y = 100;
    for (std::size_t k = 0; k < n; ++k) {
        if (dwell(rng) > 2) {
            x = std::clamp(x + step(rng), 0.0, 200.0);
            y = std::clamp(y + step(rng), 0.0, 200.0);
        }
        tr.samples.push_back({double(k), {x, y}});
    }
    return tr;
}

void BM_DetectStops(benchmark::State& state) {
    const Pia pia = grid();
    std::mt19937_64 rng(7);
    const Trajectory tr = walk(rng, std::size_t(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(detect_stops(tr, pia));
    state.SetItemsProcessed(state.iterations() * state.range(0));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_DetectStops)->RangeMultiplier(4)->Range(1 << 10, 1 << 20)->Complexity(benchmark::oN);

void BM_MatchPattern(benchmark::State& state) {
    OlapContext ctx;
    std::vector<StopEvent> seq;
    const std::vector<std::string> dims{"A", "B", "C", "D"};
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::size_t> pick(0, 2);
    for (int k = 0; k < state.range(0); ++k) {
        const std::string& d = dims[pick(rng)];
        seq.push_back({d + std::to_string(k), "", d, d, {10.0 * k, 10.0 * k + 5}});
    }
    for (const auto& d : dims) {
        DimensionSchema schema;
        schema.name = d;
        schema.levels = {"m"};
        ctx.add_dimension(DimensionInstance(schema, {}, {}, {}));
    }
    const auto automaton = Automaton::compile(parse_pattern("A.?.(B.C)*.D"), ctx);
    for (auto _ : state) benchmark::DoNotOptimize(automaton.matches(seq));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_MatchPattern)->RangeMultiplier(4)->Range(16, 1 << 14)->Complexity(benchmark::oN);

}  // namespace

BENCHMARK_MAIN();

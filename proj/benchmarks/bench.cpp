#include <benchmark/benchmark.h>

#include "pdptw/ga.hpp"
#include "pdptw/io.hpp"

namespace {

auto instance() -> pdptw::Instance const&
{
    static auto const inst = pdptw::load_instance(std::string(PDPTW_DATA_DIR) + "/paper_table1.pdptw");
    return inst;
}

void evaluate_tour(benchmark::State& state)
{
    auto sol = pdptw::load_route_file(std::string(PDPTW_DATA_DIR) + "/table2.route");
    pdptw::Evaluation ev;
    for (auto _ : state) {
        pdptw::evaluate(instance(), sol, ev);
        benchmark::DoNotOptimize(ev.vector);
    }
}
BENCHMARK(evaluate_tour);

void repair_shuffled(benchmark::State& state)
{
    pdptw::Rng rng(1);
    pdptw::GaConfig cfg;
    cfg.population = 8;
    auto population = pdptw::init_population(instance(), cfg, rng);
    for (auto _ : state) {
        auto c = population[rng.index(population.size())];
        for (auto& r : c.edit().routes) {
            rng.shuffle(std::span(r.visits));
        }
        benchmark::DoNotOptimize(pdptw::repair(instance(), std::move(c)));
    }
}
BENCHMARK(repair_shuffled);

void evolve_generations(benchmark::State& state)
{
    pdptw::GaConfig cfg;
    cfg.generations = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(pdptw::evolve(instance(), cfg).aggregate);
    }
}
BENCHMARK(evolve_generations)->Arg(50)->Arg(500)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();

#include <cmath>

#include "doctest.h"
#include "sisar/ga.hpp"

using namespace sisar;

namespace {

// two-group toy world: a handful of extra-fragile people and regular
// workers, free-running epidemic, short horizon
WorldConfig toy_config() {
    WorldConfig c;
    c.population = 220;
    c.census = {20, 0, 0, 140, 0, 0, 60};
    c.large_factories = 1;
    c.nursing_homes = 1;
    c.hospitals = 1;
    c.open_spaces = 30;
    return c;
}

VaccinePlanner toy_planner() {
    VaccinePlanner p;
    p.config = toy_config();
    p.schedule = load_scenario("no_containment");
    p.scenario_seed = 77;
    QuotaTable base;
    for (int i = 0; i < 2; ++i) {
        QuotaRow r;
        r.from_day = 20 + 30 * i;
        r.budget = 4;
        base.rows.push_back(r);
    }
    p.base_table = base;
    p.options.start_day = 20;
    p.options.end_day = 200;
    p.options.max_days = 260;
    return p;
}

}  // namespace

TEST_CASE("constant population with zero mutation keeps a flat trace") {
    GaConfig cfg;
    cfg.population = 8;
    cfg.generations = 6;
    cfg.mutation_sigma = 0.0;
    cfg.crossover_p = 0.0;
    cfg.elitism = 1;
    std::vector<double> same(10, 0.5);
    for (int i = 0; i < 8; ++i) cfg.seeds.push_back(same);
    const GaEvaluator eval = [](const std::vector<double>& genes) {
        long fit = 0;
        for (double g : genes) fit += static_cast<long>(1000 * g * g);
        return std::make_pair(fit, std::vector<bool>(genes.size(), true));
    };
    const auto res = ga_optimize(10, eval, cfg);
    for (long f : res.best_fitness_trace) CHECK(f == res.best_fitness_trace.front());
}

TEST_CASE("elitism keeps the best fitness non-increasing") {
    GaConfig cfg;
    cfg.population = 12;
    cfg.generations = 20;
    cfg.seed = 3;
    const GaEvaluator eval = [](const std::vector<double>& genes) {
        // separable quadratic with optimum at 0.3
        long fit = 0;
        for (double g : genes)
            fit += static_cast<long>(10000 * (g - 0.3) * (g - 0.3));
        return std::make_pair(fit, std::vector<bool>(genes.size(), true));
    };
    const auto res = ga_optimize(6, eval, cfg);
    for (std::size_t i = 1; i < res.best_fitness_trace.size(); ++i)
        CHECK(res.best_fitness_trace[i] <= res.best_fitness_trace[i - 1]);
    CHECK(res.best.fitness < 3000);  // found the basin
    GaConfig bad;
    bad.population = 1;
    CHECK_THROWS_AS(ga_optimize(6, eval, bad), std::invalid_argument);
}

TEST_CASE("toy campaign search matches the exhaustive grid optimum") {
    auto planner = toy_planner();
    const std::vector<double> grid{0.0, 0.5, 1.0};

    // brute-force oracle over all 3^4 quota tables on the two active groups
    // (the other five groups are empty, their quotas never consulted)
    long best_exhaustive = std::numeric_limits<long>::max();
    std::vector<double> best_genes;
    const std::size_t len = planner.genome_length();
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
            for (int c = 0; c < 3; ++c)
                for (int d = 0; d < 3; ++d) {
                    std::vector<double> genes(len, 0.0);
                    // row 0: g1, g4; row 1: g1, g4
                    genes[0] = grid[static_cast<std::size_t>(a)];
                    genes[3] = grid[static_cast<std::size_t>(b)];
                    genes[kGroupCount + 0] = grid[static_cast<std::size_t>(c)];
                    genes[kGroupCount + 3] = grid[static_cast<std::size_t>(d)];
                    const auto outcome =
                        planner.evaluate_table(planner.table_from_genes(genes));
                    if (outcome.fitness < best_exhaustive) {
                        best_exhaustive = outcome.fitness;
                        best_genes = genes;
                    }
                }

    GaConfig cfg;
    cfg.population = 14;
    cfg.generations = 18;
    cfg.allele_grid = grid;
    cfg.seed = 5;
    cfg.seeds.clear();
    const auto res = planner.optimize(cfg);
    CHECK(res.best.fitness == best_exhaustive);
}

TEST_CASE("snapshot resumption equals a full replay") {
    auto planner = toy_planner();
    QuotaTable table = planner.base_table;
    for (auto& row : table.rows) row.quotas.fill(0.5);
    const auto resumed = planner.evaluate_table(table);
    const auto full = run_strategy(planner.config, planner.schedule, planner.scenario_seed,
                                   table, planner.options.spread_factor, planner.options);
    CHECK(resumed.fitness == full.fitness);
    CHECK(resumed.record.cum_infected == full.record.cum_infected);
    CHECK(resumed.record.duration == full.record.duration);
}

#pragma once

#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include "sisar/rng.hpp"
#include "sisar/vaccine.hpp"

namespace sisar {

// Genetic search over vaccination quota tables. The genome is the quota
// matrix alone; day thresholds and budgets stay fixed. Entries the dose
// allocation never consults (completed groups, budget absorbed to the left)
// carry no fitness signal and are excluded from mutation.

struct Genome {
    std::vector<double> genes;  // rows x groups, row major, in [0,1]
    long fitness = std::numeric_limits<long>::max();
    bool evaluated = false;
    std::vector<bool> consulted;  // same layout, valid once evaluated
};

struct GaConfig {
    int population = 20;
    int generations = 30;
    int tournament = 3;
    double crossover_p = 0.7;
    double mutation_sigma = 0.15;
    int elitism = 2;
    std::uint64_t seed = 11;
    std::vector<double> allele_grid;       // when set, genes snap to these values
    std::vector<std::vector<double>> seeds;  // optional starting genomes
    int workers = 1;
};

struct GaResult {
    Genome best;
    std::vector<long> best_fitness_trace;  // per generation
};

// fitness evaluator: genes -> (fitness to minimize, consulted mask)
using GaEvaluator =
    std::function<std::pair<long, std::vector<bool>>(const std::vector<double>&)>;

namespace detail {

inline double snap_to_grid(double v, const std::vector<double>& grid) {
    if (grid.empty()) return v;
    double best = grid.front();
    for (double g : grid)
        if (std::abs(g - v) < std::abs(best - v)) best = g;
    return best;
}

inline void evaluate_population(std::vector<Genome>& pop, const GaEvaluator& eval,
                                int workers) {
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < pop.size(); ++i)
        if (!pop[i].evaluated) todo.push_back(i);
    if (todo.empty()) return;
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= todo.size()) return;
            Genome& g = pop[todo[k]];
            auto [fit, mask] = eval(g.genes);
            g.fitness = fit;
            g.consulted = std::move(mask);
            g.evaluated = true;
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
}

}  // namespace detail

inline GaResult ga_optimize(std::size_t genome_length, const GaEvaluator& eval,
                            const GaConfig& cfg = {}) {
    if (cfg.population < 2 || cfg.generations < 1)
        throw std::invalid_argument("ga_optimize: population and generations must be positive");
    if (cfg.elitism < 1 || cfg.elitism >= cfg.population)
        throw std::invalid_argument("ga_optimize: elitism out of range");
    Rng rng(cfg.seed);

    auto random_genome = [&]() {
        Genome g;
        g.genes.resize(genome_length);
        for (auto& v : g.genes) v = detail::snap_to_grid(rng.uniform(), cfg.allele_grid);
        return g;
    };

    std::vector<Genome> pop;
    for (const auto& seed_genes : cfg.seeds) {
        if (seed_genes.size() != genome_length)
            throw std::invalid_argument("ga_optimize: seed genome length mismatch");
        Genome g;
        g.genes = seed_genes;
        pop.push_back(std::move(g));
        if (static_cast<int>(pop.size()) >= cfg.population) break;
    }
    while (static_cast<int>(pop.size()) < cfg.population) pop.push_back(random_genome());

    detail::evaluate_population(pop, eval, cfg.workers);
    auto by_fitness = [](const Genome& a, const Genome& b) { return a.fitness < b.fitness; };
    std::sort(pop.begin(), pop.end(), by_fitness);

    GaResult result;
    result.best_fitness_trace.push_back(pop.front().fitness);

    auto tournament_pick = [&]() -> const Genome& {
        std::size_t best = rng.below(pop.size());
        for (int k = 1; k < cfg.tournament; ++k) {
            const std::size_t c = rng.below(pop.size());
            if (pop[c].fitness < pop[best].fitness) best = c;
        }
        return pop[best];
    };

    for (int gen = 0; gen < cfg.generations; ++gen) {
        std::vector<Genome> next;
        for (int e = 0; e < cfg.elitism; ++e) next.push_back(pop[static_cast<std::size_t>(e)]);
        while (static_cast<int>(next.size()) < cfg.population) {
            const Genome& pa = tournament_pick();
            const Genome& pb = tournament_pick();
            Genome child;
            child.genes.resize(genome_length);
            if (rng.bernoulli(cfg.crossover_p)) {
                for (std::size_t j = 0; j < genome_length; ++j)
                    child.genes[j] = rng.bernoulli(0.5) ? pa.genes[j] : pb.genes[j];
            } else {
                child.genes = pa.genes;
            }
            // genes the allocation never reads carry no signal; leave them be
            for (std::size_t j = 0; j < genome_length; ++j) {
                if (!pa.consulted.empty() && !pa.consulted[j]) continue;
                double v = child.genes[j] + rng.normal(0.0, cfg.mutation_sigma);
                v = std::clamp(v, 0.0, 1.0);
                child.genes[j] = detail::snap_to_grid(v, cfg.allele_grid);
            }
            next.push_back(std::move(child));
        }
        pop = std::move(next);
        detail::evaluate_population(pop, eval, cfg.workers);
        std::sort(pop.begin(), pop.end(), by_fitness);
        result.best_fitness_trace.push_back(pop.front().fitness);
    }
    result.best = pop.front();
    return result;
}

// Wires the genetic search to the campaign replay on one fixed scenario
// seed. The scenario prefix up to the first possible vaccination effect is
// simulated once and snapshotted; every evaluation resumes from the copy.
struct VaccinePlanner {
    WorldConfig config;
    Schedule schedule;
    std::uint64_t scenario_seed = 1;
    QuotaTable base_table = plain_quota_table();
    StrategyOptions options;

    QuotaTable table_from_genes(const std::vector<double>& genes) const {
        QuotaTable t = base_table;
        std::size_t j = 0;
        for (auto& row : t.rows)
            for (auto& q : row.quotas) q = genes[j++];
        return t;
    }

    std::vector<double> genes_from_table(const QuotaTable& t) const {
        std::vector<double> genes;
        for (const auto& row : t.rows)
            for (double q : row.quotas) genes.push_back(q);
        return genes;
    }

    std::size_t genome_length() const { return base_table.rows.size() * kGroupCount; }

    CampaignOutcome evaluate_table(const QuotaTable& table) const {
        return run_campaign(snapshot(), schedule, table, options);
    }

    GaResult optimize(GaConfig cfg) const {
        snapshot();  // materialize the prefix before workers share it
        if (cfg.seeds.empty() && base_table.rows.size() == plain_quota_table().rows.size()) {
            // warm-start with the two published hand-made strategies
            cfg.seeds.push_back(genes_from_table(plain_quota_table()));
            cfg.seeds.push_back(genes_from_table(wise_quota_table()));
        }
        const GaEvaluator eval = [this](const std::vector<double>& genes) {
            const auto outcome = evaluate_table(table_from_genes(genes));
            std::vector<bool> mask;
            for (const auto& row : outcome.consulted)
                for (bool c : row) mask.push_back(c);
            return std::make_pair(outcome.fitness, mask);
        };
        return ga_optimize(genome_length(), eval, cfg);
    }

    const World& snapshot() const {
        if (!prefix_) {
            World w = build_world(config, scenario_seed);
            detail_run_prefix(w);
            prefix_ = std::make_unique<World>(std::move(w));
        }
        return *prefix_;
    }

private:
    void detail_run_prefix(World& w) const {
        // vaccination starts at start_day and first bites at start_day +
        // delay; the allocation itself is deterministic, so the common
        // trajectory extends to the day before the campaign begins
        RunOptions opts;
        opts.max_days = options.start_day - 1;
        opts.record_daily = false;
        opts.record_events = false;
        RunRecord rec = run_epidemic(w, schedule, opts);
        (void)rec;
    }

    mutable std::unique_ptr<World> prefix_;
};

}  // namespace sisar

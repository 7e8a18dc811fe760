#pragma once

#include <atomic>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "sisar/engine.hpp"
#include "sisar/stats.hpp"

namespace sisar {

struct RunSummary {
    std::uint64_t seed = 0;
    int duration = 0;
    long cum_sym = 0;
    long cum_total = 0;
    long deceased = 0;
    std::array<CheckpointSnapshot, 5> checkpoints{};
};

struct BatchRecord {
    std::string scenario;
    std::uint64_t base_seed = 0;
    std::uint64_t config_hash = 0;
    std::vector<RunSummary> runs;
};

inline std::uint64_t fnv1a(const std::string& text, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline RunSummary summarize_run(const RunRecord& rec) {
    RunSummary s;
    s.seed = rec.seed;
    s.duration = rec.duration;
    s.cum_sym = rec.cum_symptomatic;
    s.cum_total = rec.cum_infected;
    s.deceased = rec.deceased;
    s.checkpoints = rec.checkpoints;
    return s;
}

// n independent replications with seeds base_seed .. base_seed+n-1 on a
// worker pool. The result is a pure function of (config, schedule, n,
// base_seed): workers pull run indices and write into their own slots.
inline BatchRecord run_batch(const WorldConfig& config, const Schedule& schedule,
                             const std::string& scenario_name, int n,
                             std::uint64_t base_seed, int workers,
                             int max_days = 1095) {
    if (n < 1) throw std::invalid_argument("run_batch: n must be >= 1");
    if (workers < 1) workers = 1;
    BatchRecord batch;
    batch.scenario = scenario_name;
    batch.base_seed = base_seed;
    batch.runs.resize(static_cast<std::size_t>(n));

    std::atomic<int> next{0};
    auto work = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n) return;
            World w = build_world(config, base_seed + static_cast<std::uint64_t>(i));
            RunOptions opts;
            opts.max_days = max_days;
            opts.record_daily = false;
            opts.record_events = false;
            const RunRecord rec = run_epidemic(w, schedule, opts);
            batch.runs[static_cast<std::size_t>(i)] = summarize_run(rec);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    std::ostringstream key;
    key << scenario_name << '|' << n << '|' << base_seed << '|' << config.population;
    for (int c : config.census) key << ',' << c;
    key << '|' << config.open_spaces << '|' << config.factory_room_size << '|'
        << config.usual_places << '|' << config.side;
    batch.config_hash = fnv1a(key.str());
    return batch;
}

// Second-wave selection of the factual/counterfactual studies. Stage 1 keeps
// runs whose cumulative symptomatic count sits inside half-open calendar
// windows; stage 2 additionally requires the December total (symptomatic plus
// asymptomatic) to have grown by `ratio` over the September one.
struct SelectionCriteria {
    double jun1_low = 10.0, jun1_high = 70.0;    // (low, high]
    double sep20_low = 20.0, sep20_high = 90.0;  // (low, high]
    double second_wave_ratio = 2.0;
};

struct Selection {
    std::vector<std::size_t> stage1;
    std::vector<std::size_t> stage2;
};

inline Selection select_second_wave(const BatchRecord& batch,
                                    const SelectionCriteria& c = {}) {
    Selection sel;
    for (std::size_t i = 0; i < batch.runs.size(); ++i) {
        const auto& r = batch.runs[i];
        const double jun_sym = static_cast<double>(r.checkpoints[0].cum_sym);
        const double sep_sym = static_cast<double>(r.checkpoints[1].cum_sym);
        if (!(jun_sym > c.jun1_low && jun_sym <= c.jun1_high)) continue;
        if (!(sep_sym > c.sep20_low && sep_sym <= c.sep20_high)) continue;
        sel.stage1.push_back(i);
        const double sep_tot = static_cast<double>(r.checkpoints[1].cum_total);
        const double dec_tot = static_cast<double>(r.checkpoints[2].cum_total);
        if (dec_tot >= c.second_wave_ratio * sep_tot) sel.stage2.push_back(i);
    }
    return sel;
}

// Statistics table mirroring the checkpoint layout of the selection studies:
// five checkpoint (sym, total) pairs, the end-of-run pair, and the duration.
struct StatsTable {
    std::vector<std::string> columns;
    std::vector<SummaryStat> stats;

    std::string csv() const {
        std::ostringstream out;
        out << "column,count,mean,std\n";
        char buf[64];
        for (std::size_t i = 0; i < columns.size(); ++i) {
            std::snprintf(buf, sizeof(buf), "%zu,%.4f,%.4f", stats[i].count, stats[i].mean,
                          stats[i].std_dev);
            out << columns[i] << ',' << buf << "\n";
        }
        return out.str();
    }
};

inline StatsTable summarize(const BatchRecord& batch,
                            const std::vector<std::size_t>& subset,
                            bool sample_std = true) {
    if (subset.empty()) throw std::invalid_argument("summarize: empty subset");
    static const char* cp_names[] = {"jun1_2020", "sep20_2020", "dec15_2020", "feb1_2021",
                                     "may1_2021"};
    StatsTable table;
    auto add = [&](const std::string& name, auto&& getter) {
        std::vector<double> xs;
        xs.reserve(subset.size());
        for (std::size_t i : subset) xs.push_back(getter(batch.runs[i]));
        table.columns.push_back(name);
        table.stats.push_back(summary_stat(xs, sample_std));
    };
    for (int cp = 0; cp < 5; ++cp) {
        add(std::string(cp_names[cp]) + "_sym", [cp](const RunSummary& r) {
            return static_cast<double>(r.checkpoints[cp].cum_sym);
        });
        add(std::string(cp_names[cp]) + "_total", [cp](const RunSummary& r) {
            return static_cast<double>(r.checkpoints[cp].cum_total);
        });
    }
    add("final_sym", [](const RunSummary& r) { return static_cast<double>(r.cum_sym); });
    add("final_total", [](const RunSummary& r) { return static_cast<double>(r.cum_total); });
    add("duration", [](const RunSummary& r) { return static_cast<double>(r.duration); });
    return table;
}

inline std::string batch_csv(const BatchRecord& batch) {
    std::ostringstream out;
    out << "seed,duration,cumSym,cumTotal,deceased";
    static const char* cp_names[] = {"jun1", "sep20", "dec15", "feb1", "may1"};
    for (const char* n : cp_names) out << ',' << n << "Sym," << n << "Total";
    out << "\n";
    for (const auto& r : batch.runs) {
        out << r.seed << ',' << r.duration << ',' << r.cum_sym << ',' << r.cum_total << ','
            << r.deceased;
        for (const auto& cp : r.checkpoints) out << ',' << cp.cum_sym << ',' << cp.cum_total;
        out << "\n";
    }
    return out.str();
}

}  // namespace sisar

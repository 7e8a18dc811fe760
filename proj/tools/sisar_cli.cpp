// Command-line laboratory: single runs, seeded batches, wave selection,
// diagrams, reproduction-number estimation, vaccination planning, and the
// economic impact ledgers.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sisar/batch.hpp"
#include "sisar/caseseries.hpp"
#include "sisar/econ.hpp"
#include "sisar/engine.hpp"
#include "sisar/ga.hpp"
#include "sisar/heatmap.hpp"
#include "sisar/mcmc.hpp"
#include "sisar/rt.hpp"
#include "sisar/scenarios.hpp"
#include "sisar/sequence_plot.hpp"
#include "sisar/vaccine.hpp"

namespace fs = std::filesystem;
using namespace sisar;

namespace {

int default_workers() {
    if (const char* env = std::getenv("SISAR_WORKERS")) {
        const int w = std::atoi(env);
        if (w >= 1) return w;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Schedule schedule_for(const std::string& scenario, const std::string& scenario_file) {
    if (!scenario_file.empty()) return parse_script(read_file(scenario_file));
    return load_scenario(scenario);
}

WorldConfig config_for(const std::string& config_file) {
    if (config_file.empty()) return WorldConfig{};
    return parse_world_config(read_file(config_file));
}

void write_manifest(const fs::path& dir, const std::string& description) {
    write_file(dir / "manifest.txt",
               description + "config_hash " + std::to_string(fnv1a(description)) + "\n");
}

std::string rt_csv(const CaseSeries& series, const RtEstimate& est) {
    std::ostringstream out;
    out << "date,rt,lo,hi\n";
    for (std::size_t t = 0; t < est.rt.size(); ++t) {
        out << series.date_at(t).iso() << ',';
        if (!std::isnan(est.rt[t])) out << est.rt[t];
        out << ',';
        if (!est.lo.empty() && !std::isnan(est.lo[t])) out << est.lo[t];
        out << ',';
        if (!est.hi.empty() && !std::isnan(est.hi[t])) out << est.hi[t];
        out << "\n";
    }
    return out.str();
}

std::string rt_svg(const RtEstimate& est) {
    const double w = 900, h = 360, margin = 40;
    const double hi = 3.0;
    SvgWriter svg(w, h);
    const double x_step = (w - 2 * margin) / std::max<std::size_t>(1, est.rt.size() - 1);
    auto y_of = [&](double v) { return h - margin - (h - 2 * margin) * std::min(v, hi) / hi; };
    svg.line(margin, y_of(1.0), w - margin, y_of(1.0), "silver", 0.8, "4,4");
    std::ostringstream pts;
    for (std::size_t t = 0; t < est.rt.size(); ++t) {
        if (std::isnan(est.rt[t])) continue;
        pts << SvgWriter::fmt(margin + x_step * t) << ',' << SvgWriter::fmt(y_of(est.rt[t]))
            << ' ';
    }
    svg.polyline(pts.str(), "crimson", 1.4);
    if (!est.lo.empty()) {
        std::ostringstream lo_pts, hi_pts;
        for (std::size_t t = 0; t < est.rt.size(); ++t) {
            if (std::isnan(est.lo[t])) continue;
            lo_pts << SvgWriter::fmt(margin + x_step * t) << ','
                   << SvgWriter::fmt(y_of(est.lo[t])) << ' ';
            hi_pts << SvgWriter::fmt(margin + x_step * t) << ','
                   << SvgWriter::fmt(y_of(est.hi[t])) << ' ';
        }
        svg.polyline(lo_pts.str(), "violet", 0.8);
        svg.polyline(hi_pts.str(), "violet", 0.8);
    }
    svg.text(margin, margin - 10, "reproduction number (" + est.method + ")", 12.0);
    return svg.finish();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sisar: stochastic agent-based epidemic laboratory"};
    app.require_subcommand(1);
    app.fallthrough();  // global options may follow the subcommand

    std::string out_dir = "out";
    std::string scenario = "baseline_appendix1";
    std::string scenario_file;
    std::string config_file;
    std::optional<std::uint64_t> seed;
    int workers = default_workers();
    app.add_option("--out", out_dir, "output directory root");

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--scenario", scenario, "bundled scenario name");
        cmd->add_option("--scenario-file", scenario_file, "intervention script file");
        cmd->add_option("--config", config_file, "world config file");
        cmd->add_option("--seed", seed, "base random seed")->required();
    };

    auto* cmd_run = app.add_subcommand("run", "single replication with event log");
    add_common(cmd_run);

    auto* cmd_batch = app.add_subcommand("batch", "seeded replication batch");
    int batch_n = 300;
    add_common(cmd_batch);
    cmd_batch->add_option("--n", batch_n, "number of replications");
    cmd_batch->add_option("--workers", workers, "worker threads");

    auto* cmd_select = app.add_subcommand("select", "second-wave selection filters");
    double ratio = 2.0;
    int select_n = 300;
    add_common(cmd_select);
    cmd_select->add_option("--n", select_n, "number of replications");
    cmd_select->add_option("--workers", workers, "worker threads");
    cmd_select->add_option("--ratio", ratio, "second-wave growth threshold");

    auto* cmd_heat = app.add_subcommand("heatmap", "duration/outcome heat-map of a batch");
    int heat_n = 300, bins_x = 40, bins_y = 40;
    add_common(cmd_heat);
    cmd_heat->add_option("--n", heat_n, "number of replications");
    cmd_heat->add_option("--workers", workers, "worker threads");
    cmd_heat->add_option("--bins-x", bins_x, "duration bins");
    cmd_heat->add_option("--bins-y", bins_y, "outcome bins");

    auto* cmd_seq = app.add_subcommand("sequence", "contagion-sequence diagram of one run");
    int seq_limit = 0;
    add_common(cmd_seq);
    cmd_seq->add_option("--limit", seq_limit, "cap on drawn infections (0 = all)");

    auto* cmd_rt = app.add_subcommand("rt", "reproduction number estimation");
    std::string rt_input, rt_format = "simple", rt_method = "deseasoned-mcmc";
    int rt_tau = 14;
    double rt_alpha = 100.0;
    std::uint64_t rt_seed = 2021;
    cmd_rt->add_option("--input", rt_input, "case CSV")->required();
    cmd_rt->add_option("--format", rt_format, "simple|pc");
    cmd_rt->add_option("--method", rt_method, "naive|windowed|smoothed|deseasoned-mcmc");
    cmd_rt->add_option("--tau", rt_tau, "window width for the windowed method");
    cmd_rt->add_option("--alpha", rt_alpha, "smoothing weight");
    cmd_rt->add_option("--seed", rt_seed, "sampler seed");

    auto* cmd_vax = app.add_subcommand("vaccinate", "vaccination campaign on a fixed run");
    std::string strategy = "plain", quota_file;
    std::string vax_scenario = "forced_second_wave_measures";
    double spread = 1.0;
    int ga_pop = 20, ga_gen = 30;
    std::uint64_t ga_seed = 11;
    cmd_vax->add_option("--scenario", vax_scenario, "bundled scenario name");
    cmd_vax->add_option("--scenario-file", scenario_file, "intervention script file");
    cmd_vax->add_option("--config", config_file, "world config file");
    cmd_vax->add_option("--scenario-seed", seed, "seed of the fixed epidemic run")->required();
    cmd_vax->add_option("--strategy", strategy, "plain|wise|ga-published|table|ga");
    cmd_vax->add_option("--quota-file", quota_file, "quota CSV for --strategy table");
    cmd_vax->add_option("--spread", spread, "transmission of effective vaccinated carriers");
    cmd_vax->add_option("--ga-population", ga_pop, "genetic search population");
    cmd_vax->add_option("--ga-generations", ga_gen, "genetic search generations");
    cmd_vax->add_option("--ga-seed", ga_seed, "genetic search seed");
    cmd_vax->add_option("--workers", workers, "fitness evaluation threads");

    auto* cmd_econ = app.add_subcommand("econ", "economic impact ledgers");
    std::string econ_scenario = "all";
    double econ_months = 3.0;
    cmd_econ->add_option("--lockdown", econ_scenario, "A|B|C|all");
    cmd_econ->add_option("--months", econ_months, "restriction horizon in months");

    auto* cmd_scen = app.add_subcommand("scenario", "print a bundled scenario script");
    std::string scen_name = "baseline_appendix1";
    cmd_scen->add_option("name", scen_name, "scenario name");

    CLI11_PARSE(app, argc, argv);

    try {
        const fs::path root(out_dir);
        if (cmd_run->parsed()) {
            const auto sched = schedule_for(scenario, scenario_file);
            World w = build_world(config_for(config_file), *seed);
            const auto rec = run_epidemic(w, sched);
            const fs::path dir = root / "run" / scenario;
            write_file(dir / "events.log", rec.event_log());
            write_file(dir / "daily.csv", rec.daily_csv());
            write_file(dir / "run.txt", rec.serialize());
            write_manifest(dir,
                           "run scenario=" + scenario + " seed=" + std::to_string(*seed) + "\n");
            std::cout << "duration " << rec.duration << " cumSym " << rec.cum_symptomatic
                      << " cumTotal " << rec.cum_infected << "\n";
        } else if (cmd_batch->parsed()) {
            const auto sched = schedule_for(scenario, scenario_file);
            const auto batch =
                run_batch(config_for(config_file), sched, scenario, batch_n, *seed, workers);
            const fs::path dir = root / "batch" / scenario;
            write_file(dir / "runs.csv", batch_csv(batch));
            std::vector<std::size_t> all(batch.runs.size());
            for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
            write_file(dir / "stats.csv", summarize(batch, all).csv());
            const auto grid = heat_grid_of_batch(batch);
            write_file(dir / "heatmap.svg", emit_heatmap_svg(grid, scenario));
            write_file(dir / "heatmap.csv", grid.csv());
            write_manifest(dir, "batch scenario=" + scenario + " n=" + std::to_string(batch_n) +
                                    " seed=" + std::to_string(*seed) + "\n");
            std::cout << "wrote " << dir.string() << "\n";
        } else if (cmd_select->parsed()) {
            const auto sched = schedule_for(scenario, scenario_file);
            const auto batch =
                run_batch(config_for(config_file), sched, scenario, select_n, *seed, workers);
            SelectionCriteria crit;
            crit.second_wave_ratio = ratio;
            const auto sel = select_second_wave(batch, crit);
            const fs::path dir = root / "select" / scenario;
            write_file(dir / "runs.csv", batch_csv(batch));
            std::ostringstream sel_csv;
            sel_csv << "stage,run_index,seed\n";
            for (auto i : sel.stage1) sel_csv << "1," << i << ',' << batch.runs[i].seed << "\n";
            for (auto i : sel.stage2) sel_csv << "2," << i << ',' << batch.runs[i].seed << "\n";
            write_file(dir / "selection.csv", sel_csv.str());
            if (!sel.stage1.empty())
                write_file(dir / "stage1_stats.csv", summarize(batch, sel.stage1).csv());
            if (!sel.stage2.empty())
                write_file(dir / "stage2_stats.csv", summarize(batch, sel.stage2).csv());
            write_manifest(dir, "select scenario=" + scenario + " n=" +
                                    std::to_string(select_n) + " seed=" + std::to_string(*seed) +
                                    " ratio=" + std::to_string(ratio) + "\n");
            std::cout << "stage1 " << sel.stage1.size() << " stage2 " << sel.stage2.size()
                      << " of " << select_n << "\n";
        } else if (cmd_heat->parsed()) {
            const auto sched = schedule_for(scenario, scenario_file);
            const auto batch =
                run_batch(config_for(config_file), sched, scenario, heat_n, *seed, workers);
            const auto grid = heat_grid_of_batch(batch, bins_x, bins_y);
            const fs::path dir = root / "heatmap" / scenario;
            write_file(dir / "heatmap.svg", emit_heatmap_svg(grid, scenario));
            write_file(dir / "heatmap.csv", grid.csv());
            write_manifest(dir, "heatmap scenario=" + scenario + " n=" + std::to_string(heat_n) +
                                    " seed=" + std::to_string(*seed) + "\n");
            std::cout << "wrote " << dir.string() << "\n";
        } else if (cmd_seq->parsed()) {
            const auto sched = schedule_for(scenario, scenario_file);
            World w = build_world(config_for(config_file), *seed);
            const auto rec = run_epidemic(w, sched);
            const fs::path dir = root / "sequence" / scenario;
            write_file(dir / "sequence.svg", emit_sequence(rec.events, seq_limit));
            write_file(dir / "events.log", rec.event_log());
            write_manifest(dir, "sequence scenario=" + scenario + " seed=" +
                                    std::to_string(*seed) + " limit=" +
                                    std::to_string(seq_limit) + "\n");
            std::cout << "wrote " << dir.string() << "\n";
        } else if (cmd_rt->parsed()) {
            const auto series = ingest_cases(rt_input, rt_format);
            RtEstimate est;
            if (rt_method == "naive") {
                est = naive_rt(series.counts, gamma_profile());
            } else if (rt_method == "windowed") {
                est = windowed_rt(series.counts, gamma_profile(), rt_tau);
            } else if (rt_method == "smoothed") {
                est = smoothed_rt(series.counts, gamma_profile(), rt_alpha);
            } else if (rt_method == "deseasoned-mcmc") {
                const auto dec = rsvd_deseason(series.counts, 7);
                McmcConfig cfg;
                cfg.seed = rt_seed;
                est = mcmc_rt(dec, gamma_profile(), cfg);
            } else {
                throw std::invalid_argument("unknown rt method: " + rt_method);
            }
            const fs::path dir = root / "rt";
            write_file(dir / (rt_method + ".csv"), rt_csv(series, est));
            write_file(dir / (rt_method + ".svg"), rt_svg(est));
            write_manifest(dir, "rt input=" + rt_input + " method=" + rt_method + "\n");
            std::cout << "wrote " << (dir / (rt_method + ".csv")).string() << "\n";
        } else if (cmd_vax->parsed()) {
            VaccinePlanner planner;
            planner.config = config_for(config_file);
            planner.schedule = schedule_for(vax_scenario, scenario_file);
            planner.scenario_seed = *seed;
            planner.options.spread_factor = spread;
            const fs::path dir = root / "vaccinate" / strategy;
            if (strategy == "ga") {
                GaConfig cfg;
                cfg.population = ga_pop;
                cfg.generations = ga_gen;
                cfg.seed = ga_seed;
                cfg.workers = workers;
                const auto res = planner.optimize(cfg);
                const auto best_table = planner.table_from_genes(res.best.genes);
                const auto outcome = planner.evaluate_table(best_table);
                write_file(dir / "best_quotas.csv", best_table.csv());
                std::ostringstream trace;
                trace << "generation,best_fitness\n";
                for (std::size_t g = 0; g < res.best_fitness_trace.size(); ++g)
                    trace << g << ',' << res.best_fitness_trace[g] << "\n";
                write_file(dir / "fitness_trace.csv", trace.str());
                write_file(dir / "campaign.csv", campaign_csv(outcome));
                std::cout << "best cumulative symptomatic " << res.best.fitness << "\n";
            } else {
                QuotaTable table;
                if (strategy == "plain") table = plain_quota_table();
                else if (strategy == "wise") table = wise_quota_table();
                else if (strategy == "ga-published") table = ga_published_quota_table();
                else if (strategy == "table") table = parse_quota_csv(read_file(quota_file));
                else throw std::invalid_argument("unknown strategy: " + strategy);
                const auto outcome = run_strategy(planner.config, planner.schedule, *seed,
                                                  table, spread, planner.options);
                write_file(dir / "campaign.csv", campaign_csv(outcome));
                write_file(dir / "quotas.csv", table.csv());
                std::cout << "cumulative symptomatic " << outcome.fitness << "\n";
            }
            write_manifest(dir, "vaccinate strategy=" + strategy + " scenario=" + vax_scenario +
                                    " seed=" + std::to_string(*seed) + " spread=" +
                                    std::to_string(spread) + "\n");
        } else if (cmd_econ->parsed()) {
            const fs::path dir = root / "econ";
            const auto table = MultiplierTable::piedmont();
            write_file(dir / "multipliers.csv", table.csv());
            std::ostringstream report;
            report << ledger_report();
            for (const auto& warning : table.component_sum_warnings())
                report << "# warning: " << warning << "\n";
            write_file(dir / "ledger.csv", report.str());
            if (econ_scenario != "all") {
                const auto s = parse_scenario(econ_scenario);
                const auto loss = total_loss(s, econ_months);
                std::cout << "scenario " << scenario_name(s) << " months " << econ_months
                          << ": health " << loss.health_expenditure << " added-value "
                          << loss.added_value_loss << " tax " << loss.tax_loss
                          << " human-capital " << loss.human_capital_loss << " total "
                          << loss.total << "\n";
            } else {
                std::cout << report.str();
            }
        } else if (cmd_scen->parsed()) {
            const auto sched = load_scenario(scen_name);
            std::cout << "# " << scen_name << " (" << sched.entries.size() << " entries)\n";
            for (const auto& e : sched.entries) {
                if (e.param == "import")
                    std::cout << "at " << e.day << " import " << static_cast<int>(e.value)
                              << "\n";
                else
                    std::cout << "at " << e.day << " set " << e.param << ' ' << e.value << "\n";
            }
        }
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 1;
    }
    return 0;
}

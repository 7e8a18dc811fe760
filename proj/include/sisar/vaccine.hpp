#pragma once

#include <array>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sisar/engine.hpp"
#include "sisar/scenarios.hpp"

namespace sisar {

// Vaccination campaigns: a quota table assigns, from given days on, a daily
// dose budget and per-group quotas. Doses flow left to right over the groups
// g1..g7; each group takes ceil(quota x remaining unvaccinated susceptible)
// doses out of what is left of the budget, so higher-priority groups absorb
// the budget first.

inline constexpr int kVaccinationDelayDays = 40;  // dose -> effectiveness
inline constexpr int kCampaignStartDay = 373;     // 2021-02-12 in the model calendar
inline constexpr int kCampaignEndDay = 738;

struct QuotaRow {
    int from_day = kCampaignStartDay;
    double budget = 0.0;  // doses per day, model scale
    std::array<double, kGroupCount> quotas{};
};

struct QuotaTable {
    std::vector<QuotaRow> rows;

    void validate() const {
        if (rows.empty()) throw std::invalid_argument("quota table: no rows");
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].budget < 0.0) throw std::invalid_argument("quota table: negative budget");
            for (double q : rows[i].quotas)
                if (q < 0.0 || q > 1.0)
                    throw std::invalid_argument("quota table: quota outside [0,1]");
            if (i > 0 && rows[i].from_day <= rows[i - 1].from_day)
                throw std::invalid_argument("quota table: from_day not increasing");
        }
    }

    // active row for a day, or -1 before the campaign
    int row_for_day(int day) const {
        int active = -1;
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (rows[i].from_day <= day) active = static_cast<int>(i);
        return active;
    }

    std::string csv() const {
        std::ostringstream out;
        out << "from_day,budget,q1,q2,q3,q4,q5,q6,q7\n";
        char buf[200];
        for (const auto& r : rows) {
            std::snprintf(buf, sizeof(buf), "%d,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g,%.6g",
                          r.from_day, r.budget, r.quotas[0], r.quotas[1], r.quotas[2],
                          r.quotas[3], r.quotas[4], r.quotas[5], r.quotas[6]);
            out << buf << "\n";
        }
        return out.str();
    }
};

inline QuotaTable parse_quota_csv(const std::string& text) {
    QuotaTable table;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.find("from_day") != std::string::npos) continue;  // header
        QuotaRow row;
        if (std::sscanf(line.c_str(), "%d,%lf,%lf,%lf,%lf,%lf,%lf,%lf,%lf", &row.from_day,
                        &row.budget, &row.quotas[0], &row.quotas[1], &row.quotas[2],
                        &row.quotas[3], &row.quotas[4], &row.quotas[5],
                        &row.quotas[6]) != 9)
            throw std::invalid_argument("quota CSV: bad row: " + line);
        table.rows.push_back(row);
    }
    table.validate();
    return table;
}

// the published plain strategy: uniform 0.1 quotas, growing budgets
inline QuotaTable plain_quota_table() {
    QuotaTable t;
    const int days[5] = {373, 433, 493, 553, 613};
    const double budgets[5] = {5, 10, 10, 10, 20};
    for (int i = 0; i < 5; ++i) {
        QuotaRow r;
        r.from_day = days[i];
        r.budget = budgets[i];
        r.quotas.fill(0.1);
        t.rows.push_back(r);
    }
    return t;
}

// the published wise strategy: postpone regular workers, regular people and
// the young until mid-campaign
inline QuotaTable wise_quota_table() {
    QuotaTable t = plain_quota_table();
    for (int i = 0; i < 2; ++i) {
        t.rows[i].quotas[3] = 0.0;  // g4
        t.rows[i].quotas[5] = 0.0;  // g6
        t.rows[i].quotas[6] = 0.0;  // g7
    }
    return t;
}

// the published best table found by the genetic search, with vaccinated
// people still spreading the infection
inline QuotaTable ga_published_quota_table() {
    QuotaTable t;
    const int days[5] = {373, 433, 493, 553, 613};
    const double budgets[5] = {5, 10, 10, 10, 20};
    const double q[5][7] = {
        {0.01, 0.00, 0.00, 0.79, 0.18, 0.38, 0.19},
        {0.94, 0.06, 0.32, 0.54, 0.19, 0.83, 0.50},
        {0.97, 0.97, 0.74, 0.79, 0.20, 0.14, 0.52},
        {0.98, 0.83, 0.02, 0.39, 0.99, 0.04, 0.48},
        {0.52, 0.01, 0.83, 0.60, 1.00, 0.27, 0.90},
    };
    for (int i = 0; i < 5; ++i) {
        QuotaRow r;
        r.from_day = days[i];
        r.budget = budgets[i];
        for (int g = 0; g < 7; ++g) r.quotas[g] = q[i][g];
        t.rows.push_back(r);
    }
    return t;
}

struct DoseAllocation {
    std::array<int, kGroupCount> doses{};
    std::array<bool, kGroupCount> consulted{};  // column reached with budget and people left
};

// Left-absorption allocation for one day.
inline DoseAllocation allocate_doses(double budget, const std::array<double, kGroupCount>& quotas,
                                     const std::array<int, kGroupCount>& remaining) {
    DoseAllocation out;
    if (budget < 0.0) throw std::invalid_argument("allocate_doses: negative budget");
    int budget_left = static_cast<int>(budget);
    for (int g = 0; g < kGroupCount; ++g) {
        if (remaining[g] < 0) throw std::invalid_argument("allocate_doses: negative remaining");
        if (remaining[g] == 0) continue;  // fully vaccinated group, quota irrelevant
        if (budget_left <= 0) break;      // budget absorbed by groups to the left
        out.consulted[g] = true;
        const int wanted = static_cast<int>(std::ceil(quotas[g] * remaining[g]));
        const int given = std::min({budget_left, wanted, remaining[g]});
        out.doses[g] = given;
        budget_left -= given;
    }
    return out;
}

struct CampaignOutcome {
    RunRecord record;
    long fitness = 0;  // cumulative symptomatic count, the quantity to minimize
    std::array<long, kGroupCount> vaccinated_by_group{};
    std::vector<std::array<long, kGroupCount>> daily_vaccinated;  // cumulative, day-indexed
    std::vector<std::array<bool, kGroupCount>> consulted;         // per quota row
    std::vector<std::int32_t> effective_day;  // per agent, -1 if never dosed
};

struct StrategyOptions {
    int start_day = kCampaignStartDay;
    int end_day = kCampaignEndDay;
    int max_days = 1100;
    double spread_factor = 1.0;  // transmission of effective vaccinated carriers
    bool record_events = false;
};

// Replays a scenario with the vaccination campaign active. A zero-budget
// table reproduces the plain scenario run bit for bit: the allocation draws
// no randomness and touches no agent.
inline CampaignOutcome run_campaign(World world, const Schedule& schedule,
                                    const QuotaTable& table, const StrategyOptions& opts = {}) {
    table.validate();
    if (table.rows.front().from_day != opts.start_day)
        throw std::invalid_argument("quota table must start at day " +
                                    std::to_string(opts.start_day));
    CampaignOutcome out;
    out.consulted.assign(table.rows.size(), {});
    out.daily_vaccinated.assign(static_cast<std::size_t>(opts.max_days) + 1, {});
    world.vacc_spread_factor = opts.spread_factor;

    std::array<long, kGroupCount> cumulative{};
    RunOptions run_opts;
    run_opts.max_days = opts.max_days;
    run_opts.record_events = opts.record_events;
    run_opts.daily_hook = [&](World& w, int day) {
        if (day >= opts.start_day && day < opts.end_day) {
            const int row_idx = table.row_for_day(day);
            if (row_idx >= 0) {
                const QuotaRow& row = table.rows[static_cast<std::size_t>(row_idx)];
                std::array<int, kGroupCount> remaining{};
                for (const auto& ag : w.agents)
                    if (w.status[ag.id] == Status::Susceptible && w.vacc_dose_day[ag.id] < 0)
                        ++remaining[static_cast<int>(ag.group)];
                const auto alloc = allocate_doses(row.budget, row.quotas, remaining);
                for (int g = 0; g < kGroupCount; ++g) {
                    if (alloc.consulted[g])
                        out.consulted[static_cast<std::size_t>(row_idx)][g] = true;
                    int left = alloc.doses[g];
                    if (left == 0) continue;
                    for (const auto& ag : w.agents) {
                        if (left == 0) break;
                        if (static_cast<int>(ag.group) != g) continue;
                        if (w.status[ag.id] != Status::Susceptible) continue;
                        if (w.vacc_dose_day[ag.id] >= 0) continue;
                        w.vacc_dose_day[ag.id] = day;
                        w.vacc_effective_day[ag.id] = day + kVaccinationDelayDays;
                        ++cumulative[g];
                        --left;
                    }
                }
            }
        }
        if (day <= opts.max_days)
            out.daily_vaccinated[static_cast<std::size_t>(day)] = cumulative;
    };
    out.record = run_epidemic(world, schedule, run_opts);
    // freeze the cumulative curve past the end of the run
    for (int d = out.record.duration + 1; d <= opts.max_days; ++d)
        out.daily_vaccinated[static_cast<std::size_t>(d)] = cumulative;
    out.vaccinated_by_group = cumulative;
    out.effective_day = world.vacc_effective_day;
    out.fitness = out.record.cum_symptomatic;
    return out;
}

inline CampaignOutcome run_strategy(const WorldConfig& config, const Schedule& schedule,
                                    std::uint64_t scenario_seed, const QuotaTable& table,
                                    double spread_factor,
                                    const StrategyOptions& base_opts = {}) {
    StrategyOptions opts = base_opts;
    opts.spread_factor = spread_factor;
    return run_campaign(build_world(config, scenario_seed), schedule, table, opts);
}

inline std::string campaign_csv(const CampaignOutcome& outcome) {
    std::ostringstream out;
    out << "day,newSym,cumSym";
    for (int g = 0; g < kGroupCount; ++g) out << ",vacc_g" << (g + 1);
    out << "\n";
    for (const auto& row : outcome.record.daily) {
        out << row.day << ',' << row.new_sym << ',' << row.cum_sym;
        const auto& v = outcome.daily_vaccinated[static_cast<std::size_t>(row.day)];
        for (int g = 0; g < kGroupCount; ++g) out << ',' << v[g];
        out << "\n";
    }
    return out.str();
}

}  // namespace sisar

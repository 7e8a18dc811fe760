#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sisar {

// Input-output impact accounting for the lockdown scenarios, in GDP
// points/1000 of the reference region.

inline constexpr int kSectorCount = 5;
inline const char* kSectorNames[kSectorCount] = {"agriculture", "manufacturing",
                                                 "construction", "distribution", "services"};

struct SectorMultipliers {
    double final_demand_share;
    double direct;
    double indirect;
    double induced;
    double total_production;  // published total, kept verbatim
    double added_value;
};

// Published multiplier matrix. Some rows are internally inconsistent in the
// source (component sums differing from the printed totals); they are stored
// verbatim and reported through `component_sum_warnings`.
struct MultiplierTable {
    std::array<SectorMultipliers, kSectorCount> sectors;

    static MultiplierTable piedmont() {
        return MultiplierTable{{{
            {0.53, 1.40, 0.50, 1.30, 3.20, 1.40},  // agriculture
            {0.33, 1.80, 1.20, 1.60, 4.50, 1.60},  // manufacturing
            {0.38, 1.70, 0.90, 1.60, 3.20, 1.60},  // construction
            {0.53, 1.40, 0.50, 1.30, 3.10, 1.60},  // distribution
            {0.50, 1.50, 0.50, 1.40, 3.40, 1.50},  // services
        }}};
    }

    std::vector<std::string> component_sum_warnings(double tol = 0.05) const {
        std::vector<std::string> warnings;
        for (int i = 0; i < kSectorCount; ++i) {
            const auto& s = sectors[i];
            const double sum = s.direct + s.indirect + s.induced;
            if (std::abs(sum - s.total_production) > tol) {
                char buf[160];
                std::snprintf(buf, sizeof(buf),
                              "%s: direct+indirect+induced = %.2f differs from the stated "
                              "total multiplier %.2f",
                              kSectorNames[i], sum, s.total_production);
                warnings.emplace_back(buf);
            }
        }
        return warnings;
    }

    std::string csv() const {
        std::ostringstream out;
        out << "sector,final_demand_share,direct,indirect,induced,total_production,"
               "added_value\n";
        char buf[160];
        for (int i = 0; i < kSectorCount; ++i) {
            const auto& s = sectors[i];
            std::snprintf(buf, sizeof(buf), "%s,%.2f,%.2f,%.2f,%.2f,%.2f,%.2f",
                          kSectorNames[i], s.final_demand_share, s.direct, s.indirect,
                          s.induced, s.total_production, s.added_value);
            out << buf << "\n";
        }
        return out.str();
    }
};

struct LeontiefImpact {
    double production = 0.0;
    double added_value = 0.0;
};

// Linear multiplier application: impact = sum over sectors of shock times the
// published total multipliers.
inline LeontiefImpact leontief_impact(const std::array<double, kSectorCount>& demand_shock,
                                      const MultiplierTable& table) {
    LeontiefImpact out;
    for (int i = 0; i < kSectorCount; ++i) {
        out.production += demand_shock[i] * table.sectors[i].total_production;
        out.added_value += demand_shock[i] * table.sectors[i].added_value;
    }
    return out;
}

enum class LockdownScenario { A, B, C };

inline const char* scenario_name(LockdownScenario s) {
    switch (s) {
        case LockdownScenario::A: return "A";
        case LockdownScenario::B: return "B";
        case LockdownScenario::C: return "C";
    }
    return "?";
}

inline LockdownScenario parse_scenario(const std::string& name) {
    if (name == "A" || name == "a") return LockdownScenario::A;
    if (name == "B" || name == "b") return LockdownScenario::B;
    if (name == "C" || name == "c") return LockdownScenario::C;
    throw std::invalid_argument("unknown lockdown scenario: " + name);
}

// Published daily/monthly impacts per scenario; monthly values are checked
// against 30x the daily ones (the source rounds to one decimal).
struct ScenarioLedger {
    LockdownScenario scenario;
    double daily_production, daily_added_value, daily_taxes;
    double monthly_production, monthly_added_value, monthly_taxes;  // stored

    double computed_monthly(double daily) const { return 30.0 * daily; }

    bool monthly_consistent(double tol = 0.2) const {
        return std::abs(computed_monthly(daily_production) - monthly_production) <= tol &&
               std::abs(computed_monthly(daily_added_value) - monthly_added_value) <= tol &&
               std::abs(computed_monthly(daily_taxes) - monthly_taxes) <= tol;
    }
};

inline ScenarioLedger scenario_ledger(LockdownScenario s) {
    switch (s) {
        case LockdownScenario::A:
            return {s, -4.86, -2.12, -0.91, -145.7, -63.7, -27.4};
        case LockdownScenario::B:
            return {s, -1.23, -0.55, -0.24, -36.9, -16.6, -7.1};
        case LockdownScenario::C:
            return {s, -0.69, -0.30, -0.35, -20.7, -9.1, -10.6};
    }
    throw std::invalid_argument("unknown scenario");
}

// Full-restriction losses: the published three-month components scaled to
// the requested horizon. Health expenditure is a fixed overhead; the human
// capital loss (the lost school year) applies once restrictions exist at all.
struct TotalLoss {
    LockdownScenario scenario;
    double months;
    double health_expenditure;
    double added_value_loss;
    double tax_loss;
    double human_capital_loss;
    double total;          // component sum
    double stored_total;   // published three-month figure
};

namespace detail {

struct StoredThreeMonth {
    double added_value, taxes, human_capital, total;
};

inline StoredThreeMonth stored_three_month(LockdownScenario s) {
    switch (s) {
        case LockdownScenario::A: return {-191.0, -82.1, -13.4, -288.6};
        case LockdownScenario::B: return {-49.8, -21.4, -13.4, -86.6};
        case LockdownScenario::C: return {-27.2, -31.9, 0.0, -61.1};
    }
    throw std::invalid_argument("unknown scenario");
}

}  // namespace detail

inline TotalLoss total_loss(LockdownScenario s, double months = 3.0) {
    if (months < 0.0) throw std::invalid_argument("total_loss: negative horizon");
    const auto stored = detail::stored_three_month(s);
    TotalLoss out;
    out.scenario = s;
    out.months = months;
    out.health_expenditure = -2.0;
    out.added_value_loss = stored.added_value * months / 3.0;
    out.tax_loss = stored.taxes * months / 3.0;
    out.human_capital_loss = months > 0.0 ? stored.human_capital : 0.0;
    out.total = out.health_expenditure + out.added_value_loss + out.tax_loss +
                out.human_capital_loss;
    out.stored_total = stored.total;
    return out;
}

inline std::string ledger_report() {
    std::ostringstream out;
    out << "scenario,daily_production,daily_added_value,daily_taxes,monthly_production,"
           "monthly_added_value,monthly_taxes,total_3m\n";
    char buf[200];
    for (auto s : {LockdownScenario::A, LockdownScenario::B, LockdownScenario::C}) {
        const auto led = scenario_ledger(s);
        const auto loss = total_loss(s, 3.0);
        std::snprintf(buf, sizeof(buf), "%s,%.2f,%.2f,%.2f,%.1f,%.1f,%.1f,%.1f",
                      scenario_name(s), led.daily_production, led.daily_added_value,
                      led.daily_taxes, led.monthly_production, led.monthly_added_value,
                      led.monthly_taxes, loss.total);
        out << buf << "\n";
    }
    return out.str();
}

}  // namespace sisar

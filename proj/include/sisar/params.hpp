#pragma once

#include <stdexcept>
#include <string>

namespace sisar {

// Daily-settable epidemic parameters. The movement percentages only apply
// while `limitations_on` is set; before that everybody not symptomatic is
// free to move.
struct EpidemicParams {
    double prob = 0.05;             // base contagion probability per contact trial
    double d_pct = -50.0;           // asymptomatic spreading correction, percent
    double radius = 0.2;            // world units, open-air contagion distance
    bool limitations_on = false;    // general movement limitations (lockdown)
    double pct_any_leaving = 100.0;         // any non-symptomatic person may go out
    double pct_not_fragile_leaving = 100.0; // regular people may go out
    double pct_open_factories = 100.0;      // factory open probability per day
    bool stop_fragile_workers = false;      // fragile workers barred from workplaces
    bool stop_fragile_people = false;       // all fragile/extra-fragile stay home
    bool isolate_care_homes = false;        // no visitors in hospitals/nursing homes
    bool activate_schools = true;
    double pct_students = 100.0;
    double asym_regular_pct = 95.0;  // asymptomatic share after contagion, regular/young
    double asym_fragile_pct = 20.0;  // asymptomatic share, fragile/extra-fragile
    int incubation_days = 5;
    int infection_min_days = 14;
    int infection_max_days = 28;
    double cfr_daily = 0.0007;  // per-day death probability of a symptomatic agent,
                                // multiplied by intrinsic susceptibility

    void validate() const {
        auto pct_ok = [](double v) { return v >= 0.0 && v <= 100.0; };
        if (prob < 0.0 || prob > 1.0) throw std::invalid_argument("prob outside [0,1]");
        if (radius <= 0.0) throw std::invalid_argument("radius must be positive");
        if (!pct_ok(pct_any_leaving) || !pct_ok(pct_not_fragile_leaving) ||
            !pct_ok(pct_open_factories) || !pct_ok(pct_students) ||
            !pct_ok(asym_regular_pct) || !pct_ok(asym_fragile_pct))
            throw std::invalid_argument("percent parameter outside [0,100]");
        if (incubation_days < 0) throw std::invalid_argument("negative incubation");
        if (infection_min_days < 1 || infection_max_days < infection_min_days)
            throw std::invalid_argument("bad infection duration bounds");
        if (cfr_daily < 0.0 || cfr_daily > 1.0) throw std::invalid_argument("bad cfr_daily");
    }
};

}  // namespace sisar

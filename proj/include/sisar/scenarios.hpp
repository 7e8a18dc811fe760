#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sisar/dates.hpp"
#include "sisar/schedule.hpp"

namespace sisar {

// Bundled intervention calendars. Day 1 is 2020-02-04; values follow the
// published Piedmont calendar. The same scripts ship as files under
// data/scenarios/ for use from the command line.

// Free epidemic: no limitations, schools always open.
inline constexpr const char* kScenarioNoContainment =
    "# free-running epidemic: no limitations, schools open\n";

// The factual 2020-2021 calendar.
inline constexpr const char* kScenarioBaseline = R"(# Piedmont intervention calendar, day 1 = 2020-02-04
at 20 set limitations 1
# base contagion probability
at 49 set prob 0.02
at 149 set prob 0.035
at 266 set prob 0.02
# percent of any non-symptomatic people leaving home under limitations
at 20 set pctAny 90
at 28 set pctAny 80
at 31 set pctAny 0
at 106 set pctAny 80
at 110 set pctAny 95
at 112 set pctAny 85
at 117 set pctAny 95
at 121 set pctAny 90
at 259 set pctAny 90
at 266 set pctAny 80
at 277 set pctAny 50
at 302 set pctAny 70
at 320 set pctAny 90
at 325 set pctAny 50
at 329 set pctAny 80
at 332 set pctAny 50
at 336 set pctAny 80
at 337 set pctAny 50
at 339 set pctAny 80
# percent of regular (not fragile) people leaving home under limitations
at 31 set pctNotFragile 80
at 35 set pctNotFragile 70
at 36 set pctNotFragile 65
at 38 set pctNotFragile 15
at 42 set pctNotFragile 25
at 84 set pctNotFragile 30
at 106 set pctNotFragile 0
at 302 set pctNotFragile 90
at 325 set pctNotFragile 50
at 332 set pctNotFragile 50
at 337 set pctNotFragile 50
at 339 set pctNotFragile 100
at 349 set pctNotFragile 90
# percent of open factories under limitations
at 38 set pctOpenFactories 0
at 49 set pctOpenFactories 20
at 84 set pctOpenFactories 70
at 106 set pctOpenFactories 100
at 266 set pctOpenFactories 90
at 277 set pctOpenFactories 70
at 302 set pctOpenFactories 80
at 320 set pctOpenFactories 90
at 325 set pctOpenFactories 30
at 329 set pctOpenFactories 90
at 332 set pctOpenFactories 30
at 336 set pctOpenFactories 90
at 337 set pctOpenFactories 30
at 339 set pctOpenFactories 100
# schools
at 17 set aSch off
at 225 set aSch on
at 325 set aSch off
at 339 set aSch on
at 277 set pctStudents 50
at 339 set pctStudents 50
)";

// First-wave measures only, two infections imported on 2020-09-01 (day 211):
// the second wave runs free.
inline constexpr const char* kScenarioForcedSecondWave =
    R"(# forced second wave: first-wave measures, imports on 2020-09-01, no fall measures
at 20 set limitations 1
at 49 set prob 0.02
at 149 set prob 0.035
at 20 set pctAny 90
at 28 set pctAny 80
at 31 set pctAny 0
at 106 set pctAny 80
at 110 set pctAny 95
at 112 set pctAny 85
at 117 set pctAny 95
at 121 set pctAny 90
at 31 set pctNotFragile 80
at 35 set pctNotFragile 70
at 36 set pctNotFragile 65
at 38 set pctNotFragile 15
at 42 set pctNotFragile 25
at 84 set pctNotFragile 30
at 106 set pctNotFragile 0
at 38 set pctOpenFactories 0
at 49 set pctOpenFactories 20
at 84 set pctOpenFactories 70
at 106 set pctOpenFactories 100
at 17 set aSch off
at 225 set aSch on
at 211 import 2
)";

// Full calendar plus the imported infections: the factual second wave with
// the fall measures in place.
inline const std::string& scenario_forced_second_wave_measures() {
    static const std::string text =
        std::string("# forced second wave with the fall containment measures\n") +
        kScenarioBaseline + "at 211 import 2\n";
    return text;
}

// Single second-wave measure: stop fragile people and fragile workers and
// isolate care facilities from 2020-10-05 (day 245) to day 275; schools stay
// open, nothing else changes.
inline constexpr const char* kScenarioFragileOnlyStop =
    R"(# forced second wave, unique measure: stop fragile people, isolate care homes
at 20 set limitations 1
at 49 set prob 0.02
at 149 set prob 0.035
at 20 set pctAny 90
at 28 set pctAny 80
at 31 set pctAny 0
at 106 set pctAny 80
at 110 set pctAny 95
at 112 set pctAny 85
at 117 set pctAny 95
at 121 set pctAny 90
at 31 set pctNotFragile 80
at 35 set pctNotFragile 70
at 36 set pctNotFragile 65
at 38 set pctNotFragile 15
at 42 set pctNotFragile 25
at 84 set pctNotFragile 30
at 106 set pctNotFragile 0
at 38 set pctOpenFactories 0
at 49 set pctOpenFactories 20
at 84 set pctOpenFactories 70
at 106 set pctOpenFactories 100
at 17 set aSch off
at 225 set aSch on
at 211 import 2
at 245 set sFW 1
at 245 set stopFragile 1
at 245 set isolateCare 1
at 275 set sFW 0
at 275 set stopFragile 0
at 275 set isolateCare 0
)";

inline int anticipation_barrier_day() { return date_to_day({2020, 10, 5}); }

// Scenario registry for the command line and the test suites.
inline Schedule load_scenario(const std::string& name) {
    if (name == "no_containment") return parse_script(kScenarioNoContainment);
    if (name == "baseline_appendix1") return parse_script(kScenarioBaseline);
    if (name == "forced_second_wave") return parse_script(kScenarioForcedSecondWave);
    if (name == "forced_second_wave_measures")
        return parse_script(scenario_forced_second_wave_measures());
    if (name == "fragile_only_stop") return parse_script(kScenarioFragileOnlyStop);
    if (name == "minus20")
        return parse_script(scenario_forced_second_wave_measures())
            .anticipated(20, anticipation_barrier_day());
    throw std::invalid_argument("unknown scenario: " + name);
}

inline std::vector<std::string> scenario_names() {
    return {"no_containment",     "baseline_appendix1", "forced_second_wave",
            "forced_second_wave_measures", "fragile_only_stop",  "minus20"};
}

}  // namespace sisar

#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sisar/dates.hpp"
#include "sisar/params.hpp"

namespace sisar {

// Day-indexed intervention calendar. Scripts are one directive per line:
//
//     # comment
//     at <day> set <param> <value>
//     at <day> import <count>
//
// `import` seeds <count> infected agents from outside on that day.

struct ScheduleEntry {
    int day = 1;
    std::string param;
    double value = 0.0;
    int order = 0;  // position in file; ties on (day, param) resolve to the later one
};

class Schedule {
public:
    std::vector<ScheduleEntry> entries;  // sorted by (day, order)
    std::vector<std::string> warnings;

    void sort_entries() {
        std::stable_sort(entries.begin(), entries.end(),
                         [](const ScheduleEntry& a, const ScheduleEntry& b) {
                             if (a.day != b.day) return a.day < b.day;
                             return a.order < b.order;
                         });
    }

    // Defaults overlaid with every entry whose day is <= `day`, latest wins.
    EpidemicParams apply(EpidemicParams base, int day) const {
        for (const auto& e : entries) {
            if (e.day > day) break;
            if (e.param == "import") continue;
            set_param(base, e.param, e.value);
        }
        return base;
    }

    int imports_on(int day) const {
        int n = 0;
        for (const auto& e : entries)
            if (e.day == day && e.param == "import") n += static_cast<int>(e.value);
        return n;
    }

    int last_day() const {
        int d = 0;
        for (const auto& e : entries) d = std::max(d, e.day);
        return d;
    }

    // Counterfactual transform: every entry strictly after the barrier day is
    // anticipated by `shift` days, never crossing back over the barrier.
    // Entries at or before the barrier are left alone, so the common history
    // of a batch is preserved.
    Schedule anticipated(int shift, int barrier_day) const {
        Schedule out = *this;
        for (auto& e : out.entries)
            if (e.day > barrier_day) e.day = std::max(e.day - shift, barrier_day);
        out.sort_entries();
        return out;
    }

    static void set_param(EpidemicParams& p, const std::string& name, double v) {
        if (name == "prob") p.prob = v;
        else if (name == "dPct") p.d_pct = v;
        else if (name == "radius") p.radius = v;
        else if (name == "limitations") p.limitations_on = v != 0.0;
        else if (name == "pctAny") p.pct_any_leaving = v;
        else if (name == "pctNotFragile") p.pct_not_fragile_leaving = v;
        else if (name == "pctOpenFactories") p.pct_open_factories = v;
        else if (name == "sFW") p.stop_fragile_workers = v != 0.0;
        else if (name == "stopFragile") p.stop_fragile_people = v != 0.0;
        else if (name == "isolateCare") p.isolate_care_homes = v != 0.0;
        else if (name == "aSch") p.activate_schools = v != 0.0;
        else if (name == "pctStudents") p.pct_students = v;
        else if (name == "asymRegularPct") p.asym_regular_pct = v;
        else if (name == "asymFragilePct") p.asym_fragile_pct = v;
        else if (name == "incubationDays") p.incubation_days = static_cast<int>(v);
        else if (name == "infectionMinDays") p.infection_min_days = static_cast<int>(v);
        else if (name == "infectionMaxDays") p.infection_max_days = static_cast<int>(v);
        else if (name == "cfrDaily") p.cfr_daily = v;
        else throw std::invalid_argument("unknown parameter: " + name);
    }

    static bool known_param(const std::string& name) {
        if (name == "import") return true;
        EpidemicParams scratch;
        try {
            set_param(scratch, name, 0.0);
        } catch (const std::invalid_argument&) {
            return false;
        }
        return true;
    }
};

inline Schedule parse_script(const std::string& text) {
    Schedule sched;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int order = 0;
    std::map<std::pair<int, std::string>, int> seen;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string word;
        if (!(ls >> word)) continue;  // blank line
        if (word != "at")
            throw std::invalid_argument("line " + std::to_string(lineno) +
                                        ": expected 'at <day> ...'");
        int day = 0;
        if (!(ls >> day) || day < 1)
            throw std::invalid_argument("line " + std::to_string(lineno) + ": bad day");
        std::string verb;
        ls >> verb;
        ScheduleEntry e;
        e.day = day;
        e.order = order++;
        if (verb == "set") {
            std::string value_text;
            if (!(ls >> e.param >> value_text))
                throw std::invalid_argument("line " + std::to_string(lineno) +
                                            ": expected 'set <param> <value>'");
            if (value_text == "on") e.value = 1.0;
            else if (value_text == "off") e.value = 0.0;
            else {
                std::size_t pos = 0;
                try {
                    e.value = std::stod(value_text, &pos);
                } catch (...) {
                    pos = 0;
                }
                if (pos != value_text.size())
                    throw std::invalid_argument("line " + std::to_string(lineno) +
                                                ": non-numeric value '" + value_text + "'");
            }
            if (!Schedule::known_param(e.param))
                throw std::invalid_argument("line " + std::to_string(lineno) +
                                            ": unknown parameter: " + e.param);
            // range check by applying to a scratch copy
            EpidemicParams scratch;
            Schedule::set_param(scratch, e.param, e.value);
            scratch.validate();
        } else if (verb == "import") {
            e.param = "import";
            if (!(ls >> e.value) || e.value < 1)
                throw std::invalid_argument("line " + std::to_string(lineno) +
                                            ": bad import count");
        } else {
            throw std::invalid_argument("line " + std::to_string(lineno) +
                                        ": unknown directive '" + verb + "'");
        }
        if (e.param != "import") {
            auto key = std::make_pair(e.day, e.param);
            if (auto it = seen.find(key); it != seen.end())
                sched.warnings.push_back("duplicate entry for " + e.param + " at day " +
                                         std::to_string(e.day) + "; later one wins");
            seen[key] = e.order;
        }
        sched.entries.push_back(e);
    }
    sched.sort_entries();
    return sched;
}

}  // namespace sisar

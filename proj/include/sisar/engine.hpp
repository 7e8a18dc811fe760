#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "sisar/dates.hpp"
#include "sisar/schedule.hpp"
#include "sisar/world.hpp"

namespace sisar {

// Base contagion probability corrected by the spreader's clinical course and
// the receiver's intrinsic susceptibility, clamped to [0,1].
inline double infection_probability(bool spreader_asymptomatic, int receiver_exponent,
                                    const EpidemicParams& p) {
    double pr = p.prob;
    if (spreader_asymptomatic) pr *= 1.0 + p.d_pct / 100.0;
    pr *= intrinsic_susceptibility(receiver_exponent);
    return std::clamp(pr, 0.0, 1.0);
}

// Condition I: symptomatic persons do not move. Condition II: free movement
// without general limitations, otherwise one of the sub-conditions must hold
// (healthcare operator; any-person draw; regular-person draw). Workplace and
// school access are separate attendance rules, not roaming.
inline bool may_move(const World& w, Rng& rng, std::int32_t a, const EpidemicParams& p) {
    const Agent& ag = w.agents[a];
    if (w.status[a] == Status::Deceased) return false;
    if (w.status[a] == Status::Infectious && w.symptomatic[a]) return false;  // condition I
    if (ag.occupation == Occupation::NursingResident) return false;
    if (p.stop_fragile_people && ag.frag_e >= 0) return false;
    if (!p.limitations_on) return rng.percent(w.config.roaming_propensity_pct);
    if (ag.occupation == Occupation::HealthcareOp ||
        ag.occupation == Occupation::NursingHomeOp)
        return true;  // II.a
    if (rng.percent(p.pct_any_leaving)) return true;                      // II.b
    if (ag.frag_e < 0 && rng.percent(p.pct_not_fragile_leaving)) return true;  // II.c
    return false;
}

struct DayReport {
    int day = 0;
    std::array<int, kPlaceKindCount> new_infections_by_place{};
    int new_infections = 0;
    int new_symptomatic = 0;   // incubations resolving symptomatic today
    int new_asymptomatic = 0;  // incubations resolving asymptomatic today
    int deaths = 0;
    int recoveries = 0;
    int symptomatic_movers = 0;  // must stay zero; audited by the tests
    int susceptible = 0;
    int incubating = 0;
    int infectious = 0;
    int recovered = 0;
    int deceased = 0;
    long cum_symptomatic = 0;
    long cum_infected = 0;
};

namespace detail {

struct PresentAgent {
    std::uint64_t cell = 0;
    std::int32_t id = -1;
    float x = 0.0f;
    float y = 0.0f;
    std::uint8_t mover = 0;
    PlaceKind kind = PlaceKind::Unknown;
};

// Reusable buffers for one replication thread.
struct Scratch {
    std::vector<std::uint8_t> factory_open;
    std::vector<std::uint8_t> roams;
    std::vector<std::uint8_t> at_work;
    std::vector<std::uint8_t> at_school;
    std::vector<std::int32_t> infectious_ids;
    std::vector<std::int32_t> touched;
    std::vector<std::int32_t> place_mark;
    std::vector<PresentAgent> present;
    std::vector<std::int32_t> inf_here;
    std::vector<std::int32_t> susc_here;
};

inline std::uint64_t grid_key(float x, float y, double radius) {
    const auto cx = static_cast<std::uint64_t>(std::max(0.0, x / radius));
    const auto cy = static_cast<std::uint64_t>(std::max(0.0, y / radius));
    return (cx << 21) | cy;
}

inline void infect(World& w, DayReport& rep, std::int32_t receiver, std::int32_t spreader,
                   PlaceKind where, int day) {
    w.status[receiver] = Status::Incubating;
    w.incubation_end[receiver] = day + w.params.incubation_days;
    const int duration =
        w.rng.uniform_int(w.params.infection_min_days, w.params.infection_max_days);
    w.infection_end[receiver] = w.incubation_end[receiver] + duration;
    ++w.cum_infected;
    ++rep.new_infections;
    ++rep.new_infections_by_place[static_cast<int>(where)];
    InfectionEvent ev;
    ev.day = day;
    ev.infector = spreader;
    ev.infectee = receiver;
    ev.place = where;
    ev.fragility = w.agents[receiver].frag_e;
    ev.incubation_end = w.incubation_end[receiver];
    ev.infection_end = w.infection_end[receiver];
    w.event_index[receiver] = static_cast<std::int32_t>(w.events.size());
    w.events.push_back(ev);
}

// One contagion trial between an infectious spreader and a susceptible
// receiver; consumes exactly one uniform draw.
inline void trial(World& w, DayReport& rep, std::int32_t spreader, std::int32_t receiver,
                  PlaceKind where, int day) {
    double pr = infection_probability(!w.symptomatic[spreader],
                                      w.agents[receiver].frag_e, w.params);
    if (w.vaccinated_effective(spreader, day)) pr *= w.vacc_spread_factor;
    if (w.rng.bernoulli(pr)) infect(w, rep, receiver, spreader, where, day);
}

inline bool receptive(const World& w, std::int32_t a, int day) {
    return w.status[a] == Status::Susceptible && !w.vaccinated_effective(a, day);
}

// Pairwise trials inside one closed space (house, room, classroom, ward).
inline void room_trials(World& w, DayReport& rep, Scratch& s, PlaceKind kind, int day) {
    for (std::int32_t spreader : s.inf_here)
        for (std::int32_t receiver : s.susc_here) {
            if (!receptive(w, receiver, day)) continue;  // may have turned this phase
            trial(w, rep, spreader, receiver, kind, day);
        }
}

}  // namespace detail

// Executes one simulated day under the given parameters: movement decisions,
// the four contagion phases, then disease progression. Returns the day's
// report. `w.day` is advanced.
inline DayReport step_day(World& w, const EpidemicParams& params, detail::Scratch& s) {
    const int day = w.day + 1;
    w.params = params;
    DayReport rep;
    rep.day = day;

    const std::size_t n = w.n_agents();
    const std::size_t np = w.places.size();
    s.factory_open.assign(np, 1);
    s.roams.assign(n, 0);
    s.at_work.assign(n, 0);
    s.at_school.assign(n, 0);
    if (s.place_mark.size() != np) s.place_mark.assign(np, -1);

    // factory openness for the day
    if (params.limitations_on) {
        for (std::size_t p = 0; p < np; ++p)
            if (w.places[p].kind == PlaceKind::Factory)
                s.factory_open[p] = w.rng.percent(params.pct_open_factories) ? 1 : 0;
    }

    // movement decisions, in agent id order
    for (std::size_t a = 0; a < n; ++a) {
        const Agent& ag = w.agents[a];
        if (w.status[a] == Status::Deceased) continue;
        const bool sym_now = w.status[a] == Status::Infectious && w.symptomatic[a];
        if (!sym_now && ag.classroom >= 0 && params.activate_schools) {
            const bool is_student = ag.occupation == Occupation::Student;
            const bool attend = is_student ? w.rng.percent(params.pct_students) : true;
            if (attend) s.at_school[a] = 1;
        }
        if (!sym_now && ag.workplace >= 0) {
            bool attend = true;
            if (ag.frag_e >= 0 &&
                (params.stop_fragile_workers || params.stop_fragile_people))
                attend = false;
            const bool care_op = ag.occupation == Occupation::HealthcareOp ||
                                 ag.occupation == Occupation::NursingHomeOp;
            if (attend && !care_op && params.limitations_on)
                attend = s.factory_open[ag.workplace] != 0;
            if (attend) s.at_work[a] = 1;
        }
        if (may_move(w, w.rng, static_cast<std::int32_t>(a), params)) {
            s.roams[a] = 1;
            if (sym_now) ++rep.symptomatic_movers;
        }
    }

    // today's infectious agents; new infections only become contagious after
    // incubation, so this list is fixed for the day
    s.infectious_ids.clear();
    for (std::size_t a = 0; a < n; ++a)
        if (w.status[a] == Status::Infectious) s.infectious_ids.push_back(static_cast<std::int32_t>(a));

    auto collect_touched = [&](auto&& place_of_infectious) {
        s.touched.clear();
        for (std::int32_t a : s.infectious_ids) {
            const int p = place_of_infectious(a);
            if (p < 0) continue;
            if (s.place_mark[p] != day) {
                s.place_mark[p] = day;
                s.touched.push_back(p);
            }
        }
        std::sort(s.touched.begin(), s.touched.end());
    };

    // ---- phase A: residences at night (houses, hospitals, nursing homes) ----
    collect_touched([&](std::int32_t a) { return w.agents[a].home; });
    for (int p : s.touched) {
        const Place& pl = w.places[p];
        s.inf_here.clear();
        s.susc_here.clear();
        for (std::int32_t m : pl.residents) {
            if (w.status[m] == Status::Infectious) s.inf_here.push_back(m);
            else if (detail::receptive(w, m, day)) s.susc_here.push_back(m);
        }
        detail::room_trials(w, rep, s, pl.kind, day);
    }
    s.place_mark.assign(np, -1);  // phases reuse the marks

    // ---- phase B: stable members of schools, workplaces, care facilities ----
    collect_touched([&](std::int32_t a) -> int {
        const Agent& ag = w.agents[a];
        if (ag.occupation == Occupation::NursingResident) return ag.home;
        if (s.at_school[a]) return ag.classroom;
        if (s.at_work[a]) return ag.workplace;
        return -1;
    });
    for (int p : s.touched) {
        const Place& pl = w.places[p];
        auto present = [&](std::int32_t m) {
            if (w.agents[m].classroom == p) return s.at_school[m] != 0;
            if (w.agents[m].workplace == p) return s.at_work[m] != 0;
            return true;  // care residents
        };
        if (pl.kind == PlaceKind::Factory && w.config.factory_room_size > 0) {
            // stable working rooms inside the factory
            const int room = w.config.factory_room_size;
            const int n_staff = static_cast<int>(pl.staff.size());
            for (int start = 0; start < n_staff; start += room) {
                const int end = std::min(start + room, n_staff);
                s.inf_here.clear();
                s.susc_here.clear();
                for (int i = start; i < end; ++i) {
                    const std::int32_t m = pl.staff[i];
                    if (!present(m)) continue;
                    if (w.status[m] == Status::Infectious) s.inf_here.push_back(m);
                    else if (detail::receptive(w, m, day)) s.susc_here.push_back(m);
                }
                detail::room_trials(w, rep, s, pl.kind, day);
            }
        } else {
            s.inf_here.clear();
            s.susc_here.clear();
            for (std::int32_t m : pl.residents) {
                if (w.status[m] == Status::Infectious) s.inf_here.push_back(m);
                else if (detail::receptive(w, m, day)) s.susc_here.push_back(m);
            }
            for (std::int32_t m : pl.staff) {
                if (!present(m)) continue;
                if (w.status[m] == Status::Infectious) s.inf_here.push_back(m);
                else if (detail::receptive(w, m, day)) s.susc_here.push_back(m);
            }
            detail::room_trials(w, rep, s, pl.kind, day);
        }
    }
    s.place_mark.assign(np, -1);

    // ---- phases C and D: radius contagion around moving people ----
    const double radius = params.radius;
    auto radius_phase = [&](bool movers_only) {
        // present set was just filled by the caller
        std::sort(s.present.begin(), s.present.end(),
                  [](const detail::PresentAgent& a, const detail::PresentAgent& b) {
                      if (a.cell != b.cell) return a.cell < b.cell;
                      return a.id < b.id;
                  });
        auto cell_range = [&](std::uint64_t key) {
            detail::PresentAgent probe;
            probe.cell = key;
            probe.id = -1;
            auto lo = std::lower_bound(
                s.present.begin(), s.present.end(), probe,
                [](const detail::PresentAgent& a, const detail::PresentAgent& b) {
                    if (a.cell != b.cell) return a.cell < b.cell;
                    return a.id < b.id;
                });
            auto hi = lo;
            while (hi != s.present.end() && hi->cell == key) ++hi;
            return std::make_pair(lo, hi);
        };
        // deterministic order: infectious in ascending agent id
        std::vector<const detail::PresentAgent*> inf;
        for (const auto& pa : s.present)
            if (w.status[pa.id] == Status::Infectious) inf.push_back(&pa);
        std::sort(inf.begin(), inf.end(),
                  [](const detail::PresentAgent* a, const detail::PresentAgent* b) {
                      return a->id < b->id;
                  });
        const double r2 = radius * radius;
        for (const auto* sp : inf) {
            const auto scx = static_cast<long>(sp->x / radius);
            const auto scy = static_cast<long>(sp->y / radius);
            for (int dx = -1; dx <= 1; ++dx)
                for (int dy = -1; dy <= 1; ++dy) {
                    const long cx = scx + dx, cy = scy + dy;
                    if (cx < 0 || cy < 0) continue;
                    const std::uint64_t key =
                        (static_cast<std::uint64_t>(cx) << 21) | static_cast<std::uint64_t>(cy);
                    auto [lo, hi] = cell_range(key);
                    for (auto it = lo; it != hi; ++it) {
                        if (it->id == sp->id) continue;
                        if (!movers_only && !(sp->mover || it->mover)) continue;
                        if (!detail::receptive(w, it->id, day)) continue;
                        const double ddx = sp->x - it->x, ddy = sp->y - it->y;
                        if (ddx * ddx + ddy * ddy > r2) continue;
                        detail::trial(w, rep, sp->id, it->id, it->kind, day);
                    }
                }
        }
    };

    // phase C: movers at a usual place; non-movers reachable where they are
    s.present.clear();
    for (std::size_t a = 0; a < n; ++a) {
        if (w.status[a] == Status::Deceased) continue;
        const Agent& ag = w.agents[a];
        int place = -1;
        bool mover = false;
        if (s.roams[a]) {
            const auto& ups = ag.usual_places;
            int up = ups[w.rng.below(ups.size())];
            const PlaceKind k = w.places[up].kind;
            if (params.isolate_care_homes &&
                (k == PlaceKind::NursingHome || k == PlaceKind::Hospital)) {
                place = ag.home;  // visit canceled
            } else {
                place = up;
                mover = true;
            }
        } else if (s.at_school[a]) {
            continue;  // classrooms only mix through mechanism c
        } else if (s.at_work[a]) {
            place = ag.workplace;
        } else {
            place = ag.home;
        }
        const PlaceKind k = w.places[place].kind;
        if (params.isolate_care_homes &&
            (k == PlaceKind::NursingHome || k == PlaceKind::Hospital))
            continue;
        detail::PresentAgent pa;
        pa.id = static_cast<std::int32_t>(a);
        pa.x = w.places[place].x;
        pa.y = w.places[place].y;
        pa.cell = detail::grid_key(pa.x, pa.y, radius);
        pa.mover = mover ? 1 : 0;
        pa.kind = k;
        s.present.push_back(pa);
    }
    radius_phase(false);

    // phase D: movers again, open-space usual places only
    s.present.clear();
    for (std::size_t a = 0; a < n; ++a) {
        if (!s.roams[a] || w.status[a] == Status::Deceased) continue;
        const Agent& ag = w.agents[a];
        int open_count = 0;
        for (int up : ag.usual_places)
            if (w.places[up].kind == PlaceKind::OpenSpace) ++open_count;
        if (open_count == 0) continue;
        int pick = static_cast<int>(w.rng.below(static_cast<std::uint64_t>(open_count)));
        int place = -1;
        for (int up : ag.usual_places)
            if (w.places[up].kind == PlaceKind::OpenSpace && pick-- == 0) {
                place = up;
                break;
            }
        detail::PresentAgent pa;
        pa.id = static_cast<std::int32_t>(a);
        pa.x = w.places[place].x;
        pa.y = w.places[place].y;
        pa.cell = detail::grid_key(pa.x, pa.y, radius);
        pa.mover = 1;
        pa.kind = PlaceKind::OpenSpace;
        s.present.push_back(pa);
    }
    radius_phase(true);

    // ---- disease progression ----
    for (std::size_t a = 0; a < n; ++a) {
        if (w.status[a] == Status::Incubating && w.incubation_end[a] == day) {
            w.status[a] = Status::Infectious;
            bool sym;
            if (w.vaccinated_effective(static_cast<std::int32_t>(a), day)) {
                sym = false;  // protection matured during incubation
            } else {
                const double asym_pct = w.is_fragile_class(static_cast<std::int32_t>(a))
                                            ? params.asym_fragile_pct
                                            : params.asym_regular_pct;
                sym = !w.rng.percent(asym_pct);
            }
            w.symptomatic[a] = sym ? 1 : 0;
            w.events[w.event_index[a]].symptomatic = sym ? 1 : 0;
            if (sym) {
                ++w.cum_symptomatic;
                ++rep.new_symptomatic;
            } else {
                ++rep.new_asymptomatic;
            }
        } else if (w.status[a] == Status::Infectious) {
            if (w.infection_end[a] == day) {
                w.status[a] = Status::Recovered;
                ++rep.recoveries;
            } else if (w.symptomatic[a]) {
                const double pd = std::clamp(
                    params.cfr_daily * intrinsic_susceptibility(w.agents[a].frag_e), 0.0, 1.0);
                if (w.rng.bernoulli(pd)) {
                    w.status[a] = Status::Deceased;
                    ++w.deceased;
                    ++rep.deaths;
                    if (w.event_index[a] >= 0)
                        w.events[w.event_index[a]].infection_end = day;
                }
            }
        }
    }

    rep.susceptible = w.count_status(Status::Susceptible);
    rep.incubating = w.count_status(Status::Incubating);
    rep.infectious = w.count_status(Status::Infectious);
    rep.recovered = w.count_status(Status::Recovered);
    rep.deceased = w.count_status(Status::Deceased);
    rep.cum_symptomatic = w.cum_symptomatic;
    rep.cum_infected = w.cum_infected;
    w.day = day;
    return rep;
}

struct DailyRow {
    int day = 0;
    int new_sym = 0;
    int new_asym = 0;
    long cum_sym = 0;
    long cum_total = 0;
    long deceased = 0;
};

struct CheckpointSnapshot {
    int day = 0;
    long cum_sym = 0;
    long cum_total = 0;
};

struct RunRecord {
    std::uint64_t seed = 0;
    int duration = 0;
    long cum_symptomatic = 0;
    long cum_infected = 0;
    long deceased = 0;
    std::array<CheckpointSnapshot, 5> checkpoints{};
    std::vector<DailyRow> daily;
    std::vector<InfectionEvent> events;

    std::string daily_csv() const {
        std::ostringstream out;
        out << "day,newSym,newAsym,cumSym,cumTotal,deceased\n";
        for (const auto& r : daily)
            out << r.day << ',' << r.new_sym << ',' << r.new_asym << ',' << r.cum_sym << ','
                << r.cum_total << ',' << r.deceased << "\n";
        return out.str();
    }

    std::string event_log() const {
        std::ostringstream out;
        out << "# day infector infectee place fragility symptomatic incubationEnd infectionEnd\n";
        for (const auto& e : events)
            out << e.day << ' ' << e.infector << ' ' << e.infectee << ' '
                << place_kind_name(e.place) << ' ' << static_cast<int>(e.fragility) << ' '
                << static_cast<int>(e.symptomatic) << ' ' << e.incubation_end << ' '
                << e.infection_end << "\n";
        return out.str();
    }

    std::string serialize() const {
        std::ostringstream out;
        out << "run seed=" << seed << " duration=" << duration
            << " cumSym=" << cum_symptomatic << " cumTotal=" << cum_infected
            << " deceased=" << deceased << "\n";
        for (const auto& cp : checkpoints)
            out << "checkpoint day=" << cp.day << " cumSym=" << cp.cum_sym
                << " cumTotal=" << cp.cum_total << "\n";
        out << event_log();
        out << daily_csv();
        return out.str();
    }
};

struct RunOptions {
    int max_days = 1095;
    bool record_daily = true;
    bool record_events = true;
    Checkpoints checkpoints = Checkpoints::standard();
    // invoked at the start of every day, before contagion (dose allocation)
    std::function<void(World&, int)> daily_hook;
};

// Iterates step_day under a schedule until contagion disappears (or the cap
// is hit). Deterministic for a given built world and schedule.
inline RunRecord run_epidemic(World& w, const Schedule& schedule,
                              const RunOptions& opts = {}) {
    RunRecord rec;
    rec.seed = w.seed;
    detail::Scratch scratch;
    const EpidemicParams base{};
    const auto cps = opts.checkpoints.as_array();
    std::size_t cp_next = 0;
    while (cp_next < cps.size() && cps[cp_next] <= w.day) ++cp_next;  // resumed world

    // a dead epidemic can be revived by scheduled arrivals from outside
    int last_import_day = 0;
    for (const auto& e : schedule.entries)
        if (e.param == "import") last_import_day = std::max(last_import_day, e.day);

    while (w.day < opts.max_days) {
        const int day = w.day + 1;
        const EpidemicParams params = schedule.apply(base, day);
        if (const int imports = schedule.imports_on(day); imports > 0) {
            w.params = params;
            detail::import_infections(w, imports, day);
        }
        if (opts.daily_hook) opts.daily_hook(w, day);
        const DayReport rep = step_day(w, params, scratch);
        if (opts.record_daily)
            rec.daily.push_back(DailyRow{day, rep.new_symptomatic, rep.new_asymptomatic,
                                         rep.cum_symptomatic, rep.cum_infected,
                                         static_cast<long>(rep.deceased)});
        while (cp_next < cps.size() && day == cps[cp_next]) {
            rec.checkpoints[cp_next] =
                CheckpointSnapshot{cps[cp_next], w.cum_symptomatic, w.cum_infected};
            ++cp_next;
        }
        if (rep.incubating == 0 && rep.infectious == 0 && day >= last_import_day) break;
    }
    // epidemic may end before late checkpoints; cumulative values are frozen
    while (cp_next < cps.size()) {
        rec.checkpoints[cp_next] =
            CheckpointSnapshot{cps[cp_next], w.cum_symptomatic, w.cum_infected};
        ++cp_next;
    }
    rec.duration = w.day;
    rec.cum_symptomatic = w.cum_symptomatic;
    rec.cum_infected = w.cum_infected;
    rec.deceased = w.deceased;
    if (opts.record_events) rec.events = w.events;
    return rec;
}

}  // namespace sisar

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sisar/config.hpp"
#include "sisar/params.hpp"
#include "sisar/rng.hpp"

namespace sisar {

enum class GroupId : std::uint8_t {
    ExtraFragile = 0,  // g1: nursing-home residents/operators, healthcare operators
    Teachers = 1,      // g2
    FragileWorkers = 2,
    RegularWorkers = 3,
    FragileOthers = 4,
    RegularOthers = 5,
    Young = 6,
};
inline constexpr int kGroupCount = 7;

inline const char* group_name(GroupId g) {
    static const char* names[] = {"g1", "g2", "g3", "g4", "g5", "g6", "g7"};
    return names[static_cast<int>(g)];
}

// groupFragility exponent: 1 extra-fragile, 0 fragile, -1 regular, -2 young
inline int fragility_exponent(GroupId g) {
    switch (g) {
        case GroupId::ExtraFragile: return 1;
        case GroupId::FragileWorkers:
        case GroupId::FragileOthers: return 0;
        case GroupId::Teachers:
        case GroupId::RegularWorkers:
        case GroupId::RegularOthers: return -1;
        case GroupId::Young: return -2;
    }
    return -1;
}

// intrinsicSusceptibility = 5^exponent
inline double intrinsic_susceptibility(int exponent) {
    switch (exponent) {
        case 1: return 5.0;
        case 0: return 1.0;
        case -1: return 0.2;
        case -2: return 0.04;
        default: return std::pow(5.0, exponent);
    }
}
inline double intrinsic_susceptibility(GroupId g) {
    return intrinsic_susceptibility(fragility_exponent(g));
}

enum class PlaceKind : std::uint8_t {
    Unknown = 0,  // contagions from outside the world
    OpenSpace = 1,
    House = 2,
    NursingHome = 3,
    Hospital = 4,
    School = 5,  // one place per classroom
    Factory = 6,
};
inline constexpr int kPlaceKindCount = 7;

inline const char* place_kind_name(PlaceKind k) {
    static const char* names[] = {"unknown",  "open_space", "house", "nursing_home",
                                  "hospital", "school",     "factory"};
    return names[static_cast<int>(k)];
}

struct Place {
    PlaceKind kind = PlaceKind::OpenSpace;
    float x = 0.0f;
    float y = 0.0f;
    std::int32_t capacity = 0;
    std::vector<std::int32_t> residents;  // houses, nursing homes, hospitals
    std::vector<std::int32_t> staff;      // daytime stable members (workers, class, operators)
};

enum class Occupation : std::uint8_t {
    None = 0,
    Worker = 1,
    Teacher = 2,
    Student = 3,
    HealthcareOp = 4,   // hospital operator
    NursingHomeOp = 5,  // nursing-home operator
    NursingResident = 6,
};

struct Agent {
    std::int32_t id = 0;
    GroupId group = GroupId::RegularOthers;
    std::int8_t frag_e = -1;
    Occupation occupation = Occupation::None;
    std::int32_t home = -1;       // residence place (house or care facility)
    std::int32_t workplace = -1;  // factory room or care facility
    std::int32_t classroom = -1;
    std::vector<std::int32_t> usual_places;
};

enum class Status : std::uint8_t {
    Susceptible = 0,
    Incubating = 1,
    Infectious = 2,
    Recovered = 3,
    Deceased = 4,
};

struct InfectionEvent {
    std::int32_t day = 0;  // seeds carry day 0
    std::int32_t infector = -1;
    std::int32_t infectee = -1;
    PlaceKind place = PlaceKind::Unknown;
    std::int8_t fragility = -1;      // infectee fragility exponent
    std::int8_t symptomatic = -1;    // -1 until incubation resolves
    std::int32_t incubation_end = 0;
    std::int32_t infection_end = 0;  // recovery or death day
};

// One replication's full state. Copyable by value; a copy is an exact
// checkpoint of the simulation (including the RNG stream).
struct World {
    WorldConfig config;
    std::uint64_t seed = 0;
    std::vector<Agent> agents;
    std::vector<Place> places;
    Rng rng;

    int day = 0;  // last completed day
    EpidemicParams params;

    // per-agent disease state
    std::vector<Status> status;
    std::vector<std::int8_t> symptomatic;  // valid from Infectious on; kept for Recovered
    std::vector<std::int32_t> incubation_end;
    std::vector<std::int32_t> infection_end;
    std::vector<std::int32_t> event_index;    // agent -> its InfectionEvent, -1 if none
    std::vector<std::int32_t> vacc_dose_day;  // -1 = never dosed
    std::vector<std::int32_t> vacc_effective_day;
    double vacc_spread_factor = 1.0;  // transmission multiplier of effective carriers

    std::vector<InfectionEvent> events;

    // cumulative tallies
    long cum_symptomatic = 0;
    long cum_infected = 0;  // everyone who ever started an infection
    long deceased = 0;

    std::size_t n_agents() const { return agents.size(); }

    bool is_fragile_class(std::int32_t a) const { return agents[a].frag_e >= 0; }

    bool vaccinated_effective(std::int32_t a, int on_day) const {
        return vacc_effective_day[a] >= 0 && on_day >= vacc_effective_day[a];
    }

    int first_place_of(PlaceKind kind) const {
        for (std::size_t i = 0; i < places.size(); ++i)
            if (places[i].kind == kind) return static_cast<int>(i);
        return -1;
    }
    int count_places_of(PlaceKind kind) const {
        int n = 0;
        for (const auto& p : places)
            if (p.kind == kind) ++n;
        return n;
    }

    int count_status(Status s) const {
        return static_cast<int>(std::count(status.begin(), status.end(), s));
    }

    bool epidemic_active() const {
        for (auto s : status)
            if (s == Status::Incubating || s == Status::Infectious) return true;
        return false;
    }
};

namespace detail {

inline void seed_one_infection(World& w, std::int32_t a, int on_day) {
    // arrivals from outside bypass incubation
    w.status[a] = Status::Infectious;
    w.incubation_end[a] = on_day;
    const int duration = w.rng.uniform_int(w.params.infection_min_days,
                                           w.params.infection_max_days);
    w.infection_end[a] = on_day + duration;
    const double asym_pct = w.is_fragile_class(a) ? w.params.asym_fragile_pct
                                                  : w.params.asym_regular_pct;
    const bool sym = !w.rng.percent(asym_pct);
    w.symptomatic[a] = sym ? 1 : 0;
    if (sym) ++w.cum_symptomatic;
    ++w.cum_infected;
    InfectionEvent ev;
    ev.day = on_day;
    ev.infectee = a;
    ev.fragility = w.agents[a].frag_e;
    ev.symptomatic = sym ? 1 : 0;
    ev.incubation_end = on_day;
    ev.infection_end = w.infection_end[a];
    w.event_index[a] = static_cast<std::int32_t>(w.events.size());
    w.events.push_back(ev);
}

inline bool lives_in_care_facility(const World& w, std::int32_t a) {
    const auto k = w.places[w.agents[a].home].kind;
    return k == PlaceKind::NursingHome || k == PlaceKind::Hospital;
}

// Arrivals from outside: adults coming back, never care-facility residents.
inline void import_infections(World& w, int count, int on_day) {
    int placed = 0;
    int guard = 0;
    while (placed < count && guard < 100000) {
        ++guard;
        const auto a = static_cast<std::int32_t>(w.rng.below(w.n_agents()));
        if (w.status[a] != Status::Susceptible) continue;
        if (lives_in_care_facility(w, a)) continue;
        if (on_day > 0 && w.agents[a].group == GroupId::Young) continue;
        if (w.vaccinated_effective(a, on_day)) continue;
        seed_one_infection(w, a, on_day);
        ++placed;
    }
}

}  // namespace detail

// Binds every agent to a home, an occupation place, and its usual places.
// Uses the world RNG; callable only on a world whose agents and places exist
// but carry no bindings yet.
inline void assign_places(World& w) {
    const WorldConfig& config = w.config;
    const int first_house = w.first_place_of(PlaceKind::House);
    const int first_nursing = w.first_place_of(PlaceKind::NursingHome);
    const int first_hospital = w.first_place_of(PlaceKind::Hospital);
    const int first_class = w.first_place_of(PlaceKind::School);
    const int first_factory = w.first_place_of(PlaceKind::Factory);
    const int first_open = w.first_place_of(PlaceKind::OpenSpace);
    const int n_houses = w.count_places_of(PlaceKind::House);
    const int n_classrooms = w.count_places_of(PlaceKind::School);
    const int n_factories = w.count_places_of(PlaceKind::Factory);

    // homes: nursing residents live in the nursing homes, everybody else in
    // randomly paired houses
    int next_nh = 0;
    for (auto& a : w.agents) {
        if (a.occupation != Occupation::NursingResident) continue;
        const int p = first_nursing + next_nh % std::max(1, config.nursing_homes);
        a.home = p;
        w.places[p].residents.push_back(a.id);
        ++next_nh;
    }
    std::vector<std::int32_t> others;
    for (auto& a : w.agents)
        if (a.occupation != Occupation::NursingResident) others.push_back(a.id);
    if (static_cast<long>(n_houses) * config.house_capacity <
        static_cast<long>(others.size()))
        throw std::invalid_argument("fewer house slots than households");
    w.rng.shuffle(others);
    for (std::size_t i = 0; i < others.size(); ++i) {
        const int p = first_house + static_cast<int>(i) / config.house_capacity;
        w.agents[others[i]].home = p;
        w.places[p].residents.push_back(others[i]);
    }
    for (auto& p : w.places)
        if (p.kind == PlaceKind::House) std::sort(p.residents.begin(), p.residents.end());

    // students round-robin over classrooms, teachers spread across used ones
    std::vector<std::int32_t> students, teachers, workers;
    for (auto& a : w.agents) {
        if (a.occupation == Occupation::Student) students.push_back(a.id);
        else if (a.occupation == Occupation::Teacher) teachers.push_back(a.id);
        else if (a.occupation == Occupation::Worker) workers.push_back(a.id);
    }
    if (static_cast<long>(n_classrooms) * config.classroom_size <
        static_cast<long>(students.size()))
        throw std::invalid_argument("insufficient classrooms for student count");
    w.rng.shuffle(students);
    for (std::size_t i = 0; i < students.size(); ++i) {
        const int cls = first_class + static_cast<int>(i / config.classroom_size);
        w.agents[students[i]].classroom = cls;
        w.places[cls].staff.push_back(students[i]);
    }
    const int used_classrooms =
        students.empty() ? 0
                         : static_cast<int>((students.size() + config.classroom_size - 1) /
                                            config.classroom_size);
    for (std::size_t i = 0; i < teachers.size() && used_classrooms > 0; ++i) {
        const int cls = first_class + static_cast<int>(i % used_classrooms);
        w.agents[teachers[i]].classroom = cls;
        w.places[cls].staff.push_back(teachers[i]);
    }

    // workers fill factories in place order (large ones first by construction)
    w.rng.shuffle(workers);
    std::size_t next_w = 0;
    for (int f = 0; f < n_factories && next_w < workers.size(); ++f) {
        Place& fac = w.places[first_factory + f];
        for (int s = 0; s < fac.capacity && next_w < workers.size(); ++s) {
            const std::int32_t id = workers[next_w++];
            w.agents[id].workplace = first_factory + f;
            fac.staff.push_back(id);
        }
    }
    if (next_w < workers.size())
        throw std::invalid_argument("factory capacity below worker count");

    // care operators
    int nh = 0, ho = 0;
    for (auto& a : w.agents) {
        if (a.occupation == Occupation::NursingHomeOp) {
            const int p = first_nursing + nh % std::max(1, config.nursing_homes);
            a.workplace = p;
            w.places[p].staff.push_back(a.id);
            ++nh;
        } else if (a.occupation == Occupation::HealthcareOp) {
            const int p = first_hospital + ho % std::max(1, config.hospitals);
            a.workplace = p;
            w.places[p].staff.push_back(a.id);
            ++ho;
        }
    }

    // usual places (residents of care facilities stay in)
    const double wsum = config.up_weight_open + config.up_weight_house +
                        config.up_weight_factory + config.up_weight_hospital +
                        config.up_weight_nursing;
    for (auto& a : w.agents) {
        if (a.occupation == Occupation::NursingResident) continue;
        for (int k = 0; k < config.usual_places; ++k) {
            const double r = w.rng.uniform() * wsum;
            int p;
            if (r < config.up_weight_open || config.open_spaces == 0) {
                p = first_open + static_cast<int>(w.rng.below(
                        static_cast<std::uint64_t>(std::max(1, config.open_spaces))));
            } else if (r < config.up_weight_open + config.up_weight_house) {
                p = first_house + static_cast<int>(w.rng.below(n_houses));
            } else if (r < config.up_weight_open + config.up_weight_house +
                               config.up_weight_factory) {
                p = first_factory + static_cast<int>(w.rng.below(n_factories));
            } else if (r < wsum - config.up_weight_nursing) {
                p = first_hospital + static_cast<int>(w.rng.below(config.hospitals));
            } else {
                p = first_nursing + static_cast<int>(w.rng.below(config.nursing_homes));
            }
            a.usual_places.push_back(p);
        }
    }
}

// Deterministic world construction: same (config, seed) gives the same world,
// byte for byte in the canonical dump.
inline World build_world(const WorldConfig& config, std::uint64_t seed) {
    config.validate();
    World w;
    w.config = config;
    w.seed = seed;
    w.rng.reseed(seed);
    w.params = EpidemicParams{};

    const int n_residents =
        static_cast<int>(std::lround(config.census[0] * config.g1_residents_pct / 100.0));
    const int n_nursing_ops =
        static_cast<int>(std::lround(config.census[0] * config.g1_nursing_ops_pct / 100.0));
    const int n_health_ops = config.census[0] - n_residents - n_nursing_ops;
    if (n_health_ops < 0) throw std::invalid_argument("g1 split percentages exceed 100");

    const int n_students = config.census[6];
    const int n_workers = config.census[2] + config.census[3];

    // ---- places -------------------------------------------------------------
    const int households = config.population - n_residents;
    const int n_houses = (households + config.house_capacity - 1) / config.house_capacity;

    int n_classrooms = config.classrooms;
    if (n_classrooms == 0)
        n_classrooms = (n_students + config.classroom_size - 1) / config.classroom_size;

    const int large_slots = config.large_factories * config.large_factory_max;
    int n_small = config.small_factories;
    if (n_small == 0) {
        const int remaining = std::max(0, n_workers - large_slots);
        n_small = (remaining + config.small_factory_max - 1) / config.small_factory_max;
    }

    // town clusters
    std::vector<std::pair<double, double>> centers;
    for (int i = 0; i < std::max(1, config.clusters); ++i)
        centers.emplace_back(config.side * (0.08 + 0.84 * w.rng.uniform()),
                             config.side * (0.08 + 0.84 * w.rng.uniform()));

    auto sample_position = [&](float& x, float& y) {
        if (config.uniform_map) {
            x = static_cast<float>(config.side * w.rng.uniform());
            y = static_cast<float>(config.side * w.rng.uniform());
            return;
        }
        const auto& c = centers[w.rng.below(centers.size())];
        const double px = std::clamp(c.first + w.rng.normal(0.0, config.cluster_sigma),
                                     0.0, config.side);
        const double py = std::clamp(c.second + w.rng.normal(0.0, config.cluster_sigma),
                                     0.0, config.side);
        x = static_cast<float>(px);
        y = static_cast<float>(py);
    };

    auto add_places = [&](PlaceKind kind, int count, int capacity) {
        for (int i = 0; i < count; ++i) {
            Place p;
            p.kind = kind;
            p.capacity = capacity;
            sample_position(p.x, p.y);
            w.places.push_back(std::move(p));
        }
    };

    add_places(PlaceKind::House, n_houses, config.house_capacity);
    add_places(PlaceKind::NursingHome, config.nursing_homes, 0);
    add_places(PlaceKind::Hospital, config.hospitals, 0);
    add_places(PlaceKind::School, n_classrooms, config.classroom_size);
    add_places(PlaceKind::Factory, config.large_factories, config.large_factory_max);
    add_places(PlaceKind::Factory, n_small, config.small_factory_max);
    add_places(PlaceKind::OpenSpace, config.open_spaces, 0);

    // ---- agents ---------------------------------------------------------------
    w.agents.resize(config.population);
    {
        std::int32_t id = 0;
        for (int g = 0; g < kGroupCount; ++g) {
            for (int i = 0; i < config.census[g]; ++i) {
                Agent& a = w.agents[id];
                a.id = id;
                a.group = static_cast<GroupId>(g);
                a.frag_e = static_cast<std::int8_t>(fragility_exponent(a.group));
                ++id;
            }
        }
    }

    // g1 sub-roles, in id order within the group
    for (int i = 0; i < config.census[0]; ++i) {
        Agent& a = w.agents[i];
        if (i < n_residents) a.occupation = Occupation::NursingResident;
        else if (i < n_residents + n_nursing_ops) a.occupation = Occupation::NursingHomeOp;
        else a.occupation = Occupation::HealthcareOp;
    }
    for (auto& a : w.agents) {
        switch (a.group) {
            case GroupId::Teachers: a.occupation = Occupation::Teacher; break;
            case GroupId::FragileWorkers:
            case GroupId::RegularWorkers: a.occupation = Occupation::Worker; break;
            case GroupId::Young: a.occupation = Occupation::Student; break;
            default: break;
        }
    }

    assign_places(w);

    // ---- dynamic state ----------------------------------------------------------
    const auto n = w.n_agents();
    w.status.assign(n, Status::Susceptible);
    w.symptomatic.assign(n, 0);
    w.incubation_end.assign(n, -1);
    w.infection_end.assign(n, -1);
    w.event_index.assign(n, -1);
    w.vacc_dose_day.assign(n, -1);
    w.vacc_effective_day.assign(n, -1);

    detail::import_infections(w, config.initial_infected, 0);
    w.day = 0;
    return w;
}

// Canonical line-oriented dump for golden tests and determinism checks.
inline std::string dump_world(const World& w) {
    std::ostringstream out;
    out << "world seed=" << w.seed << " agents=" << w.n_agents()
        << " places=" << w.places.size() << "\n";
    char buf[64];
    for (std::size_t i = 0; i < w.places.size(); ++i) {
        const Place& p = w.places[i];
        std::snprintf(buf, sizeof(buf), "%.3f %.3f", p.x, p.y);
        out << "place " << i << " " << place_kind_name(p.kind) << " " << buf
            << " cap=" << p.capacity;
        out << " residents=";
        for (std::size_t j = 0; j < p.residents.size(); ++j)
            out << (j ? "," : "") << p.residents[j];
        out << " staff=";
        for (std::size_t j = 0; j < p.staff.size(); ++j) out << (j ? "," : "") << p.staff[j];
        out << "\n";
    }
    for (const Agent& a : w.agents) {
        out << "agent " << a.id << " " << group_name(a.group)
            << " e=" << static_cast<int>(a.frag_e) << " occ=" << static_cast<int>(a.occupation)
            << " home=" << a.home << " work=" << a.workplace << " class=" << a.classroom
            << " ups=";
        for (std::size_t j = 0; j < a.usual_places.size(); ++j)
            out << (j ? "," : "") << a.usual_places[j];
        out << " status=" << static_cast<int>(w.status[a.id])
            << " sym=" << static_cast<int>(w.symptomatic[a.id]) << "\n";
    }
    return out.str();
}

}  // namespace sisar

#pragma once

#include <array>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>

namespace sisar {

// Population and place-construction knobs. The census defaults reproduce the
// seven vaccination groups of the 1:1000 Piedmont world; everything else is
// structural and documented as a calibration knob.
struct WorldConfig {
    int population = 4350;
    // g1..g7: extra-fragile, teachers, fragile workers, regular workers,
    // fragile others, regular others, young
    std::array<int, 7> census{133, 84, 240, 1560, 1179, 254, 900};

    // composition of the extra-fragile group
    double g1_residents_pct = 60.0;
    double g1_nursing_ops_pct = 15.0;  // remainder are hospital healthcare operators

    // map geometry: square of side `side`, places sampled from Gaussian
    // town clusters unless `uniform_map`
    double side = 400.0;
    int clusters = 8;
    double cluster_sigma = 18.0;
    bool uniform_map = false;

    // places
    int house_capacity = 2;
    int classroom_size = 25;
    int classrooms = 0;  // 0 = derive from student count
    int large_factories = 8;
    int large_factory_max = 150;
    int small_factory_max = 15;
    int small_factories = 0;  // 0 = derive from remaining workers
    int hospitals = 2;
    int nursing_homes = 4;
    int open_spaces = 540;
    int factory_room_size = 12;  // stable working group within a factory

    // usual places: k per agent, drawn by kind weight
    int usual_places = 3;
    double up_weight_open = 0.60;
    double up_weight_house = 0.25;
    double up_weight_factory = 0.10;
    double up_weight_hospital = 0.025;
    double up_weight_nursing = 0.025;

    // daily probability that an agent free to move actually goes around
    double roaming_propensity_pct = 100.0;

    int initial_infected = 2;

    void validate() const {
        long sum = 0;
        for (int c : census) {
            if (c < 0) throw std::invalid_argument("negative census entry");
            sum += c;
        }
        if (population <= 0) throw std::invalid_argument("zero population");
        if (sum != population)
            throw std::invalid_argument("census sums to " + std::to_string(sum) +
                                        ", population is " + std::to_string(population));
        if (house_capacity < 1 || classroom_size < 1)
            throw std::invalid_argument("bad place capacity");
        if (usual_places < 1) throw std::invalid_argument("usual_places must be >= 1");
        if (initial_infected < 0 || initial_infected > population)
            throw std::invalid_argument("bad initial_infected");
    }
};

// Nested key-value text: one `dotted.key value` pair per line, '#' comments.
inline WorldConfig parse_world_config(const std::string& text) {
    WorldConfig c;
    std::map<std::string, double*> num{
        {"map.side", &c.side},
        {"map.cluster_sigma", &c.cluster_sigma},
        {"g1.residents_pct", &c.g1_residents_pct},
        {"g1.nursing_ops_pct", &c.g1_nursing_ops_pct},
        {"usual_places.weight_open", &c.up_weight_open},
        {"usual_places.weight_house", &c.up_weight_house},
        {"usual_places.weight_factory", &c.up_weight_factory},
        {"usual_places.weight_hospital", &c.up_weight_hospital},
        {"usual_places.weight_nursing", &c.up_weight_nursing},
        {"roaming_propensity_pct", &c.roaming_propensity_pct},
    };
    std::map<std::string, int*> ints{
        {"population", &c.population},
        {"census.g1", &c.census[0]},
        {"census.g2", &c.census[1]},
        {"census.g3", &c.census[2]},
        {"census.g4", &c.census[3]},
        {"census.g5", &c.census[4]},
        {"census.g6", &c.census[5]},
        {"census.g7", &c.census[6]},
        {"map.clusters", &c.clusters},
        {"map.uniform", nullptr},  // handled below
        {"places.house_capacity", &c.house_capacity},
        {"places.classroom_size", &c.classroom_size},
        {"places.classrooms", &c.classrooms},
        {"places.large_factories", &c.large_factories},
        {"places.large_factory_max", &c.large_factory_max},
        {"places.small_factory_max", &c.small_factory_max},
        {"places.small_factories", &c.small_factories},
        {"places.hospitals", &c.hospitals},
        {"places.nursing_homes", &c.nursing_homes},
        {"places.open_spaces", &c.open_spaces},
        {"places.factory_room_size", &c.factory_room_size},
        {"usual_places.count", &c.usual_places},
        {"initial_infected", &c.initial_infected},
    };
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        double value = 0.0;
        if (!(ls >> value))
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": missing value for " + key);
        if (key == "map.uniform") {
            c.uniform_map = value != 0.0;
        } else if (auto it = num.find(key); it != num.end()) {
            *it->second = value;
        } else if (auto jt = ints.find(key); jt != ints.end() && jt->second) {
            *jt->second = static_cast<int>(value);
        } else {
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": unknown key " + key);
        }
    }
    return c;
}

}  // namespace sisar

#include <set>

#include "doctest.h"
#include "sisar/world.hpp"

using namespace sisar;

TEST_CASE("intrinsic susceptibility follows the 5^e rule") {
    CHECK(intrinsic_susceptibility(1) == doctest::Approx(5.0));
    CHECK(intrinsic_susceptibility(0) == doctest::Approx(1.0));
    CHECK(intrinsic_susceptibility(-1) == doctest::Approx(0.2));
    CHECK(intrinsic_susceptibility(-2) == doctest::Approx(0.04));
    CHECK(intrinsic_susceptibility(GroupId::ExtraFragile) == doctest::Approx(5.0));
    CHECK(intrinsic_susceptibility(GroupId::FragileOthers) == doctest::Approx(1.0));
    CHECK(intrinsic_susceptibility(GroupId::Young) == doctest::Approx(0.04));
}

TEST_CASE("default world: census and structure") {
    const World w = build_world(WorldConfig{}, 1);
    CHECK(w.n_agents() == 4350);

    int counts[kGroupCount] = {};
    for (const auto& a : w.agents) ++counts[static_cast<int>(a.group)];
    const int expected[] = {133, 84, 240, 1560, 1179, 254, 900};
    for (int g = 0; g < kGroupCount; ++g) CHECK(counts[g] == expected[g]);

    // fragility exponents consistent with groups
    for (const auto& a : w.agents)
        CHECK(static_cast<int>(a.frag_e) == fragility_exponent(a.group));

    // everyone has a home; students/teachers a classroom; workers a factory
    for (const auto& a : w.agents) {
        CHECK(a.home >= 0);
        if (a.occupation == Occupation::Student || a.occupation == Occupation::Teacher)
            CHECK(a.classroom >= 0);
        if (a.occupation == Occupation::Worker) {
            REQUIRE(a.workplace >= 0);
            CHECK(w.places[a.workplace].kind == PlaceKind::Factory);
        }
        if (a.occupation != Occupation::NursingResident)
            CHECK(a.usual_places.size() == 3);
    }

    // houses hold at most two residents
    for (const auto& p : w.places)
        if (p.kind == PlaceKind::House) CHECK(p.residents.size() <= 2);

    // two initial infected, none in care facilities, incubation bypassed
    int infected = 0;
    for (std::size_t a = 0; a < w.n_agents(); ++a)
        if (w.status[a] == Status::Infectious) {
            ++infected;
            const auto k = w.places[w.agents[a].home].kind;
            CHECK(k != PlaceKind::NursingHome);
            CHECK(k != PlaceKind::Hospital);
            CHECK(w.incubation_end[a] == 0);
        }
    CHECK(infected == 2);
    CHECK(w.cum_infected == 2);
}

TEST_CASE("census/size mismatch is rejected") {
    WorldConfig c;
    c.population = 0;
    c.census = {0, 0, 0, 0, 0, 0, 0};
    CHECK_THROWS_AS(build_world(c, 1), std::invalid_argument);

    WorldConfig c2;
    c2.population = 100;
    c2.census = {0, 0, 0, 0, 0, 0, 0};
    CHECK_THROWS_AS(build_world(c2, 1), std::invalid_argument);
}

TEST_CASE("same (config, seed) twice gives byte-identical worlds") {
    const World a = build_world(WorldConfig{}, 42);
    const World b = build_world(WorldConfig{}, 42);
    CHECK(dump_world(a) == dump_world(b));
    const World c = build_world(WorldConfig{}, 43);
    CHECK(dump_world(a) != dump_world(c));
}

TEST_CASE("50 students fill exactly two classrooms of 25") {
    WorldConfig c;
    c.population = 60;
    c.census = {0, 2, 0, 8, 0, 0, 50};
    c.large_factories = 1;
    c.nursing_homes = 1;
    c.hospitals = 1;
    c.open_spaces = 10;
    const World w = build_world(c, 7);
    std::set<int> classrooms;
    for (const auto& a : w.agents)
        if (a.occupation == Occupation::Student) classrooms.insert(a.classroom);
    CHECK(classrooms.size() == 2);
    for (int cls : classrooms) {
        int students = 0;
        for (std::int32_t m : w.places[cls].staff)
            if (w.agents[m].occupation == Occupation::Student) ++students;
        CHECK(students == 25);
    }
}

TEST_CASE("no students, no classrooms bound") {
    WorldConfig c;
    c.population = 20;
    c.census = {0, 0, 0, 20, 0, 0, 0};
    c.large_factories = 1;
    c.nursing_homes = 1;
    c.hospitals = 1;
    c.open_spaces = 5;
    const World w = build_world(c, 7);
    for (const auto& a : w.agents) CHECK(a.classroom == -1);
}

TEST_CASE("151 workers need at least two factories") {
    WorldConfig c;
    c.population = 151;
    c.census = {0, 0, 0, 151, 0, 0, 0};
    c.large_factories = 1;
    c.large_factory_max = 150;
    c.nursing_homes = 1;
    c.hospitals = 1;
    c.open_spaces = 20;
    const World w = build_world(c, 3);
    std::set<int> factories;
    for (const auto& a : w.agents)
        if (a.occupation == Occupation::Worker) factories.insert(a.workplace);
    CHECK(factories.size() >= 2);
}

TEST_CASE("world config text round trip") {
    const auto c = parse_world_config(
        "population 60\n"
        "census.g1 0\ncensus.g2 2\ncensus.g3 0\ncensus.g4 8\n"
        "census.g5 0\ncensus.g6 0\ncensus.g7 50\n"
        "map.side 100  # small map\n"
        "places.open_spaces 10\n");
    CHECK(c.population == 60);
    CHECK(c.census[6] == 50);
    CHECK(c.side == doctest::Approx(100.0));
    CHECK_THROWS(parse_world_config("bogus.key 1\n"));
}

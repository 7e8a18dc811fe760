#include <fstream>
#include <sstream>

#include "doctest.h"
#include "sisar/heatmap.hpp"
#include "sisar/rng.hpp"
#include "sisar/sequence_plot.hpp"

using namespace sisar;

namespace {

int count_occurrences(const std::string& text, const std::string& needle) {
    int n = 0;
    for (std::size_t pos = text.find(needle); pos != std::string::npos;
         pos = text.find(needle, pos + needle.size()))
        ++n;
    return n;
}

InfectionEvent make_event(int day, int infector, int infectee, PlaceKind place, int frag,
                          int sym, int incub_end, int inf_end) {
    InfectionEvent e;
    e.day = day;
    e.infector = infector;
    e.infectee = infectee;
    e.place = place;
    e.fragility = static_cast<std::int8_t>(frag);
    e.symptomatic = static_cast<std::int8_t>(sym);
    e.incubation_end = incub_end;
    e.infection_end = inf_end;
    return e;
}

// the ten-event log behind the committed golden diagram
std::vector<InfectionEvent> golden_events() {
    return {
        make_event(0, -1, 1, PlaceKind::Unknown, -2, 0, 0, 22),
        make_event(0, -1, 2, PlaceKind::Unknown, -1, 0, 0, 15),
        make_event(2, 2, 3, PlaceKind::Factory, -1, 0, 7, 24),
        make_event(2, 2, 4, PlaceKind::Factory, 0, 1, 7, 26),
        make_event(2, 2, 5, PlaceKind::Factory, 0, 0, 7, 22),
        make_event(2, 2, 6, PlaceKind::Factory, -1, 0, 7, 30),
        make_event(3, 2, 7, PlaceKind::House, 1, 1, 8, 25),
        make_event(13, 5, 8, PlaceKind::NursingHome, 1, 1, 18, 36),
        make_event(14, 4, 9, PlaceKind::OpenSpace, -1, 0, 19, 35),
        make_event(16, 7, 10, PlaceKind::Hospital, 0, 1, 21, 40),
    };
}

}  // namespace

TEST_CASE("two seeds, one infecting four at work") {
    std::vector<InfectionEvent> events = {
        make_event(0, -1, 1, PlaceKind::Unknown, -2, 0, 0, 22),
        make_event(0, -1, 2, PlaceKind::Unknown, -1, 0, 0, 15),
        make_event(2, 2, 3, PlaceKind::Factory, -1, 0, 7, 20),
        make_event(2, 2, 4, PlaceKind::Factory, 0, 0, 7, 21),
        make_event(2, 2, 5, PlaceKind::Factory, 0, 0, 7, 22),
        make_event(2, 2, 6, PlaceKind::Factory, -1, 0, 7, 23),
    };
    const auto svg = emit_sequence(events);
    // six agents, each with an incubation part and a course part, except the
    // two seeds that skip incubation
    CHECK(count_occurrences(svg, "class=\"segment-incubation\"") == 4);
    CHECK(count_occurrences(svg, "segment-asymptomatic") == 6);
    CHECK(count_occurrences(svg, "class=\"connector\"") == 4);
    // connectors carry the workplace color and sit at the transmission day
    // (x = margin 30 + 6 * day 2)
    const std::string connector = "<line class=\"connector\" x1=\"42\" y1";
    CHECK(count_occurrences(svg, connector) == 4);
    int brown_connectors = 0;
    std::istringstream lines(svg);
    std::string line;
    while (std::getline(lines, line))
        if (line.find("connector") != std::string::npos &&
            line.find("stroke=\"brown\"") != std::string::npos)
            ++brown_connectors;
    CHECK(brown_connectors == 4);
}

TEST_CASE("an empty event list is a valid empty frame") {
    const auto svg = emit_sequence({});
    CHECK(svg.rfind("<svg", 0) == 0);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(count_occurrences(svg, "segment") == 0);
}

TEST_CASE("all place kinds render with a defined color") {
    SequenceStyle style;
    for (int k = 0; k < kPlaceKindCount; ++k)
        CHECK_FALSE(style.place_color.at(static_cast<PlaceKind>(k)).empty());
    // thickness strictly increasing in fragility
    CHECK(style.thickness(-2) < style.thickness(-1));
    CHECK(style.thickness(-1) < style.thickness(0));
    CHECK(style.thickness(0) < style.thickness(1));
}

TEST_CASE("cyclic or truncated infector references are rejected") {
    std::vector<InfectionEvent> events = {
        make_event(3, 99, 1, PlaceKind::House, 0, 1, 8, 20),
    };
    CHECK_THROWS_AS(emit_sequence(events), std::invalid_argument);
}

TEST_CASE("sequence golden file") {
    const auto svg = emit_sequence(golden_events());
    const auto again = emit_sequence(golden_events());
    CHECK(svg == again);
    std::ifstream golden(std::string(SISAR_TEST_DIR) + "/golden/sequence_10_events.svg",
                         std::ios::binary);
    REQUIRE(golden.good());
    std::ostringstream buf;
    buf << golden.rdbuf();
    CHECK(svg == buf.str());
}

TEST_CASE("single and repeated runs land in single cells") {
    const auto one = build_heat_grid({120.0}, {800.0}, 40, 40);
    long total = 0, max_cell = 0;
    for (long c : one.counts) {
        total += c;
        max_cell = std::max(max_cell, c);
    }
    CHECK(total == 1);
    CHECK(max_cell == 1);

    const auto two = build_heat_grid({120.0, 120.0}, {800.0, 800.0}, 40, 40);
    total = 0;
    max_cell = 0;
    for (long c : two.counts) {
        total += c;
        max_cell = std::max(max_cell, c);
    }
    CHECK(total == 2);
    CHECK(max_cell == 2);
}

TEST_CASE("heat grid marginals equal independent histograms") {
    Rng rng(31);
    std::vector<double> dur, tot;
    for (int i = 0; i < 300; ++i) {
        dur.push_back(100.0 + static_cast<double>(rng.below(500)));
        tot.push_back(200.0 + static_cast<double>(rng.below(2500)));
    }
    const auto g = build_heat_grid(dur, tot, 40, 40);

    // test-local 1-D binning oracle
    std::vector<long> x_hist(40, 0), y_hist(40, 0);
    for (double d : dur)
        x_hist[static_cast<std::size_t>(std::clamp(
            static_cast<int>((d - g.x_lo) / (g.x_hi - g.x_lo) * 40), 0, 39))]++;
    for (double y : tot)
        y_hist[static_cast<std::size_t>(std::clamp(
            static_cast<int>((y - g.y_lo) / (g.y_hi - g.y_lo) * 40), 0, 39))]++;

    for (int ix = 0; ix < 40; ++ix) {
        long margin = 0;
        for (int iy = 0; iy < 40; ++iy) margin += g.at(ix, iy);
        CHECK(margin == x_hist[static_cast<std::size_t>(ix)]);
    }
    for (int iy = 0; iy < 40; ++iy) {
        long margin = 0;
        for (int ix = 0; ix < 40; ++ix) margin += g.at(ix, iy);
        CHECK(margin == y_hist[static_cast<std::size_t>(iy)]);
    }
    long total = 0;
    for (long c : g.counts) total += c;
    CHECK(total == 300);
}

TEST_CASE("heat grid rejects bad inputs") {
    CHECK_THROWS_AS(build_heat_grid({}, {}, 40, 40), std::invalid_argument);
    CHECK_THROWS_AS(build_heat_grid({1.0}, {1.0}, 0, 40), std::invalid_argument);
}

TEST_CASE("heatmap golden file") {
    // fixed five-run grid
    const std::vector<double> dur{120, 340, 345, 520, 200};
    const std::vector<double> tot{800, 2400, 2500, 3100, 1500};
    const auto g = build_heat_grid(dur, tot, 8, 8);
    const auto svg = emit_heatmap_svg(g, "five runs");
    std::ifstream golden(std::string(SISAR_TEST_DIR) + "/golden/heatmap_5_runs.svg",
                         std::ios::binary);
    REQUIRE(golden.good());
    std::ostringstream buf;
    buf << golden.rdbuf();
    CHECK(svg == buf.str());
    // csv layout
    const auto csv = g.csv();
    CHECK(csv.rfind("x_low,y_low,count", 0) == 0);
}

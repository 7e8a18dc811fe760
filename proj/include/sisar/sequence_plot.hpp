#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sisar/svg.hpp"
#include "sisar/world.hpp"

namespace sisar {

// Drawing rules of the contagion-sequence diagrams: one horizontal segment
// per infected agent at the height of its infection ordinal, colored by the
// place where the agent caught the disease; vertical connectors drop from
// the infector's segment and keep its color; line style tells the clinical
// course apart and thickness grows with fragility.
struct SequenceStyle {
    std::map<PlaceKind, std::string> place_color{
        {PlaceKind::Unknown, "black"},   {PlaceKind::OpenSpace, "gray"},
        {PlaceKind::House, "cyan"},      {PlaceKind::NursingHome, "orange"},
        {PlaceKind::Hospital, "pink"},   {PlaceKind::School, "yellow"},
        {PlaceKind::Factory, "brown"},
    };
    std::string incubation_dash = "1,3";
    std::string asymptomatic_dash = "6,3";

    double thickness(int fragility_exponent) const {
        switch (fragility_exponent) {
            case -2: return 0.7;
            case -1: return 1.2;
            case 0: return 2.0;
            default: return 3.0;  // extra-fragile
        }
    }
};

inline std::string emit_sequence(const std::vector<InfectionEvent>& events, int limit = 0,
                                 const SequenceStyle& style = {}) {
    std::vector<InfectionEvent> shown = events;
    std::stable_sort(shown.begin(), shown.end(),
                     [](const InfectionEvent& a, const InfectionEvent& b) {
                         return a.day < b.day;
                     });
    if (limit > 0 && static_cast<int>(shown.size()) > limit)
        shown.resize(static_cast<std::size_t>(limit));

    // infection ordinal per agent; infectors must already carry a segment
    std::map<std::int32_t, std::size_t> level_of;
    for (std::size_t i = 0; i < shown.size(); ++i) {
        const auto& e = shown[i];
        if (e.infector >= 0 && !level_of.contains(e.infector))
            throw std::invalid_argument(
                "emit_sequence: infector without an earlier infection (cycle or truncated log)");
        if (level_of.contains(e.infectee))
            throw std::invalid_argument("emit_sequence: agent infected twice");
        level_of[e.infectee] = i + 1;
    }

    const double x_scale = 6.0;
    const double y_step = 8.0;
    const double margin = 30.0;
    int last_day = 1;
    for (const auto& e : shown) last_day = std::max(last_day, e.infection_end);
    const double width = 2 * margin + x_scale * last_day;
    const double height = 2 * margin + y_step * (static_cast<double>(shown.size()) + 1);

    SvgWriter svg(width, height);
    auto x_of = [&](int day) { return margin + x_scale * day; };
    auto y_of = [&](std::size_t level) {
        return height - margin - y_step * static_cast<double>(level);
    };
    auto color_of = [&](const InfectionEvent& e) { return style.place_color.at(e.place); };

    // connectors first, lower levels below later ones; a connector carries
    // the color of the contagion it transmits (the place where it happened)
    for (const auto& e : shown) {
        if (e.infector < 0) continue;
        svg.line(x_of(e.day), y_of(level_of.at(e.infector)), x_of(e.day),
                 y_of(level_of.at(e.infectee)), color_of(e), 0.8, "", "connector");
    }
    // horizontal infection segments
    for (const auto& e : shown) {
        const double y = y_of(level_of.at(e.infectee));
        const std::string color = color_of(e);
        const double w = style.thickness(e.fragility);
        if (e.incubation_end > e.day)
            svg.line(x_of(e.day), y, x_of(e.incubation_end), y, color, w,
                     style.incubation_dash, "segment-incubation");
        const std::string dash = e.symptomatic == 1 ? "" : style.asymptomatic_dash;
        svg.line(x_of(std::max(e.day, e.incubation_end)), y, x_of(e.infection_end), y, color,
                 w, dash, e.symptomatic == 1 ? "segment-symptomatic" : "segment-asymptomatic");
    }
    // day axis
    svg.line(margin, height - margin + 4, x_of(last_day), height - margin + 4, "black", 0.6);
    for (int d = 0; d <= last_day; d += std::max(1, last_day / 8))
        svg.text(x_of(d), height - margin + 16, std::to_string(d), 9.0, "black", "middle");
    return svg.finish();
}

}  // namespace sisar

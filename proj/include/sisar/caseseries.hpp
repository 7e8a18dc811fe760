#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sisar/dates.hpp"

namespace sisar {

enum class SeriesKind { SymptomOnset, Notification, Simulated };

// Daily counts of new infected people. Days are consecutive starting at
// `start`; gaps in the input are zero-filled and flagged.
struct CaseSeries {
    Date start;
    std::vector<double> counts;
    SeriesKind kind = SeriesKind::Notification;
    std::vector<Date> fill_flags;  // dates that were missing in the source

    std::size_t size() const { return counts.size(); }
    Date date_at(std::size_t i) const {
        const int day0 = date_to_day(start);
        return day_to_date(day0 + static_cast<int>(i));
    }
};

namespace detail {

inline CaseSeries from_dated_counts(std::vector<std::pair<Date, double>> rows,
                                    SeriesKind kind) {
    if (rows.empty()) throw std::invalid_argument("case series: no data rows");
    CaseSeries s;
    s.kind = kind;
    s.start = rows.front().first;
    int prev_day = date_to_day(rows.front().first) - 1;
    for (const auto& [date, value] : rows) {
        const int day = date_to_day(date);
        if (day <= prev_day)
            throw std::invalid_argument("case series: dates not strictly increasing at " +
                                        date.iso());
        for (int missing = prev_day + 1; missing < day; ++missing) {
            s.counts.push_back(0.0);
            s.fill_flags.push_back(day_to_date(missing));
        }
        if (value < 0.0)
            throw std::invalid_argument("case series: negative count at " + date.iso());
        s.counts.push_back(value);
        prev_day = day;
    }
    return s;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) out.push_back(cell);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

}  // namespace detail

// `date,new_cases` with ISO dates, header optional.
inline CaseSeries parse_cases_csv(const std::string& text,
                                  SeriesKind kind = SeriesKind::Notification) {
    std::vector<std::pair<Date, double>> rows;
    std::istringstream in(text);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto cells = detail::split_csv_line(line);
        if (cells.size() < 2) throw std::invalid_argument("case CSV: bad row: " + line);
        if (first) {
            first = false;
            // tolerate a header row
            if (cells[0].find_first_not_of("0123456789-") != std::string::npos) continue;
        }
        rows.emplace_back(parse_iso_date(cells[0]), std::stod(cells[1]));
    }
    return detail::from_dated_counts(std::move(rows), kind);
}

// Protezione Civile regional CSV adapter: keeps the `data` (ISO timestamp)
// and `nuovi_positivi` columns.
inline CaseSeries parse_protezione_civile_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument("pc CSV: empty file");
    const auto header = detail::split_csv_line(line);
    int date_col = -1, cases_col = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "data") date_col = static_cast<int>(i);
        if (header[i] == "nuovi_positivi") cases_col = static_cast<int>(i);
    }
    if (date_col < 0 || cases_col < 0)
        throw std::invalid_argument("pc CSV: missing data/nuovi_positivi columns");
    std::vector<std::pair<Date, double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = detail::split_csv_line(line);
        if (static_cast<int>(cells.size()) <= std::max(date_col, cases_col))
            throw std::invalid_argument("pc CSV: short row: " + line);
        const std::string date_text = cells[static_cast<std::size_t>(date_col)].substr(0, 10);
        rows.emplace_back(parse_iso_date(date_text),
                          std::stod(cells[static_cast<std::size_t>(cases_col)]));
    }
    return detail::from_dated_counts(std::move(rows), SeriesKind::Notification);
}

inline CaseSeries ingest_cases(const std::string& path, const std::string& format) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    if (format == "simple") return parse_cases_csv(buf.str());
    if (format == "pc") return parse_protezione_civile_csv(buf.str());
    throw std::invalid_argument("unknown case format: " + format);
}

}  // namespace sisar

#pragma once

#include <array>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace sisar {

// Simulation day 1 is 2020-02-04; the day<->date mapping is a plain offset
// from that epoch.

struct Date {
    int year = 2020;
    int month = 1;  // 1..12
    int day = 1;    // 1..31

    bool operator==(const Date&) const = default;
    auto operator<=>(const Date&) const = default;

    std::string iso() const {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", year, month, day);
        return buf;
    }
};

namespace detail {

// days since 1970-01-01 (civil calendar), Hinnant's algorithm
inline long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long>(doe) - 719468;
}

inline Date civil_from_days(long z) {
    z += 719468;
    const long era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const long y = static_cast<long>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

inline constexpr long kEpochCivil = 18296;  // days_from_civil(2020, 2, 4)

}  // namespace detail

inline Date day_to_date(int day) {
    if (day < 1) throw std::invalid_argument("day_to_date: day must be >= 1");
    return detail::civil_from_days(detail::kEpochCivil + day - 1);
}

inline int date_to_day(const Date& date) {
    const long z = detail::days_from_civil(date.year, date.month, date.day);
    const long day = z - detail::kEpochCivil + 1;
    if (day < 1) throw std::invalid_argument("date_to_day: date precedes the epoch");
    return static_cast<int>(day);
}

inline Date parse_iso_date(const std::string& text) {
    int y = 0, m = 0, d = 0;
    if (std::sscanf(text.c_str(), "%d-%d-%d", &y, &m, &d) != 3 ||
        m < 1 || m > 12 || d < 1 || d > 31)
        throw std::invalid_argument("bad ISO date: " + text);
    return Date{y, m, d};
}

// Calendar snapshot days used by the batch selection filters.
struct Checkpoints {
    int jun1_2020;
    int sep20_2020;
    int dec15_2020;
    int feb1_2021;
    int may1_2021;

    static Checkpoints standard() {
        return Checkpoints{
            date_to_day({2020, 6, 1}),
            date_to_day({2020, 9, 20}),
            date_to_day({2020, 12, 15}),
            date_to_day({2021, 2, 1}),
            date_to_day({2021, 5, 1}),
        };
    }
    std::array<int, 5> as_array() const {
        return {jun1_2020, sep20_2020, dec15_2020, feb1_2021, may1_2021};
    }
};

}  // namespace sisar

#include "doctest.h"
#include "sisar/dates.hpp"

using namespace sisar;

TEST_CASE("day 1 is 2020-02-04") {
    CHECK(day_to_date(1) == Date{2020, 2, 4});
    CHECK(date_to_day({2020, 2, 4}) == 1);
}

TEST_CASE("published calendar table") {
    // day -> date pairs from the model's calendar table
    const std::pair<int, Date> table[] = {
        {25, {2020, 2, 28}},  {50, {2020, 3, 24}},  {75, {2020, 4, 18}},
        {100, {2020, 5, 13}}, {125, {2020, 6, 7}},  {150, {2020, 7, 2}},
        {175, {2020, 7, 27}}, {200, {2020, 8, 21}}, {225, {2020, 9, 15}},
        {250, {2020, 10, 10}}, {275, {2020, 11, 4}}, {300, {2020, 11, 29}},
        {325, {2020, 12, 24}}, {350, {2021, 1, 18}}, {375, {2021, 2, 12}},
        {400, {2021, 3, 9}},  {425, {2021, 4, 3}},  {450, {2021, 4, 28}},
        {475, {2021, 5, 23}}, {500, {2021, 6, 17}}, {525, {2021, 7, 12}},
        {550, {2021, 8, 6}},  {575, {2021, 8, 31}}, {600, {2021, 9, 25}},
        {625, {2021, 10, 20}}, {650, {2021, 11, 14}}, {675, {2021, 12, 9}},
        {700, {2022, 1, 3}},
    };
    for (const auto& [day, date] : table) {
        CHECK(day_to_date(day) == date);
        CHECK(date_to_day(date) == day);
    }
}

TEST_CASE("bijection over the working range") {
    for (int d = 1; d <= 1000; ++d) CHECK(date_to_day(day_to_date(d)) == d);
}

TEST_CASE("days before the epoch are rejected") {
    CHECK_THROWS_AS(day_to_date(0), std::invalid_argument);
    CHECK_THROWS_AS(day_to_date(-3), std::invalid_argument);
    CHECK_THROWS_AS(date_to_day({2020, 2, 3}), std::invalid_argument);
}

TEST_CASE("checkpoint days") {
    const auto cp = Checkpoints::standard();
    CHECK(day_to_date(cp.jun1_2020) == Date{2020, 6, 1});
    CHECK(day_to_date(cp.sep20_2020) == Date{2020, 9, 20});
    CHECK(day_to_date(cp.dec15_2020) == Date{2020, 12, 15});
    CHECK(day_to_date(cp.feb1_2021) == Date{2021, 2, 1});
    CHECK(day_to_date(cp.may1_2021) == Date{2021, 5, 1});
}

TEST_CASE("ISO parsing") {
    CHECK(parse_iso_date("2020-09-01") == Date{2020, 9, 1});
    CHECK_THROWS(parse_iso_date("not-a-date"));
}

#include "doctest.h"
#include "sisar/caseseries.hpp"

using namespace sisar;

TEST_CASE("three-row CSV gives a three-point series") {
    const auto s = parse_cases_csv(
        "date,new_cases\n2020-03-01,12\n2020-03-02,15\n2020-03-03,9\n");
    REQUIRE(s.size() == 3);
    CHECK(s.start == Date{2020, 3, 1});
    CHECK(s.counts[1] == doctest::Approx(15.0));
    CHECK(s.fill_flags.empty());
}

TEST_CASE("duplicate dates break monotonicity") {
    CHECK_THROWS_AS(parse_cases_csv("2020-03-01,12\n2020-03-01,15\n"),
                    std::invalid_argument);
    CHECK_THROWS_AS(parse_cases_csv("2020-03-02,12\n2020-03-01,15\n"),
                    std::invalid_argument);
}

TEST_CASE("gaps are zero-filled and flagged") {
    // hand oracle: 03-01, [03-02, 03-03 missing], 03-04 -> 4 points, 2 flags
    const auto s = parse_cases_csv("2020-03-01,10\n2020-03-04,20\n");
    REQUIRE(s.size() == 4);
    CHECK(s.counts[0] == doctest::Approx(10.0));
    CHECK(s.counts[1] == doctest::Approx(0.0));
    CHECK(s.counts[2] == doctest::Approx(0.0));
    CHECK(s.counts[3] == doctest::Approx(20.0));
    REQUIRE(s.fill_flags.size() == 2);
    CHECK(s.fill_flags[0] == Date{2020, 3, 2});
    CHECK(s.fill_flags[1] == Date{2020, 3, 3});
}

TEST_CASE("negative counts are rejected") {
    CHECK_THROWS_AS(parse_cases_csv("2020-03-01,-5\n"), std::invalid_argument);
}

TEST_CASE("civil-protection format adapter") {
    const auto s = parse_protezione_civile_csv(
        "data,stato,codice_regione,nuovi_positivi,note\n"
        "2020-10-01T17:00:00,ITA,01,312,\n"
        "2020-10-02T17:00:00,ITA,01,351,\n");
    REQUIRE(s.size() == 2);
    CHECK(s.start == Date{2020, 10, 1});
    CHECK(s.counts[1] == doctest::Approx(351.0));
    CHECK(s.kind == SeriesKind::Notification);
    CHECK_THROWS_AS(parse_protezione_civile_csv("a,b\n1,2\n"), std::invalid_argument);
}

TEST_CASE("date accessor walks the calendar") {
    const auto s = parse_cases_csv("2020-12-30,1\n2021-01-02,2\n");
    CHECK(s.date_at(0) == Date{2020, 12, 30});
    CHECK(s.date_at(3) == Date{2021, 1, 2});
}

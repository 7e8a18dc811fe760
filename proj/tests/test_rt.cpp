#include <cmath>
#include <vector>

#include "doctest.h"
#include "sisar/rng.hpp"
#include "sisar/rt.hpp"
#include "sisar/stats.hpp"

using namespace sisar;

namespace {

std::vector<double> change_point_series(bool with_noise, int n = 260) {
    // growth at 4% a day switching to decay at 3% a day halfway through
    Rng rng(7);
    std::vector<double> s;
    double level = 200.0;
    for (int t = 0; t < n; ++t) {
        level *= t < n / 2 ? 1.04 : 0.97;
        double v = level;
        if (with_noise) v *= 1.0 + rng.normal(0.0, 0.05);
        s.push_back(std::max(v, 1.0));
    }
    return s;
}

}  // namespace

TEST_CASE("constant series means unit reproduction") {
    const auto profile = gamma_profile();
    std::vector<double> series(120, 100.0);
    const auto est = naive_rt(series, profile);
    for (int t = profile.s_max(); t < 120; ++t)
        CHECK(est.rt[t] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("geometric growth gives the closed-form ratio") {
    const auto profile = gamma_profile();
    std::vector<double> series;
    for (int t = 0; t < 150; ++t) series.push_back(std::pow(1.05, t));
    // oracle: R = 1 / sum_s w_s 1.05^{-s}, straight from the definition
    double denom = 0.0;
    for (int s = 1; s <= profile.s_max(); ++s)
        denom += profile.w[s - 1] * std::pow(1.05, -s);
    const double expected = 1.0 / denom;
    const auto est = naive_rt(series, profile);
    for (int t = profile.s_max(); t < 150; ++t)
        CHECK(est.rt[t] == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("zero past support leaves gaps") {
    const auto profile = gamma_profile();
    std::vector<double> series(profile.s_max() + 40, 0.0);
    series[static_cast<std::size_t>(profile.s_max()) + 35] = 50.0;
    const auto est = naive_rt(series, profile);
    CHECK(std::isnan(est.rt[10]));  // nothing infectious behind this day
    CHECK(std::isnan(est.rt[profile.s_max() + 35]));
}

TEST_CASE("estimates are invariant under constant scaling") {
    const auto profile = gamma_profile();
    const auto series = change_point_series(true);
    std::vector<double> scaled(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) scaled[i] = 7.0 * series[i];
    const auto a = naive_rt(series, profile);
    const auto b = naive_rt(scaled, profile);
    const auto wa = windowed_rt(series, profile, 14);
    const auto wb = windowed_rt(scaled, profile, 14);
    for (std::size_t t = 0; t < series.size(); ++t) {
        if (std::isnan(a.rt[t])) continue;
        CHECK(a.rt[t] == doctest::Approx(b.rt[t]).epsilon(1e-12));
        if (!std::isnan(wa.rt[t]))
            CHECK(wa.rt[t] == doctest::Approx(wb.rt[t]).epsilon(1e-12));
    }
}

TEST_CASE("windowed estimate on a constant series is one") {
    const auto profile = gamma_profile();
    std::vector<double> series(120, 42.0);
    const auto est = windowed_rt(series, profile, 14);
    for (int t = profile.s_max() + 14; t < 120; ++t)
        CHECK(est.rt[t] == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("the trailing window delays the estimate, smoothing does not") {
    // measured systematic delay of the windowed estimator on a growth-rate
    // change point: the trailing boxcar's group delay, about half the window
    const auto profile = gamma_profile();
    const auto series = change_point_series(true);
    const auto naive = naive_rt(series, profile);
    const auto windowed = windowed_rt(series, profile, 14);
    const int lag = best_lag(naive.rt, windowed.rt, 30);
    CHECK(lag >= 6);
    CHECK(lag <= 10);
}

TEST_CASE("smoothing does not delay the estimate") {
    const auto profile = gamma_profile();
    const auto series = change_point_series(true);
    const auto naive = naive_rt(series, profile);
    const auto smoothed = smoothed_rt(series, profile, 100.0);
    const int lag = best_lag(naive.rt, smoothed.rt, 30);
    CHECK(std::abs(lag) <= 1);
}

TEST_CASE("series shorter than the profile support is an error") {
    const auto profile = gamma_profile();
    std::vector<double> series(static_cast<std::size_t>(profile.s_max()), 10.0);
    CHECK_THROWS_AS(naive_rt(series, profile), std::invalid_argument);
}

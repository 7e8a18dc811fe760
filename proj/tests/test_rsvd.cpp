#include <cmath>
#include <vector>

#include "doctest.h"
#include "sisar/rng.hpp"
#include "sisar/rsvd.hpp"
#include "sisar/stats.hpp"
#include "sisar/tikhonov.hpp"

using namespace sisar;

namespace {

struct Synthetic {
    std::vector<double> series;
    std::vector<double> trend;
    std::vector<double> true_seasonal;  // level-scale weekly component
};

// exponential trend times a weekly multiplicative pattern, with optional
// multiplicative noise
Synthetic weekly_synthetic(int n, double noise_sd, std::uint64_t seed) {
    const double pattern[7] = {0.78, 0.85, 1.02, 1.10, 1.15, 1.08, 1.02};
    Rng rng(seed);
    Synthetic s;
    for (int t = 0; t < n; ++t) {
        const double trend = 120.0 * std::exp(0.012 * t);
        double v = trend * pattern[t % 7];
        if (noise_sd > 0.0) v *= std::exp(rng.normal(0.0, noise_sd));
        s.series.push_back(v);
        s.trend.push_back(trend);
        s.true_seasonal.push_back(trend * (pattern[t % 7] - 1.0));
    }
    return s;
}

}  // namespace

TEST_CASE("constant series decomposes trivially") {
    std::vector<double> series(63, 500.0);
    const auto dec = rsvd_deseason(series, 7);
    for (std::size_t t = 0; t < series.size(); ++t) {
        CHECK(dec.trend[t] == doctest::Approx(500.0));
        CHECK(dec.seasonal[t] == doctest::Approx(0.0));
        CHECK(dec.residual[t] == doctest::Approx(0.0));
    }
}

TEST_CASE("reconstruction identity holds exactly") {
    const auto syn = weekly_synthetic(140, 0.08, 31);
    const auto dec = rsvd_deseason(syn.series, 7);
    const auto back = dec.reconstruct();
    for (std::size_t t = 0; t < syn.series.size(); ++t)
        CHECK(back[t] == doctest::Approx(syn.series[t]).epsilon(1e-9));
}

TEST_CASE("weekly pattern is recovered") {
    const auto syn = weekly_synthetic(154, 0.03, 57);
    const auto dec = rsvd_deseason(syn.series, 7);
    CHECK(correlation(dec.seasonal, syn.true_seasonal) > 0.95);
}

TEST_CASE("deseasoning balances the residual distribution") {
    const auto syn = weekly_synthetic(161, 0.05, 73);
    // residuals of the plain smooth still carry the weekly pattern
    const auto smooth = tikhonov_smooth(syn.series, 100.0);
    std::vector<double> pre;
    for (std::size_t t = 0; t < syn.series.size(); ++t)
        pre.push_back((syn.series[t] - smooth[t]) / std::max(1e-9, smooth[t]));
    const auto dec = rsvd_deseason(syn.series, 7);
    const double skew_pre = std::abs(sample_skewness(pre));
    const double skew_post = std::abs(sample_skewness(dec.rel_residual));
    CHECK(skew_post < skew_pre);
}

TEST_CASE("bad inputs are rejected") {
    std::vector<double> with_zero(70, 10.0);
    with_zero[20] = 0.0;
    CHECK_THROWS_AS(rsvd_deseason(with_zero, 7), std::invalid_argument);
    std::vector<double> short_series(20, 10.0);
    CHECK_THROWS_AS(rsvd_deseason(short_series, 7), std::invalid_argument);
    std::vector<double> fine(70, 10.0);
    CHECK_THROWS_AS(rsvd_deseason(fine, 1), std::invalid_argument);
}

#include <cmath>
#include <vector>

#include "doctest.h"
#include "sisar/gamma.hpp"

using namespace sisar;

namespace {

// independent oracle: Simpson integration of the density over (s-1, s]
double simpson_bin(double alpha, double beta, double lo, double hi, int steps = 400) {
    const double h = (hi - lo) / steps;
    double acc = gamma_pdf(lo, alpha, beta) + gamma_pdf(hi, alpha, beta);
    for (int i = 1; i < steps; ++i)
        acc += gamma_pdf(lo + i * h, alpha, beta) * (i % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace

TEST_CASE("incomplete gamma against the exponential closed form") {
    // P(1, x) = 1 - exp(-x)
    for (double x : {0.1, 0.7, 1.0, 2.5, 8.0})
        CHECK(gamma_p(1.0, x) == doctest::Approx(1.0 - std::exp(-x)).epsilon(1e-12));
}

TEST_CASE("profile weights normalize") {
    for (auto [a, b] : {std::pair{1.87, 0.28}, {2.5, 0.5}, {0.9, 1.3}}) {
        const auto p = gamma_profile(a, b);
        double sum = 0.0;
        for (double w : p.w) sum += w;
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("single-bin support is degenerate") {
    const auto p = gamma_profile(1.87, 0.28, 1);
    REQUIRE(p.s_max() == 1);
    CHECK(p.w[0] == doctest::Approx(1.0));
}

TEST_CASE("serial-interval profile matches the quadrature oracle") {
    const auto p = gamma_profile(1.87, 0.28);
    double oracle_total = 0.0;
    std::vector<double> oracle_bins;
    for (int s = 1; s <= p.s_max(); ++s) {
        oracle_bins.push_back(simpson_bin(1.87, 0.28, s - 1.0, s));
        oracle_total += oracle_bins.back();
    }
    for (int s = 1; s <= p.s_max(); ++s)
        CHECK(p.w[s - 1] == doctest::Approx(oracle_bins[s - 1] / oracle_total).epsilon(1e-7));

    // discrete mean close to the continuous mean alpha/beta = 6.68
    double mean = 0.0;
    for (int s = 1; s <= p.s_max(); ++s) mean += s * p.w[s - 1];
    CHECK(std::abs(mean - 1.87 / 0.28) <= 0.5);

    // default support holds at least 99.9% of the distribution
    CHECK(gamma_cdf(p.s_max(), 1.87, 0.28) >= 0.999);
}

TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(gamma_profile(0.0, 0.28), std::invalid_argument);
    CHECK_THROWS_AS(gamma_profile(1.87, -1.0), std::invalid_argument);
}

#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "sisar/gamma.hpp"
#include "sisar/tikhonov.hpp"

namespace sisar {

// Reproduction-number estimate. Days without a defined value (empty
// infectious past) carry NaN; bands are present for the MCMC method only.
struct RtEstimate {
    std::string method;
    std::vector<double> rt;
    std::vector<double> lo;
    std::vector<double> hi;
    int samples_per_day = 0;

    static double gap() { return std::numeric_limits<double>::quiet_NaN(); }
};

// R_t = I_t / sum_s w_s I_{t-s}
inline RtEstimate naive_rt(const std::vector<double>& series,
                           const InfectivityProfile& profile) {
    if (static_cast<int>(series.size()) <= profile.s_max())
        throw std::invalid_argument("naive_rt: series shorter than the profile support");
    RtEstimate est;
    est.method = "naive";
    est.rt.assign(series.size(), RtEstimate::gap());
    for (std::size_t t = 1; t < series.size(); ++t) {
        const double denom = profile.renewal_sum(series, static_cast<int>(t));
        if (denom > 0.0) est.rt[t] = series[t] / denom;
    }
    return est;
}

// Average transmissibility over a trailing window: the renewal ratio applied
// to the windowed sums (scale invariance of the ratio makes this equal to
// using windowed means).
inline RtEstimate windowed_rt(const std::vector<double>& series,
                              const InfectivityProfile& profile, int tau = 14) {
    if (tau < 1) throw std::invalid_argument("windowed_rt: tau must be >= 1");
    std::vector<double> acc(series.size(), 0.0);
    for (std::size_t t = 0; t < series.size(); ++t) {
        double s = 0.0;
        for (int k = 0; k <= tau && static_cast<int>(t) - k >= 0; ++k)
            s += series[t - static_cast<std::size_t>(k)];
        acc[t] = s;
    }
    RtEstimate est = naive_rt(acc, profile);
    est.method = "windowed(" + std::to_string(tau) + ")";
    // the estimator is defined on complete windows only
    for (int t = 0; t < tau && t < static_cast<int>(est.rt.size()); ++t)
        est.rt[t] = RtEstimate::gap();
    return est;
}

// Renewal ratio on the Tikhonov-smoothed series.
inline RtEstimate smoothed_rt(const std::vector<double>& series,
                              const InfectivityProfile& profile, double alpha_reg = 100.0) {
    auto smooth = tikhonov_smooth(series, alpha_reg);
    for (auto& v : smooth) v = std::max(v, 0.0);
    RtEstimate est = naive_rt(smooth, profile);
    est.method = "smoothed";
    return est;
}

}  // namespace sisar

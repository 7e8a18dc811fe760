#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "sisar/gamma.hpp"
#include "sisar/rng.hpp"
#include "sisar/rsvd.hpp"
#include "sisar/rt.hpp"

namespace sisar {

struct McmcConfig {
    int n_chains = 4;
    int n_tune = 1000;
    int n_keep = 500;
    double prior_mean = 1.3;
    double prior_sd = 10.0;
    double proposal_sd = 0.12;
    double band_coverage = 0.90;
    std::uint64_t seed = 2021;
};

namespace detail {

// trailing 7-day moving mean and standard deviation of the relative residuals
inline void rolling_stats(const std::vector<double>& eps, std::vector<double>& mean,
                          std::vector<double>& sd) {
    const std::size_t n = eps.size();
    mean.assign(n, 0.0);
    sd.assign(n, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
        const std::size_t lo = t >= 6 ? t - 6 : 0;
        double mu = 0.0;
        for (std::size_t s = lo; s <= t; ++s) mu += eps[s];
        const double cnt = static_cast<double>(t - lo + 1);
        mu /= cnt;
        double var = 0.0;
        for (std::size_t s = lo; s <= t; ++s) var += (eps[s] - mu) * (eps[s] - mu);
        mean[t] = mu;
        sd[t] = std::sqrt(var / cnt);
    }
}

inline double poisson_loglik(double observed, double expected) {
    if (expected <= 0.0) return -1e12;
    return observed * std::log(expected) - expected - std::lgamma(observed + 1.0);
}

}  // namespace detail

// Posterior sampling of the reproduction number on a deseasoned trend. Per
// iteration the relative-residual noise is redrawn from its rolling prior and
// injected into the trend; each day's R then takes a random-walk Metropolis
// step against the Poisson likelihood of the trend count given the renewal
// expectation. Chains run independently and in parallel.
inline RtEstimate mcmc_rt(const Decomposition& dec, const InfectivityProfile& profile,
                          const McmcConfig& cfg = {}) {
    const std::size_t n = dec.trend.size();
    if (n == 0) throw std::invalid_argument("mcmc_rt: empty decomposition");
    if (cfg.n_chains < 1 || cfg.n_tune < 0 || cfg.n_keep < 1)
        throw std::invalid_argument("mcmc_rt: bad chain configuration");
    for (double v : dec.trend)
        if (v <= 0.0) throw std::invalid_argument("mcmc_rt: trend must be positive");

    std::vector<double> roll_mean, roll_sd;
    detail::rolling_stats(dec.rel_residual, roll_mean, roll_sd);

    // a day is estimable once the renewal denominator has support
    std::vector<std::uint8_t> active(n, 0);
    for (std::size_t t = 1; t < n; ++t)
        active[t] = profile.renewal_sum(dec.trend, static_cast<int>(t)) > 0.0 ? 1 : 0;

    const int total_kept = cfg.n_chains * cfg.n_keep;
    // samples[t] holds all kept draws for day t across chains
    std::vector<std::vector<double>> samples(n);
    for (auto& v : samples) v.reserve(static_cast<std::size_t>(total_kept));
    std::vector<std::vector<std::vector<double>>> chain_samples(
        static_cast<std::size_t>(cfg.n_chains));

    auto run_chain = [&](int chain) {
        Rng rng(cfg.seed + static_cast<std::uint64_t>(chain) * 0x9E3779B97F4A7C15ULL);
        std::vector<double> r(n, cfg.prior_mean);
        std::vector<double> noisy(n, 0.0);
        auto& kept = chain_samples[static_cast<std::size_t>(chain)];
        kept.assign(n, {});
        for (auto& v : kept) v.reserve(static_cast<std::size_t>(cfg.n_keep));
        const int iters = cfg.n_tune + cfg.n_keep;
        for (int it = 0; it < iters; ++it) {
            // redraw the noise chains from their rolling prior and push the
            // observation noise into the renewal input
            for (std::size_t t = 0; t < n; ++t) {
                const double eps = rng.normal(roll_mean[t], roll_sd[t]);
                noisy[t] = std::max(1e-9, dec.trend[t] * (1.0 + eps));
            }
            for (std::size_t t = 0; t < n; ++t) {
                if (!active[t]) continue;
                const double denom = profile.renewal_sum(noisy, static_cast<int>(t));
                if (denom <= 0.0) continue;
                const double cur = r[t];
                const double prop = cur + rng.normal(0.0, cfg.proposal_sd);
                auto logpost = [&](double rv) {
                    if (rv < 0.0) return -1e18;
                    const double zp = (rv - cfg.prior_mean) / cfg.prior_sd;
                    return detail::poisson_loglik(dec.trend[t], rv * denom) - 0.5 * zp * zp;
                };
                const double accept = logpost(prop) - logpost(cur);
                if (accept >= 0.0 || std::log(rng.uniform() + 1e-300) < accept) r[t] = prop;
            }
            if (it >= cfg.n_tune)
                for (std::size_t t = 0; t < n; ++t)
                    if (active[t]) kept[t].push_back(r[t]);
        }
    };

    if (cfg.n_chains == 1) {
        run_chain(0);
    } else {
        std::vector<std::thread> pool;
        for (int c = 0; c < cfg.n_chains; ++c) pool.emplace_back(run_chain, c);
        for (auto& t : pool) t.join();
    }
    for (int c = 0; c < cfg.n_chains; ++c)
        for (std::size_t t = 0; t < n; ++t)
            samples[t].insert(samples[t].end(), chain_samples[static_cast<std::size_t>(c)][t].begin(),
                              chain_samples[static_cast<std::size_t>(c)][t].end());

    RtEstimate est;
    est.method = "deseasoned-mcmc";
    est.samples_per_day = total_kept;
    est.rt.assign(n, RtEstimate::gap());
    est.lo.assign(n, RtEstimate::gap());
    est.hi.assign(n, RtEstimate::gap());
    const double tail = (1.0 - cfg.band_coverage) / 2.0;
    for (std::size_t t = 0; t < n; ++t) {
        if (!active[t] || samples[t].empty()) continue;
        auto& xs = samples[t];
        std::sort(xs.begin(), xs.end());
        auto quantile = [&](double q) {
            const double pos = q * static_cast<double>(xs.size() - 1);
            const std::size_t i = static_cast<std::size_t>(pos);
            const double frac = pos - static_cast<double>(i);
            if (i + 1 >= xs.size()) return xs.back();
            return xs[i] * (1.0 - frac) + xs[i + 1] * frac;
        };
        est.rt[t] = quantile(0.5);
        est.lo[t] = quantile(tail);
        est.hi[t] = quantile(1.0 - tail);
    }
    return est;
}

}  // namespace sisar

#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace sisar {

struct SummaryStat {
    std::size_t count = 0;
    double mean = 0.0;
    double std_dev = 0.0;  // sample by default; 0 when count < 2
};

inline SummaryStat summary_stat(std::span<const double> xs, bool sample_std = true) {
    SummaryStat s;
    s.count = xs.size();
    if (xs.empty()) return s;
    double sum = 0.0;
    for (double x : xs) sum += x;
    s.mean = sum / static_cast<double>(xs.size());
    if (xs.size() < 2) return s;
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    const double denom = static_cast<double>(xs.size() - (sample_std ? 1 : 0));
    s.std_dev = std::sqrt(ss / denom);
    return s;
}

inline double mean_of(std::span<const double> xs) { return summary_stat(xs).mean; }

// One-sided Welch test statistic for mean(a) > mean(b); returns the z value.
// With the batch sizes used here (hundreds of runs) the normal approximation
// is adequate.
inline double welch_z(std::span<const double> a, std::span<const double> b) {
    const auto sa = summary_stat(a);
    const auto sb = summary_stat(b);
    const double va = sa.std_dev * sa.std_dev / static_cast<double>(sa.count);
    const double vb = sb.std_dev * sb.std_dev / static_cast<double>(sb.count);
    return (sa.mean - sb.mean) / std::sqrt(va + vb);
}

inline double sample_skewness(std::span<const double> xs) {
    const auto s = summary_stat(xs, false);
    if (s.count < 3 || s.std_dev == 0.0) return 0.0;
    double m3 = 0.0;
    for (double x : xs) {
        const double d = x - s.mean;
        m3 += d * d * d;
    }
    m3 /= static_cast<double>(s.count);
    return m3 / (s.std_dev * s.std_dev * s.std_dev);
}

// Pearson correlation
inline double correlation(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = std::min(x.size(), y.size());
    if (n < 2) return 0.0;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) { mx += x[i]; my += y[i]; }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = x[i] - mx, dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

// Lag of b relative to a maximizing cross-correlation over [-max_lag, max_lag];
// positive when b trails a.
inline int best_lag(std::span<const double> a, std::span<const double> b, int max_lag) {
    double best = -2.0;
    int best_l = 0;
    for (int lag = -max_lag; lag <= max_lag; ++lag) {
        std::vector<double> xa, xb;
        const int n = static_cast<int>(std::min(a.size(), b.size()));
        for (int t = 0; t < n; ++t) {
            const int tb = t + lag;
            if (tb < 0 || tb >= static_cast<int>(b.size())) continue;
            if (!std::isfinite(a[t]) || !std::isfinite(b[tb])) continue;
            xa.push_back(a[t]);
            xb.push_back(b[tb]);
        }
        if (xa.size() < 8) continue;
        const double c = correlation(xa, xb);
        if (c > best) {
            best = c;
            best_l = lag;
        }
    }
    return best_l;
}

}  // namespace sisar

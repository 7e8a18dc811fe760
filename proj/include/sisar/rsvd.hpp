#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sisar/adf.hpp"
#include "sisar/linalg.hpp"
#include "sisar/tikhonov.hpp"

namespace sisar {

// Additive decomposition of a positive daily series:
//     I_t = trend_t + seasonal_t + residual_t   (exactly)
// obtained by removing a regularized-SVD weekly pattern from the log series
// and Tikhonov-smoothing the deseasoned signal.
struct Decomposition {
    std::vector<double> trend;         // deseasoned smooth level
    std::vector<double> seasonal;      // level-scale seasonal component
    std::vector<double> residual;      // deseasoned minus trend
    std::vector<double> rel_residual;  // residual / trend
    int diff_degree = 0;
    std::vector<double> component_alphas;  // Tikhonov weights per SVD component

    std::vector<double> reconstruct() const {
        std::vector<double> out(trend.size());
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = trend[i] + seasonal[i] + residual[i];
        return out;
    }
};

namespace detail {

inline std::vector<double> diff1(const std::vector<double>& v) {
    std::vector<double> out(v.size() - 1);
    for (std::size_t i = 1; i < v.size(); ++i) out[i - 1] = v[i] - v[i - 1];
    return out;
}

inline std::vector<double> undiff1(const std::vector<double>& v, double first) {
    std::vector<double> out(v.size() + 1);
    out[0] = first;
    for (std::size_t i = 0; i < v.size(); ++i) out[i + 1] = out[i] + v[i];
    return out;
}

inline bool nearly_constant(const std::vector<double>& v) {
    double lo = v[0], hi = v[0];
    for (double x : v) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
    }
    return hi - lo < 1e-9 * (1.0 + std::abs(hi));
}

}  // namespace detail

// period: season length in days (7 for weekly patterns). diff_degree: -1
// selects the smallest degree (up to 2) whose differenced log series passes
// the stationarity test.
inline Decomposition rsvd_deseason(const std::vector<double>& series, int period = 7,
                                   int diff_degree = -1) {
    const std::size_t n = series.size();
    if (period < 2) throw std::invalid_argument("rsvd_deseason: period must be >= 2");
    if (n < static_cast<std::size_t>(4 * period + 2))
        throw std::invalid_argument("rsvd_deseason: series shorter than 4 periods");
    for (double v : series)
        if (v <= 0.0)
            throw std::invalid_argument("rsvd_deseason: log transform needs positive values");

    Decomposition dec;

    if (detail::nearly_constant(series)) {
        dec.trend = series;
        dec.seasonal.assign(n, 0.0);
        dec.residual.assign(n, 0.0);
        dec.rel_residual.assign(n, 0.0);
        return dec;
    }

    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = std::log(series[i]);

    // differencing stages, keeping the leading value of every stage so the
    // deseasoned signal can be integrated back
    std::vector<std::vector<double>> stages{w};
    int degree = 0;
    if (diff_degree < 0) {
        for (degree = 0; degree < 2; ++degree) {
            bool stationary = false;
            try {
                stationary = adf_test(stages.back(), 1).reject_unit_root;
            } catch (const std::invalid_argument&) {
                stationary = true;  // degenerate after differencing: flat enough
            }
            if (stationary) break;
            stages.push_back(detail::diff1(stages.back()));
        }
    } else {
        degree = std::min(diff_degree, 2);
        for (int d = 0; d < degree; ++d) stages.push_back(detail::diff1(stages.back()));
    }
    dec.diff_degree = static_cast<int>(stages.size()) - 1;

    const std::vector<double>& z = stages.back();
    const std::size_t m = z.size();
    const std::size_t p = static_cast<std::size_t>(period);
    const std::size_t r = m / p;
    if (r < 4) throw std::invalid_argument("rsvd_deseason: series shorter than 4 periods");

    // seasons matrix: rows are periods, columns the position in the season
    Matrix a(r, p);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < p; ++j) a(i, j) = z[i * p + j];
    // per-period means belong to the trend, not the seasonal pattern
    std::vector<double> row_mean(r, 0.0);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = 0; j < p; ++j) row_mean[i] += a(i, j);
        row_mean[i] /= static_cast<double>(p);
        for (std::size_t j = 0; j < p; ++j) a(i, j) -= row_mean[i];
    }

    // SVD through the p x p Gram matrix
    const Matrix at = transpose(a);
    const Matrix gram = matmul(at, a);
    const EigenSym eig = jacobi_eigen(gram);

    static const std::vector<double> kAlphaGrid = [] {
        std::vector<double> g;
        for (int i = 0; i < 13; ++i) g.push_back(std::pow(10.0, -2.0 + 0.5 * i));
        return g;
    }();

    Matrix seasonal_matrix(r, p);
    for (std::size_t k = 0; k < p; ++k) {
        const double sigma = std::sqrt(std::max(eig.values[k], 0.0));
        if (sigma < 1e-12) continue;
        // course of the component across periods, smoothed down the rows
        std::vector<double> course(r, 0.0);
        for (std::size_t i = 0; i < r; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < p; ++j) s += a(i, j) * eig.vectors(j, k);
            course[i] = s;  // = sigma * u_k(i)
        }
        std::vector<double> smooth_course = course;
        if (r >= 4) {
            const double alpha = tikhonov_loocv_alpha(course, kAlphaGrid);
            dec.component_alphas.push_back(alpha);
            smooth_course = tikhonov_smooth(course, alpha);
        }
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < p; ++j)
                seasonal_matrix(i, j) += smooth_course[i] * eig.vectors(j, k);
    }

    // seasonal component of the differenced log signal; the tail beyond the
    // last full period reuses the final period's pattern
    std::vector<double> s_z(m, 0.0);
    for (std::size_t t = 0; t < m; ++t) {
        const std::size_t row = std::min(t / p, r - 1);
        s_z[t] = seasonal_matrix(row, t % p);
    }

    std::vector<double> deseasoned = z;
    for (std::size_t t = 0; t < m; ++t) deseasoned[t] -= s_z[t];

    // integrate back through the differencing stages
    for (int d = dec.diff_degree; d-- > 0;)
        deseasoned = detail::undiff1(deseasoned, stages[static_cast<std::size_t>(d)][0]);

    // integration anchors the log seasonal at zero on week boundaries; what
    // belongs to the seasonal is only its zero-week-mean part, so the
    // per-week mean of (w - deseasoned) is given back to the level
    {
        std::vector<double> s_w(n);
        for (std::size_t i = 0; i < n; ++i) s_w[i] = w[i] - deseasoned[i];
        const std::size_t full_weeks = n / p;
        std::vector<double> week_mean(full_weeks, 0.0);
        for (std::size_t k = 0; k < full_weeks; ++k) {
            for (std::size_t j = 0; j < p; ++j) week_mean[k] += s_w[k * p + j];
            week_mean[k] /= static_cast<double>(p);
        }
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t k = std::min(i / p, full_weeks - 1);
            deseasoned[i] = w[i] - (s_w[i] - week_mean[k]);
        }
    }

    std::vector<double> level(n);
    for (std::size_t i = 0; i < n; ++i) level[i] = std::exp(deseasoned[i]);

    const std::vector<double> trend_log = tikhonov_smooth(deseasoned, 100.0);
    dec.trend.resize(n);
    dec.seasonal.resize(n);
    dec.residual.resize(n);
    dec.rel_residual.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        dec.trend[i] = std::exp(trend_log[i]);
        dec.seasonal[i] = series[i] - level[i];
        dec.residual[i] = level[i] - dec.trend[i];
        dec.rel_residual[i] = dec.residual[i] / dec.trend[i];
    }
    return dec;
}

}  // namespace sisar

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "sisar/linalg.hpp"

namespace sisar {

struct AdfResult {
    double statistic = 0.0;
    bool reject_unit_root = false;  // stationary at the 5% level
};

// Augmented Dickey-Fuller regression with constant:
//   dy_t = c + gamma * y_{t-1} + sum_{i=1..k} phi_i * dy_{t-i} + e_t
// The t statistic of gamma is compared against the 5% critical value -2.86.
inline AdfResult adf_test(const std::vector<double>& series, int max_lag = 1) {
    const int n = static_cast<int>(series.size());
    if (max_lag < 0) throw std::invalid_argument("adf_test: negative lag");
    if (n <= max_lag + 3) throw std::invalid_argument("adf_test: series too short");

    double lo = series[0], hi = series[0];
    for (double v : series) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi - lo < 1e-12) throw std::invalid_argument("adf_test: degenerate constant series");

    std::vector<double> dy(static_cast<std::size_t>(n - 1));
    for (int t = 1; t < n; ++t) dy[static_cast<std::size_t>(t - 1)] = series[t] - series[t - 1];

    const int k = max_lag;
    const int rows = n - 1 - k;
    const int cols = 2 + k;  // constant, y_{t-1}, lagged differences
    if (rows <= cols) throw std::invalid_argument("adf_test: series too short for lag order");
    Matrix x(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    std::vector<double> y(static_cast<std::size_t>(rows));
    for (int r = 0; r < rows; ++r) {
        const int t = k + 1 + r;  // index into the level series
        y[static_cast<std::size_t>(r)] = dy[static_cast<std::size_t>(t - 1)];
        x(r, 0) = 1.0;
        x(r, 1) = series[static_cast<std::size_t>(t - 1)];
        for (int i = 1; i <= k; ++i)
            x(r, static_cast<std::size_t>(1 + i)) = dy[static_cast<std::size_t>(t - 1 - i)];
    }

    // OLS by normal equations
    const Matrix xt = transpose(x);
    const Matrix xtx = matmul(xt, x);
    const std::vector<double> xty = matvec(xt, y);
    const Matrix l = cholesky(xtx);
    const std::vector<double> beta = cholesky_solve(l, xty);

    double rss = 0.0;
    for (int r = 0; r < rows; ++r) {
        double fit = 0.0;
        for (int c = 0; c < cols; ++c) fit += x(r, c) * beta[static_cast<std::size_t>(c)];
        const double e = y[static_cast<std::size_t>(r)] - fit;
        rss += e * e;
    }
    const double sigma2 = rss / static_cast<double>(rows - cols);

    // variance of beta_1: sigma^2 * (X^T X)^{-1}(1,1)
    std::vector<double> e1(static_cast<std::size_t>(cols), 0.0);
    e1[1] = 1.0;
    const std::vector<double> inv_col = cholesky_solve(l, e1);
    const double se = std::sqrt(sigma2 * inv_col[1]);

    AdfResult res;
    res.statistic = beta[1] / se;
    res.reject_unit_root = res.statistic < -2.86;
    return res;
}

}  // namespace sisar

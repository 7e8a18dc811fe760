#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "sisar/linalg.hpp"

namespace sisar {

namespace detail {

// X is the integration operator (lower-triangular ones). The first fitted
// coefficient is the initial level, the rest are daily increments; Gamma
// penalizes second differences of the increments only, so the level and the
// boundary slope stay free.
inline Matrix tikhonov_normal_matrix(std::size_t n, double alpha) {
    Matrix m(n, n);
    // X^T X for the all-ones lower triangle: (X^T X)(i, j) = n - max(i, j)
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = static_cast<double>(n - std::max(i, j));
    const double a2 = alpha * alpha;
    if (a2 > 0.0) {
        // Gamma^T Gamma assembled row by row, rows k >= 3 of Gamma:
        // Gamma(k, k) = 1, Gamma(k, k-1) = -2, Gamma(k, k-2) = 1
        for (std::size_t k = 3; k < n; ++k) {
            const std::size_t idx[3] = {k, k - 1, k - 2};
            const double coef[3] = {1.0, -2.0, 1.0};
            for (int u = 0; u < 3; ++u)
                for (int v = 0; v < 3; ++v) m(idx[u], idx[v]) += a2 * coef[u] * coef[v];
        }
    }
    return m;
}

inline std::vector<double> cumulative_sum(const std::vector<double>& v) {
    std::vector<double> out(v.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        acc += v[i];
        out[i] = acc;
    }
    return out;
}

}  // namespace detail

// Smooths a series by ridge-fitting its derivative against the integration
// operator and integrating back; alpha 100 is the default working point.
// Linear in the input for a fixed alpha.
inline std::vector<double> tikhonov_smooth(const std::vector<double>& series,
                                           double alpha_reg = 100.0) {
    const std::size_t n = series.size();
    if (n < 4) throw std::invalid_argument("tikhonov_smooth: need at least 4 points");
    // X^T I for lower-triangular ones: reversed suffix sums
    std::vector<double> rhs(n);
    double acc = 0.0;
    for (std::size_t i = n; i-- > 0;) {
        acc += series[i];
        rhs[i] = acc;
    }
    const Matrix m = detail::tikhonov_normal_matrix(n, alpha_reg);
    const std::vector<double> omega = spd_solve(m, rhs);
    return detail::cumulative_sum(omega);
}

// Hat-matrix diagonal of the smoother, for leave-one-out cross validation:
// fit = X (X^T X + a^2 G^T G)^{-1} X^T y.
inline std::vector<double> tikhonov_hat_diagonal(std::size_t n, double alpha_reg) {
    if (n < 4) throw std::invalid_argument("tikhonov_hat_diagonal: need at least 4 points");
    const Matrix m = detail::tikhonov_normal_matrix(n, alpha_reg);
    const Matrix l = cholesky(m);
    std::vector<double> diag(n, 0.0);
    // column j of X^T is the indicator prefix: (X^T e_j)(i) = 1 for i <= j
    for (std::size_t j = 0; j < n; ++j) {
        std::vector<double> col(n, 0.0);
        for (std::size_t i = 0; i <= j; ++i) col[i] = 1.0;
        const std::vector<double> omega = cholesky_solve(l, col);
        double h = 0.0;  // (X omega)(j) = sum_{i<=j} omega_i
        for (std::size_t i = 0; i <= j; ++i) h += omega[i];
        diag[j] = h;
    }
    return diag;
}

// Picks the regularization weight on a log grid by leave-one-out cross
// validation using the linear-smoother shortcut.
inline double tikhonov_loocv_alpha(const std::vector<double>& series,
                                   const std::vector<double>& grid) {
    if (grid.empty()) throw std::invalid_argument("tikhonov_loocv_alpha: empty grid");
    double best_alpha = grid.front();
    double best_err = std::numeric_limits<double>::infinity();
    for (double alpha : grid) {
        const auto fit = tikhonov_smooth(series, alpha);
        const auto hat = tikhonov_hat_diagonal(series.size(), alpha);
        double err = 0.0;
        for (std::size_t i = 0; i < series.size(); ++i) {
            const double denom = std::max(1e-12, 1.0 - hat[i]);
            const double e = (series[i] - fit[i]) / denom;
            err += e * e;
        }
        if (err < best_err) {
            best_err = err;
            best_alpha = alpha;
        }
    }
    return best_alpha;
}

}  // namespace sisar

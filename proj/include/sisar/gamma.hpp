#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace sisar {

// Regularized lower incomplete gamma P(a, x), by series expansion for
// x < a+1 and continued fraction otherwise.
inline double gamma_p(double a, double x) {
    if (a <= 0.0) throw std::invalid_argument("gamma_p: a must be positive");
    if (x < 0.0) throw std::invalid_argument("gamma_p: x must be non-negative");
    if (x == 0.0) return 0.0;
    const double gln = std::lgamma(a);
    if (x < a + 1.0) {
        double ap = a;
        double sum = 1.0 / a;
        double del = sum;
        for (int n = 0; n < 500; ++n) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::abs(del) < std::abs(sum) * 1e-15) break;
        }
        return sum * std::exp(-x + a * std::log(x) - gln);
    }
    // Lentz continued fraction for Q(a, x)
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 500; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-15) break;
    }
    const double q = std::exp(-x + a * std::log(x) - gln) * h;
    return 1.0 - q;
}

// Gamma(shape alpha, rate beta) CDF.
inline double gamma_cdf(double x, double alpha, double beta_rate) {
    if (x <= 0.0) return 0.0;
    return gamma_p(alpha, beta_rate * x);
}

inline double gamma_pdf(double x, double alpha, double beta_rate) {
    if (x <= 0.0) return 0.0;
    return std::exp(alpha * std::log(beta_rate) + (alpha - 1.0) * std::log(x) -
                    beta_rate * x - std::lgamma(alpha));
}

// Infectivity profile: the serial-interval Gamma distribution discretized by
// unit-interval integration, w_s = F(s) - F(s-1), renormalized over the kept
// support. w_0 is excluded. The default support keeps 99.9% of the mass.
struct InfectivityProfile {
    double alpha = 1.87;
    double beta_rate = 0.28;
    std::vector<double> w;  // w[0] is w_1

    int s_max() const { return static_cast<int>(w.size()); }

    // weighted sum over the infectious past: sum_s w_s series[t - s]
    double renewal_sum(const std::vector<double>& series, int t) const {
        double acc = 0.0;
        for (int s = 1; s <= s_max() && t - s >= 0; ++s)
            acc += w[static_cast<std::size_t>(s - 1)] * series[static_cast<std::size_t>(t - s)];
        return acc;
    }
};

inline InfectivityProfile gamma_profile(double alpha = 1.87, double beta_rate = 0.28,
                                        int s_max = 0) {
    if (alpha <= 0.0 || beta_rate <= 0.0)
        throw std::invalid_argument("gamma_profile: parameters must be positive");
    if (s_max <= 0) {
        s_max = 1;
        while (gamma_cdf(s_max, alpha, beta_rate) < 0.999 && s_max < 1000) ++s_max;
    }
    InfectivityProfile p;
    p.alpha = alpha;
    p.beta_rate = beta_rate;
    p.w.resize(static_cast<std::size_t>(s_max));
    double total = 0.0;
    for (int s = 1; s <= s_max; ++s) {
        const double ws = gamma_cdf(s, alpha, beta_rate) - gamma_cdf(s - 1, alpha, beta_rate);
        p.w[static_cast<std::size_t>(s - 1)] = ws;
        total += ws;
    }
    if (total <= 0.0) throw std::invalid_argument("gamma_profile: degenerate support");
    for (auto& ws : p.w) ws /= total;
    return p;
}

}  // namespace sisar

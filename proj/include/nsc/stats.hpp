/**
 * Small statistics toolbox: sample moments and the paired two-sided t-test.
 * The Student-t tail probability comes from the regularized incomplete beta
 * function (Lentz continued fraction), so there is no external dependency.
 */

#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "nsc/errors.hpp"

namespace nsc {

inline double mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / v.size();
}

/// Sample standard deviation (n - 1); zero for fewer than two values.
inline double sample_std(const std::vector<double>& v) {
    if (v.size() < 2) return 0.0;
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return std::sqrt(s / (v.size() - 1));
}

namespace detail {

inline double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace detail

/// Regularized incomplete beta function I_x(a, b).
inline double regularized_incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double log_bt = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
    const double bt = std::exp(log_bt);
    if (x < (a + 1.0) / (a + b + 2.0)) return bt * detail::betacf(a, b, x) / a;
    return 1.0 - bt * detail::betacf(b, a, 1.0 - x) / b;
}

/// Two-sided tail probability of Student's t with nu degrees of freedom.
inline double student_t_two_sided_p(double t, double nu) {
    if (!std::isfinite(t)) return 0.0;
    return regularized_incomplete_beta(0.5 * nu, 0.5, nu / (nu + t * t));
}

struct TTestResult {
    double t = 0.0;
    double p = 1.0;
};

/**
 * Two-sided paired t-test on the differences a - b.
 *
 * Conventions for the degenerate branches: all-zero differences give
 * t = 0, p = 1; a nonzero mean with zero variance gives t = +-inf, p = 0
 * (reported as p < 1e-12 by any caller that formats it).
 */
inline TTestResult paired_t_test(const std::vector<double>& a,
                                 const std::vector<double>& b) {
    if (a.size() != b.size()) throw DataError("paired_t_test: length mismatch");
    if (a.size() < 2) throw DataError("paired_t_test: need at least two pairs");

    const std::size_t n = a.size();
    std::vector<double> diff(n);
    for (std::size_t i = 0; i < n; ++i) diff[i] = a[i] - b[i];
    const double m = mean(diff);
    const double sd = sample_std(diff);

    if (sd == 0.0) {
        if (m == 0.0) return {0.0, 1.0};
        return {m > 0 ? std::numeric_limits<double>::infinity()
                      : -std::numeric_limits<double>::infinity(),
                0.0};
    }
    const double t = m / (sd / std::sqrt(double(n)));
    return {t, student_t_two_sided_p(t, double(n - 1))};
}

}  // namespace nsc

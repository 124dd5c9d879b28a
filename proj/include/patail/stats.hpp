#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include <boost/math/distributions/normal.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace patail {

inline double gamma_cdf(double shape, double x) {
    if (x <= 0.0) return 0.0;
    return boost::math::gamma_p(shape, x);
}

inline double exp_cdf(double x) { return x <= 0.0 ? 0.0 : -std::expm1(-x); }

inline double normal_quantile(double p) {
    static const boost::math::normal_distribution<double> unit;
    return boost::math::quantile(unit, p);
}

// Kolmogorov asymptotic tail Q(x) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 x^2)
inline double kolmogorov_tail(double x) {
    if (x <= 0.0) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = std::exp(-2.0 * static_cast<double>(j) * static_cast<double>(j) * x * x);
        sum += sign * term;
        if (term < 1e-16) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

struct KsResult {
    double statistic = 0.0;
    double p_value = 0.0;
};

// One-sample Kolmogorov-Smirnov against a continuous cdf; p-value via the
// Stephens-corrected asymptotic tail.
inline KsResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf) {
    const std::size_t n = sample.size();
    if (n == 0) throw std::invalid_argument("ks_test: empty sample");
    std::sort(sample.begin(), sample.end());
    double d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, f - static_cast<double>(i) / static_cast<double>(n));
        d = std::max(d, static_cast<double>(i + 1) / static_cast<double>(n) - f);
    }
    const double sn = std::sqrt(static_cast<double>(n));
    KsResult r;
    r.statistic = d;
    r.p_value = kolmogorov_tail((sn + 0.12 + 0.11 / sn) * d);
    return r;
}

inline KsResult ks_test_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_test_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    const double ne = std::sqrt(na * nb / (na + nb));
    KsResult r;
    r.statistic = d;
    r.p_value = kolmogorov_tail((ne + 0.12 + 0.11 / ne) * d);
    return r;
}

inline double mean_of(std::span<const double> xs) {
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

inline double sample_sd(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    const double m = mean_of(xs);
    double s = 0.0;
    for (double x : xs) s += (x - m) * (x - m);
    return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

inline double standard_error(std::span<const double> xs) {
    return sample_sd(xs) / std::sqrt(static_cast<double>(xs.size()));
}

inline double pearson_correlation(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("pearson_correlation: size mismatch");
    const double mx = mean_of(xs), my = mean_of(ys);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double dx = xs[i] - mx, dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw std::domain_error("pearson_correlation: zero variance");
    return sxy / std::sqrt(sxx * syy);
}

} // namespace patail

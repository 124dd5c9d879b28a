#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace patail {

// all of the top k+1 values are tied, so the Hill estimate is zero
struct DegenerateTail : std::domain_error {
    DegenerateTail() : std::domain_error("degenerate tail") {}
};

// Sample sorted descending, Z_(1) >= Z_(2) >= ... >= Z_(n), with log prefix
// sums and the distinct-value table precomputed for the threshold scan.
class SortedSample {
public:
    explicit SortedSample(std::vector<double> values) : values_(std::move(values)) {
        if (values_.empty()) throw std::invalid_argument("SortedSample: empty sample");
        std::sort(values_.begin(), values_.end(), std::greater<double>());
        log_prefix_.resize(values_.size() + 1, 0.0);
        for (std::size_t i = 0; i < values_.size(); ++i)
            log_prefix_[i + 1] = log_prefix_[i] + (values_[i] > 0.0
                                     ? std::log(values_[i])
                                     : -std::numeric_limits<double>::infinity());
        for (std::size_t i = 0; i < values_.size();) {
            std::size_t j = i;
            while (j < values_.size() && values_[j] == values_[i]) ++j;
            distinct_.push_back({values_[i], static_cast<std::int64_t>(i),
                                 static_cast<std::int64_t>(j)});
            i = j;
        }
    }

    static SortedSample from_degrees(std::span<const std::int64_t> degrees) {
        std::vector<double> v(degrees.size());
        for (std::size_t i = 0; i < degrees.size(); ++i) v[i] = static_cast<double>(degrees[i]);
        return SortedSample(std::move(v));
    }

    struct Distinct {
        double value;
        std::int64_t count_gt;   // #{Z_i > value}
        std::int64_t count_ge;   // #{Z_i >= value}
    };

    std::int64_t size() const { return static_cast<std::int64_t>(values_.size()); }
    const std::vector<double>& values() const { return values_; }
    double order_stat(std::int64_t i) const { return values_[static_cast<std::size_t>(i - 1)]; }
    double sum_log_top(std::int64_t k) const { return log_prefix_[static_cast<std::size_t>(k)]; }
    const std::vector<Distinct>& distinct() const { return distinct_; }

    // index into distinct() of the given order statistic's value
    std::size_t distinct_index(std::int64_t i) const {
        const double v = order_stat(i);
        auto it = std::lower_bound(distinct_.begin(), distinct_.end(), v,
                                   [](const Distinct& d, double x) { return d.value > x; });
        return static_cast<std::size_t>(it - distinct_.begin());
    }

private:
    std::vector<double> values_;
    std::vector<double> log_prefix_;
    std::vector<Distinct> distinct_;
};

// Hill estimator H_{k,n} = (1/k) sum_{i<=k} log(Z_(i)/Z_(k+1)); ties at the
// threshold contribute zero terms.
inline double hill(const SortedSample& s, std::int64_t k) {
    if (k < 1 || k > s.size() - 1) throw std::invalid_argument("hill: k must be in [1, n-1]");
    const double zk1 = s.order_stat(k + 1);
    if (!(zk1 > 0.0)) throw std::domain_error("hill: Z_(k+1) must be positive");
    const double h = s.sum_log_top(k) / static_cast<double>(k) - std::log(zk1);
    return h > 0.0 ? h : 0.0;
}

inline double alpha_hat(const SortedSample& s, std::int64_t k) {
    const double h = hill(s, k);
    if (h <= 0.0) throw DegenerateTail{};
    return 1.0 / h;
}

namespace detail {

// sup_{y >= 1} |(1/k) #{Z_i > y Z_(k+1)} - y^{-alpha}|, exact: both one-sided
// limits at every jump y = distinct value / threshold, plus y = 1.
inline double ks_sup(const SortedSample& s, std::int64_t k, std::size_t threshold_idx,
                     double alpha) {
    const auto& dv = s.distinct();
    const double v = dv[threshold_idx].value;
    const double kd = static_cast<double>(k);
    double d = std::abs(static_cast<double>(dv[threshold_idx].count_gt) / kd - 1.0);
    for (std::size_t l = 0; l < threshold_idx; ++l) {
        const double y = dv[l].value / v;
        const double fit = std::pow(y, -alpha);
        d = std::max(d, std::abs(static_cast<double>(dv[l].count_gt) / kd - fit));
        d = std::max(d, std::abs(static_cast<double>(dv[l].count_ge) / kd - fit));
    }
    return d;
}

} // namespace detail

inline double ks_distance(const SortedSample& s, std::int64_t k) {
    const double a = alpha_hat(s, k);
    return detail::ks_sup(s, k, s.distinct_index(k + 1), a);
}

struct TailFit {
    std::int64_t k_star = 0;
    double alpha_hat = 0.0;
    double d_min = 0.0;
    std::vector<std::int64_t> scanned_k;
    std::vector<double> d_curve;   // d_k at each scanned k
    std::vector<double> h_curve;   // H_k at each scanned k
};

// Minimum-distance threshold selection: scan the k in [k_min, n-1] at which
// the threshold Z_(k+1) changes value (one k per distinct threshold, all
// data strictly above it), pick k* = argmin d_k with ties broken toward the
// smallest k, and estimate alpha at k*.
inline TailFit min_distance_select(const SortedSample& s, std::int64_t k_min = 5) {
    const std::int64_t n = s.size();
    if (k_min < 1) throw std::invalid_argument("min_distance_select: k_min must be >= 1");
    const auto& dv = s.distinct();
    TailFit fit;
    fit.d_min = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j < dv.size(); ++j) {
        const std::int64_t k = dv[j].count_gt;
        if (k < k_min || k > n - 1) continue;
        const double h = s.sum_log_top(k) / static_cast<double>(k) - std::log(dv[j].value);
        if (!(h > 0.0)) continue;
        const double a = 1.0 / h;
        const double d = detail::ks_sup(s, k, j, a);
        fit.scanned_k.push_back(k);
        fit.d_curve.push_back(d);
        fit.h_curve.push_back(h);
        if (d < fit.d_min) {
            fit.d_min = d;
            fit.k_star = k;
            fit.alpha_hat = a;
        }
    }
    if (fit.scanned_k.empty())
        throw std::invalid_argument("min_distance_select: no scannable threshold");
    return fit;
}

// tail empirical measure at y: (1/k_n) #{Z_i > y Z_(k_n)}
inline double tail_empirical(const SortedSample& s, std::int64_t k_n, double y) {
    if (k_n < 1 || k_n > s.size() - 1)
        throw std::invalid_argument("tail_empirical: k_n must be in [1, n-1]");
    if (!(y > 0.0)) throw std::invalid_argument("tail_empirical: y must be > 0");
    const double cut = y * s.order_stat(k_n);
    const auto& vals = s.values();
    // first element <= cut in the descending order; everything before it is > cut
    const auto it = std::lower_bound(vals.begin(), vals.end(), cut, std::greater<double>());
    return static_cast<double>(it - vals.begin()) / static_cast<double>(k_n);
}

// scaling function b(x) = (Gamma(3+2d)/Gamma(1+d))^{1/(2+d)} x^{1/(2+d)}
inline double b_scale(double delta, double x) {
    if (delta <= -1.0) throw std::invalid_argument("b_scale: delta must be > -1");
    if (!(x > 0.0)) throw std::invalid_argument("b_scale: x must be > 0");
    const double inv = 1.0 / (2.0 + delta);
    const double lc = std::lgamma(3.0 + 2.0 * delta) - std::lgamma(1.0 + delta);
    return std::exp(inv * lc) * std::pow(x, inv);
}

// default intermediate sequence k_n = ceil(sqrt(n log n))
inline std::int64_t kn_default(std::int64_t n) {
    if (n < 2) throw std::invalid_argument("kn_default: n must be >= 2");
    const double nd = static_cast<double>(n);
    return static_cast<std::int64_t>(std::ceil(std::sqrt(nd * std::log(nd))));
}

} // namespace patail

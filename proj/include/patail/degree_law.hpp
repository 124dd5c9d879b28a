#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "patail/pa_graph.hpp"

namespace patail {

// Limit degree pmf of the linear preferential attachment models,
//   p_k = (2+d) Gamma(k+d) Gamma(3+2d) / (Gamma(k+3+2d) Gamma(1+d)),
// evaluated as a difference of log-Gammas so k up to 1e9 stays finite.
inline double degree_pmf(double delta, std::int64_t k) {
    if (delta <= -1.0) throw std::invalid_argument("degree_pmf: delta must be > -1");
    if (k < 1) throw std::invalid_argument("degree_pmf: k must be >= 1");
    const double kd = static_cast<double>(k);
    const double lg = std::lgamma(kd + delta) + std::lgamma(3.0 + 2.0 * delta)
                    - std::lgamma(kd + 3.0 + 2.0 * delta) - std::lgamma(1.0 + delta);
    return (2.0 + delta) * std::exp(lg);
}

// Complementary cdf p_{>k} = Gamma(k+1+d) Gamma(3+2d) / (Gamma(k+3+2d) Gamma(1+d)),
// with p_{>0} = 1; asymptotic to c k^{-(2+d)}, c = Gamma(3+2d)/Gamma(1+d).
inline double degree_tail(double delta, std::int64_t k) {
    if (delta <= -1.0) throw std::invalid_argument("degree_tail: delta must be > -1");
    if (k < 0) throw std::invalid_argument("degree_tail: k must be >= 0");
    const double kd = static_cast<double>(k);
    const double lg = std::lgamma(kd + 1.0 + delta) + std::lgamma(3.0 + 2.0 * delta)
                    - std::lgamma(kd + 3.0 + 2.0 * delta) - std::lgamma(1.0 + delta);
    return std::exp(lg);
}

// amplitude of the power-law tail asymptote
inline double tail_amplitude(double delta) {
    return std::exp(std::lgamma(3.0 + 2.0 * delta) - std::lgamma(1.0 + delta));
}

struct TheoreticalLaw {
    double delta = 0.0;
    double pmf(std::int64_t k) const { return degree_pmf(delta, k); }
    double tail(std::int64_t k) const { return degree_tail(delta, k); }
    double tail_index() const { return 2.0 + delta; }
};

// Expected tail counts mu_{>k}(m) = E N_{>k}(m), 1 <= m <= n, 0 <= k <= kmax,
// from the exact one-step recursions. Model A:
//   mu_{>k}(m+1) = mu_{>k}(m) + (k+d)/((2+d)m) (mu_{>k-1}(m) - mu_{>k}(m)).
// Model B replaces the denominator by (2+d)m+1+d and adds the self-loop
// birth source (1+d)/((2+d)m+1+d) at k = 1 (a self-loop node is born with
// degree 2, entering N_{>1} immediately). The Model B form is reconstructed
// from the conditional-expectation step and validated against Monte Carlo.
struct ExpectedCounts {
    Model model = Model::A;
    double delta = 0.0;
    std::int64_t n = 1;
    std::int64_t kmax = 1;
    std::vector<double> table;    // (n+1) rows x (kmax+1) cols; row 0 unused
    std::vector<double> p_tail;   // p_{>k}, k = 0..kmax

    double mu(std::int64_t m, std::int64_t k) const {
        if (m < 1 || m > n) throw std::out_of_range("ExpectedCounts: m out of range");
        if (k < 0) return static_cast<double>(m);
        if (k > kmax) throw std::out_of_range("ExpectedCounts: k out of range");
        return table[static_cast<std::size_t>(m) * static_cast<std::size_t>(kmax + 1)
                     + static_cast<std::size_t>(k)];
    }
    double eps(std::int64_t m, std::int64_t k) const {
        return mu(m, k) - static_cast<double>(m) * p_tail[static_cast<std::size_t>(k)];
    }
};

inline ExpectedCounts expected_tail_counts(Model model, double delta, std::int64_t n,
                                           std::int64_t kmax) {
    if (delta <= -1.0) throw std::invalid_argument("expected_tail_counts: delta must be > -1");
    if (n < 1) throw std::invalid_argument("expected_tail_counts: n must be >= 1");
    if (kmax < 1) throw std::invalid_argument("expected_tail_counts: kmax must be >= 1");
    if (static_cast<double>(n + 1) * static_cast<double>(kmax + 1) > 3e8)
        throw std::length_error("expected_tail_counts: table too large");

    ExpectedCounts ec;
    ec.model = model;
    ec.delta = delta;
    ec.n = n;
    ec.kmax = kmax;
    const std::size_t cols = static_cast<std::size_t>(kmax + 1);
    ec.table.assign(static_cast<std::size_t>(n + 1) * cols, 0.0);
    ec.p_tail.resize(cols);
    for (std::int64_t k = 0; k <= kmax; ++k)
        ec.p_tail[static_cast<std::size_t>(k)] = degree_tail(delta, k);

    auto row = [&](std::int64_t m) { return ec.table.data() + static_cast<std::size_t>(m) * cols; };
    double* r1 = row(1);
    r1[0] = 1.0;
    r1[1] = 1.0;                      // the initial node has degree 2
    for (std::int64_t m = 1; m < n; ++m) {
        const double md = static_cast<double>(m);
        const double denom = model == Model::A ? (2.0 + delta) * md
                                               : (2.0 + delta) * md + 1.0 + delta;
        const double* prev = row(m);
        double* next = row(m + 1);
        next[0] = md + 1.0;           // every node has degree >= 1
        for (std::int64_t k = 1; k <= kmax; ++k) {
            const double rate = (static_cast<double>(k) + delta) / denom;
            double v = prev[k] + rate * (prev[k - 1] - prev[k]);
            if (model == Model::B && k == 1) v += (1.0 + delta) / denom;
            next[k] = v;
        }
    }
    return ec;
}

// Concentration diagnostic: max_k |N_{>k}(n) - n p_{>k}| over 0 <= k <= max
// degree (the difference is dominated there; N_{>k} = 0 beyond), plus the
// same maximum normalized by 1 + sqrt(n log n).
struct ConcentrationStat {
    double max_abs_dev = 0.0;
    double normalized = 0.0;
    std::int64_t argmax_k = 0;
};

inline ConcentrationStat concentration_stat(const DegreeCounts& counts, std::int64_t n,
                                            double delta) {
    if (n < 1) throw std::invalid_argument("concentration_stat: n must be >= 1");
    ConcentrationStat cs;
    const double nd = static_cast<double>(n);
    for (std::int64_t k = 0; k <= counts.max_degree(); ++k) {
        const double dev = std::abs(static_cast<double>(counts.n_gt(k)) - nd * degree_tail(delta, k));
        if (dev > cs.max_abs_dev) {
            cs.max_abs_dev = dev;
            cs.argmax_k = k;
        }
    }
    cs.normalized = cs.max_abs_dev / (1.0 + std::sqrt(nd * std::log(nd)));
    return cs;
}

} // namespace patail

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "patail/fenwick.hpp"
#include "patail/pa_graph.hpp"
#include "patail/rng.hpp"

namespace patail {

// Branching times of the aggregate counting process. Model A gaps are
// T_{i+1} - T_i ~ Exp((2+d) i); Model B gaps are Exp((2+d) i + 1 + d),
// because one extra process of weight 1+d runs ahead of each birth.
// T_1 = 0 in both models (and T_0 = 0 for Model B).
struct BranchingTimes {
    Model model = Model::A;
    double delta = 0.0;
    std::vector<double> times;   // times[i-1] = T_i

    std::int64_t n() const { return static_cast<std::int64_t>(times.size()); }
    double terminal() const { return times.back(); }
    // n e^{-(2+d) T_n}
    double scaled_terminal() const {
        return static_cast<double>(n()) * std::exp(-(2.0 + delta) * terminal());
    }
};

inline BranchingTimes simulate_branching_times(Model model, double delta, std::int64_t n,
                                               std::uint64_t seed) {
    if (delta <= -1.0) throw std::invalid_argument("simulate_branching_times: delta must be > -1");
    if (n < 1) throw std::invalid_argument("simulate_branching_times: n must be >= 1");
    BranchingTimes bt;
    bt.model = model;
    bt.delta = delta;
    bt.times.resize(static_cast<std::size_t>(n));
    bt.times[0] = 0.0;
    SplitMix64 rng(seed);
    double t = 0.0;
    for (std::int64_t i = 1; i < n; ++i) {
        const double rate = model == Model::A
                                ? (2.0 + delta) * static_cast<double>(i)
                                : (2.0 + delta) * static_cast<double>(i) + 1.0 + delta;
        t += rng.exponential(rate);
        bt.times[static_cast<std::size_t>(i)] = t;
    }
    return bt;
}

// One run of the competing-exponential embedding: per-node birth processes
// with weights D_i + delta race for the next event; the winner gains a
// degree and a new node is born. The degree vector at step n has the same
// law as the direct graph construction.
struct EmbeddingTrace {
    PaParams params;
    std::vector<std::int64_t> degrees;   // D_i(n)
    std::vector<double> birth_times;     // T_i, birth_times[0] = T_1 = 0
    std::vector<double> start_times;     // process start S_i (A: T_i, B: T_{i-1})
    double terminal_time = 0.0;          // T_n
    double w_hat = 0.0;                  // n e^{-(2+d) T_n}

    // scaled per-node degree D_i e^{-(T_n - S_i)}
    double sigma_hat(std::int64_t i) const {
        return static_cast<double>(degrees[static_cast<std::size_t>(i - 1)])
               * std::exp(-(terminal_time - start_times[static_cast<std::size_t>(i - 1)]));
    }
    double max_scaled_degree() const {
        std::int64_t mx = 0;
        for (auto d : degrees) mx = std::max(mx, d);
        return static_cast<double>(mx)
               / std::pow(static_cast<double>(params.n), 1.0 / (2.0 + params.delta));
    }
};

inline EmbeddingTrace simulate_embedded_degrees(Model model, double delta, std::int64_t n,
                                                std::uint64_t seed) {
    PaParams params{model, delta, n};
    params.validate();

    EmbeddingTrace tr;
    tr.params = params;
    tr.degrees.assign(static_cast<std::size_t>(n), 0);
    tr.birth_times.assign(static_cast<std::size_t>(n), 0.0);
    tr.start_times.assign(static_cast<std::size_t>(n), 0.0);
    tr.degrees[0] = 2;

    WeightIndex weights(delta, n);
    weights.push_node(2);

    SplitMix64 rng(seed);
    double t = 0.0;
    for (std::int64_t m = 1; m < n; ++m) {
        const double existing = weights.total_weight();   // (2+d) m
        const double total = model == Model::A ? existing : existing + 1.0 + delta;
        t += rng.exponential(total);
        if (model == Model::A) {
            const std::int64_t j = weights.find(rng.next_double() * existing);
            tr.degrees[static_cast<std::size_t>(j - 1)] += 1;
            weights.increment_degree(j);
            weights.push_node(1);
            tr.degrees[static_cast<std::size_t>(m)] = 1;
            tr.birth_times[static_cast<std::size_t>(m)] = t;
            tr.start_times[static_cast<std::size_t>(m)] = t;
        } else {
            const double x = rng.next_double() * total;
            // the incoming node's process started at the previous birth
            tr.start_times[static_cast<std::size_t>(m)] =
                tr.birth_times[static_cast<std::size_t>(m - 1)];
            if (x < existing) {
                const std::int64_t j = weights.find(x);
                tr.degrees[static_cast<std::size_t>(j - 1)] += 1;
                weights.increment_degree(j);
                weights.push_node(1);
                tr.degrees[static_cast<std::size_t>(m)] = 1;
            } else {
                weights.push_node(2);
                tr.degrees[static_cast<std::size_t>(m)] = 2;
            }
            tr.birth_times[static_cast<std::size_t>(m)] = t;
        }
    }
    tr.terminal_time = t;
    tr.w_hat = static_cast<double>(n) * std::exp(-(2.0 + delta) * t);
    return tr;
}

// Linear pure birth process sampled through its mixed-Poisson representation
// zeta(t) = 1 + N_0(W (e^{lambda t} - 1)), W ~ Exp(1).
struct BirthProcessSample {
    double lambda = 1.0;
    double t = 0.0;
    std::int64_t count = 1;
    double latent_w = 0.0;
};

inline BirthProcessSample birth_process_mixed_poisson(double lambda, double t,
                                                      std::uint64_t seed) {
    if (!(lambda > 0.0)) throw std::invalid_argument("birth_process_mixed_poisson: lambda must be > 0");
    if (t < 0.0) throw std::invalid_argument("birth_process_mixed_poisson: t must be >= 0");
    SplitMix64 rng(seed);
    BirthProcessSample s;
    s.lambda = lambda;
    s.t = t;
    s.latent_w = rng.exponential();
    s.count = 1 + rng.poisson(s.latent_w * std::expm1(lambda * t));
    return s;
}

// Birth-immigration shot noise: Poisson(theta) immigration times on [0, t],
// each starting an independent pure birth at 1; returns BI(t). For large t,
// e^{-lambda t} BI(t) is approximately Gamma(theta/lambda, 1).
inline std::int64_t bi_shot_noise(double theta, double lambda, double t, std::uint64_t seed) {
    if (theta < 0.0) throw std::invalid_argument("bi_shot_noise: theta must be >= 0");
    if (!(lambda > 0.0)) throw std::invalid_argument("bi_shot_noise: lambda must be > 0");
    if (t < 0.0) throw std::invalid_argument("bi_shot_noise: t must be >= 0");
    if (theta == 0.0) return 0;
    SplitMix64 rng(seed);
    std::int64_t total = 0;
    double tau = rng.exponential(theta);
    while (tau <= t) {
        const double w = rng.exponential();
        total += 1 + rng.poisson(w * std::expm1(lambda * (t - tau)));
        tau += rng.exponential(theta);
    }
    return total;
}

// Hill estimator applied to the points Y_i = e^{-T^A_i}; the telescoped
// closed form is H = (1/k) sum_{l<=k} l (T_{l+1} - T_l), a mean of k iid
// Exp(1)/(2+d) terms, so H -> 1/(2+d).
inline double hill_on_branching_points(const BranchingTimes& bt, std::int64_t k) {
    if (k < 1 || k > bt.n() - 1)
        throw std::invalid_argument("hill_on_branching_points: k must be in [1, n-1]");
    double h = 0.0;
    for (std::int64_t l = 1; l <= k; ++l)
        h += static_cast<double>(l)
             * (bt.times[static_cast<std::size_t>(l)] - bt.times[static_cast<std::size_t>(l - 1)]);
    return h / static_cast<double>(k);
}

inline double hill_on_branching_points(double delta, std::int64_t n, std::int64_t k,
                                       std::uint64_t seed) {
    if (k < 1 || k > n - 1)
        throw std::invalid_argument("hill_on_branching_points: k must be in [1, n-1]");
    return hill_on_branching_points(simulate_branching_times(Model::A, delta, n, seed), k);
}

} // namespace patail

#pragma once

// Independent reference implementations used only by the tests: exact
// enumeration of small-graph degree laws, direct continuous-time Markov
// chain simulation of birth processes, a dense-grid KS supremum, and
// deterministic Pareto samples.

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "patail/pa_graph.hpp"
#include "patail/rng.hpp"

namespace oracles {

using DegreeVector = std::vector<std::int64_t>;
using Law = std::map<DegreeVector, double>;

// Exact degree-vector law after n growth steps, by multiplying the
// attachment probabilities along every branch of the construction tree.
inline Law enumerate_degree_law(patail::Model model, double delta, std::int64_t n) {
    Law law;
    struct Walker {
        patail::Model model;
        double delta;
        std::int64_t n;
        Law* out;
        void step(DegreeVector& d, double prob) {
            const std::int64_t m = static_cast<std::int64_t>(d.size());
            if (m == n) {
                (*out)[d] += prob;
                return;
            }
            const double md = static_cast<double>(m);
            const double denom = model == patail::Model::A
                                     ? (2.0 + delta) * md
                                     : (2.0 + delta) * md + 1.0 + delta;
            for (std::size_t i = 0; i < d.size(); ++i) {
                const double p = (static_cast<double>(d[i]) + delta) / denom;
                d[i] += 1;
                d.push_back(1);
                step(d, prob * p);
                d.pop_back();
                d[i] -= 1;
            }
            if (model == patail::Model::B) {
                d.push_back(2);
                step(d, prob * (1.0 + delta) / denom);
                d.pop_back();
            }
        }
    } walker{model, delta, n, &law};
    DegreeVector d{2};
    walker.step(d, 1.0);
    return law;
}

inline Law to_multiset_law(const Law& law) {
    Law out;
    for (const auto& [vec, p] : law) {
        DegreeVector key = vec;
        std::sort(key.begin(), key.end());
        out[key] += p;
    }
    return out;
}

inline double total_variation(const Law& exact, const Law& empirical) {
    double tv = 0.0;
    for (const auto& [key, p] : exact) {
        const auto it = empirical.find(key);
        tv += std::abs(p - (it == empirical.end() ? 0.0 : it->second));
    }
    for (const auto& [key, p] : empirical)
        if (!exact.count(key)) tv += p;
    return 0.5 * tv;
}

// Direct CTMC simulation of a linear pure birth process started at 1:
// from state i the next jump arrives at rate lambda * i.
inline std::int64_t ctmc_pure_birth(double lambda, double t, patail::SplitMix64& rng) {
    std::int64_t count = 1;
    double s = rng.exponential(lambda * static_cast<double>(count));
    while (s <= t) {
        ++count;
        s += rng.exponential(lambda * static_cast<double>(count));
    }
    return count;
}

// Dense-grid evaluation of sup_{y>=1} |(1/k) #{Z_i > y Z_(k+1)} - y^{-alpha}|.
inline double ks_sup_grid(const std::vector<double>& sorted_desc, std::int64_t k, double alpha,
                          double step = 1e-4) {
    const double v = sorted_desc[static_cast<std::size_t>(k)];
    const double ymax = sorted_desc.front() / v + 10.0 * step;
    double d = 0.0;
    for (double y = 1.0; y <= ymax; y += step) {
        std::int64_t count = 0;
        for (double z : sorted_desc)
            if (z > y * v) ++count;
        d = std::max(d, std::abs(static_cast<double>(count) / static_cast<double>(k)
                                 - std::pow(y, -alpha)));
    }
    return d;
}

// Z_i = (n/i)^{1/alpha}, the exact Pareto(alpha) quantiles, already sorted
// descending.
inline std::vector<double> pareto_quantiles(std::int64_t n, double alpha) {
    std::vector<double> z(static_cast<std::size_t>(n));
    for (std::int64_t i = 1; i <= n; ++i)
        z[static_cast<std::size_t>(i - 1)] =
            std::pow(static_cast<double>(n) / static_cast<double>(i), 1.0 / alpha);
    return z;
}

inline std::vector<double> pareto_iid(std::int64_t n, double alpha, patail::SplitMix64& rng) {
    std::vector<double> z(static_cast<std::size_t>(n));
    for (auto& x : z) x = std::pow(rng.next_double_pos(), -1.0 / alpha);
    return z;
}

} // namespace oracles

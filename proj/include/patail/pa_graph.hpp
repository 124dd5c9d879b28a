#pragma once

#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "patail/fenwick.hpp"
#include "patail/rng.hpp"

namespace patail {

enum class Model { A, B };

inline const char* model_name(Model m) { return m == Model::A ? "A" : "B"; }

struct PaParams {
    Model model = Model::A;
    double delta = 0.0;      // attachment offset, > -1
    std::int64_t n = 1;      // growth steps = final node count = final edge count

    void validate() const {
        if (delta <= -1.0) throw std::invalid_argument("PaParams: delta must be > -1");
        if (n < 1) throw std::invalid_argument("PaParams: n must be >= 1");
    }
};

// Edge t (1-based step) lives at edges[t-1]; edges[0] is the initial self
// loop (1,1). Model A edges are (t, j) with j < t; Model B additionally
// allows self loops (t, t), whose node is born with degree 2.
struct Graph {
    std::int64_t n = 0;
    std::vector<std::pair<std::int64_t, std::int64_t>> edges;
    std::vector<std::int64_t> degrees;   // degrees[i-1] = D_i

    std::int64_t degree_sum() const {
        return std::accumulate(degrees.begin(), degrees.end(), std::int64_t{0});
    }
    std::int64_t max_degree() const {
        std::int64_t m = 0;
        for (auto d : degrees) m = std::max(m, d);
        return m;
    }
};

// Grow a linear preferential attachment graph. Step n -> n+1 attaches the
// new node to node i with probability (D_i + delta) / ((2+delta) n) in
// Model A, and in Model B with probability (D_i + delta) / ((2+delta) n + 1
// + delta) or adds a self loop with the remaining (1+delta) weight. The
// initial graph is one node with a self loop (degree 2) in both models.
// Exactly one uniform draw per growth step, so a run is reproducible from
// (params, seed) alone.
inline Graph grow(const PaParams& params, std::uint64_t seed) {
    params.validate();
    const double delta = params.delta;
    const std::int64_t n = params.n;

    Graph g;
    g.n = n;
    g.edges.reserve(static_cast<std::size_t>(n));
    g.degrees.assign(static_cast<std::size_t>(n), 0);
    g.edges.emplace_back(1, 1);
    g.degrees[0] = 2;

    WeightIndex weights(delta, n);
    weights.push_node(2);

    SplitMix64 rng(seed);
    for (std::int64_t t = 2; t <= n; ++t) {
        const double existing = weights.total_weight();   // (2+delta)*(t-1)
        if (params.model == Model::A) {
            const std::int64_t j = weights.find(rng.next_double() * existing);
            g.edges.emplace_back(t, j);
            g.degrees[static_cast<std::size_t>(j - 1)] += 1;
            weights.increment_degree(j);
            weights.push_node(1);
            g.degrees[static_cast<std::size_t>(t - 1)] = 1;
        } else {
            const double x = rng.next_double() * (existing + 1.0 + delta);
            if (x < existing) {
                const std::int64_t j = weights.find(x);
                g.edges.emplace_back(t, j);
                g.degrees[static_cast<std::size_t>(j - 1)] += 1;
                weights.increment_degree(j);
                weights.push_node(1);
                g.degrees[static_cast<std::size_t>(t - 1)] = 1;
            } else {
                g.edges.emplace_back(t, t);
                weights.push_node(2);
                g.degrees[static_cast<std::size_t>(t - 1)] = 2;
            }
        }
    }
    return g;
}

// Exact next-step attachment distribution for the current state: length n
// for Model A; length n+1 for Model B with the self-loop probability last.
inline std::vector<double> attach_distribution(const Graph& g, const PaParams& params) {
    if (params.delta <= -1.0) throw std::invalid_argument("attach_distribution: delta must be > -1");
    if (g.n < 1 || g.degrees.size() != static_cast<std::size_t>(g.n))
        throw std::invalid_argument("attach_distribution: invalid graph");
    const double delta = params.delta;
    const double nd = static_cast<double>(g.n);
    std::vector<double> probs;
    if (params.model == Model::A) {
        probs.reserve(g.degrees.size());
        const double total = (2.0 + delta) * nd;
        for (auto d : g.degrees) probs.push_back((static_cast<double>(d) + delta) / total);
    } else {
        probs.reserve(g.degrees.size() + 1);
        const double total = (2.0 + delta) * nd + 1.0 + delta;
        for (auto d : g.degrees) probs.push_back((static_cast<double>(d) + delta) / total);
        probs.push_back((1.0 + delta) / total);
    }
    return probs;
}

// Degree counts N_k and tail counts N_{>k} of a realized graph.
// N_{>0} = n and N_{>k} = 0 for k >= max degree.
struct DegreeCounts {
    std::int64_t n = 0;
    std::vector<std::int64_t> count;   // count[k] = N_k, 0 <= k <= max_degree
    std::vector<std::int64_t> tail;    // tail[k] = N_{>k}, same index range

    std::int64_t max_degree() const { return static_cast<std::int64_t>(count.size()) - 1; }
    std::int64_t n_k(std::int64_t k) const {
        return (k >= 0 && k <= max_degree()) ? count[static_cast<std::size_t>(k)] : 0;
    }
    std::int64_t n_gt(std::int64_t k) const {
        if (k < 0) return n;
        return k <= max_degree() ? tail[static_cast<std::size_t>(k)] : 0;
    }
};

inline DegreeCounts degree_counts(std::span<const std::int64_t> degrees) {
    DegreeCounts dc;
    dc.n = static_cast<std::int64_t>(degrees.size());
    std::int64_t maxdeg = 0;
    for (auto d : degrees) {
        if (d < 0) throw std::invalid_argument("degree_counts: negative degree");
        maxdeg = std::max(maxdeg, d);
    }
    dc.count.assign(static_cast<std::size_t>(maxdeg) + 1, 0);
    for (auto d : degrees) ++dc.count[static_cast<std::size_t>(d)];
    dc.tail.assign(dc.count.size(), 0);
    std::int64_t acc = 0;
    for (std::int64_t k = maxdeg; k >= 0; --k) {
        dc.tail[static_cast<std::size_t>(k)] = acc;
        acc += dc.count[static_cast<std::size_t>(k)];
    }
    // N_{>k} for k < 0 is n by convention; tail[0] counts degrees > 0
    return dc;
}

inline DegreeCounts degree_counts(const Graph& g) {
    return degree_counts(std::span<const std::int64_t>(g.degrees));
}

} // namespace patail

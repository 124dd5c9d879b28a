#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <limits>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "patail/bi_embedding.hpp"
#include "patail/pa_graph.hpp"
#include "patail/rng.hpp"
#include "patail/stats.hpp"
#include "patail/tail_estimation.hpp"

namespace patail {

// Run fn(i) for i in [0, count) on `workers` threads. Each index owns its
// output slot, so results are identical for any worker count.
inline void parallel_for_index(std::int64_t count, int workers,
                               const std::function<void(std::int64_t)>& fn) {
    if (workers <= 1 || count <= 1) {
        for (std::int64_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::int64_t i = next.fetch_add(1);
            if (i >= count) return;
            fn(i);
        }
    };
    std::vector<std::thread> pool;
    const int nthreads = static_cast<int>(std::min<std::int64_t>(workers, count));
    pool.reserve(static_cast<std::size_t>(nthreads));
    for (int w = 0; w < nthreads; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

struct ExperimentConfig {
    Model model = Model::B;
    std::vector<double> deltas{0.0};
    std::vector<std::int64_t> edge_counts{10000};
    std::int64_t reps = 100;
    std::uint64_t master_seed = 1;
    std::int64_t k_min = 5;
    std::string out_dir = ".";
    int workers = 1;

    void validate() const {
        if (reps < 1) throw std::invalid_argument("config: reps must be >= 1");
        if (deltas.empty()) throw std::invalid_argument("config: at least one delta");
        if (edge_counts.empty()) throw std::invalid_argument("config: at least one n");
        for (double d : deltas)
            if (d <= -1.0) throw std::invalid_argument("config: delta must be > -1");
        for (auto n : edge_counts)
            if (n < 2) throw std::invalid_argument("config: n must be >= 2");
        if (k_min < 1) throw std::invalid_argument("config: k_min must be >= 1");
        if (workers < 1) throw std::invalid_argument("config: workers must be >= 1");
    }

    std::string canonical() const {
        std::ostringstream os;
        os.precision(17);
        os << "model=" << model_name(model) << '\n';
        os << "delta=";
        for (std::size_t i = 0; i < deltas.size(); ++i) os << (i ? "," : "") << deltas[i];
        os << '\n' << "n=";
        for (std::size_t i = 0; i < edge_counts.size(); ++i) os << (i ? "," : "") << edge_counts[i];
        os << '\n';
        os << "reps=" << reps << '\n';
        os << "seed=" << master_seed << '\n';
        os << "kmin=" << k_min << '\n';
        return os.str();
    }

    std::uint64_t config_hash() const {
        std::uint64_t h = 0xcbf29ce484222325ull;   // FNV-1a over the canonical form
        for (unsigned char c : canonical()) {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        return h;
    }

    static ExperimentConfig parse(std::istream& in);
    static ExperimentConfig from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("config: cannot open " + path);
        return parse(in);
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& s, Parse parse) {
    std::vector<T> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse(item));
    }
    return out;
}

} // namespace detail

inline ExperimentConfig ExperimentConfig::parse(std::istream& in) {
    ExperimentConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string val = detail::trim(line.substr(eq + 1));
        if (key.empty() || val.empty()) continue;
        if (key == "model") {
            if (val == "A" || val == "a") cfg.model = Model::A;
            else if (val == "B" || val == "b") cfg.model = Model::B;
            else throw std::invalid_argument("config: model must be A or B");
        } else if (key == "delta") {
            cfg.deltas = detail::parse_list<double>(val, [](const std::string& s) { return std::stod(s); });
        } else if (key == "n") {
            cfg.edge_counts = detail::parse_list<std::int64_t>(val, [](const std::string& s) { return std::stoll(s); });
        } else if (key == "reps") {
            cfg.reps = std::stoll(val);
        } else if (key == "seed") {
            cfg.master_seed = std::stoull(val);
        } else if (key == "kmin") {
            cfg.k_min = std::stoll(val);
        } else if (key == "outdir") {
            cfg.out_dir = val;
        } else if (key == "workers") {
            cfg.workers = std::stoi(val);
        } else {
            throw std::invalid_argument("config: unknown key '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

struct ReplicationRecord {
    std::int64_t rep = 0;          // index within the cell
    std::uint64_t seed = 0;
    std::int64_t n = 0;
    double delta = 0.0;
    std::int64_t k_star = 0;
    double alpha_hat = std::numeric_limits<double>::quiet_NaN();
    double d_min = std::numeric_limits<double>::quiet_NaN();
    std::int64_t max_degree = 0;
    double wall_ms = 0.0;          // not serialized; records stay byte-stable
    bool failed = false;
};

struct CellSummary {
    Model model = Model::B;
    double delta = 0.0;
    std::int64_t n = 0;
    std::int64_t reps = 0;
    double mean_alpha_hat = std::numeric_limits<double>::quiet_NaN();
    double se = std::numeric_limits<double>::quiet_NaN();
    std::int64_t failures = 0;
};

struct ReplicationResult {
    std::vector<ReplicationRecord> records;   // cell-major, rep order within cell
    std::vector<CellSummary> summary;
    std::int64_t failures = 0;
    std::uint64_t config_hash = 0;
};

// Grow -> degree sample -> minimum-distance fit for every (delta, n) cell,
// reps replications each. The per-rep seed is mix_seed(master, global rep
// index), so any worker count reproduces the sequential records exactly.
// Degenerate-tail failures are recorded and excluded from the cell mean.
inline ReplicationResult replicate(const ExperimentConfig& cfg) {
    cfg.validate();
    const std::int64_t cells =
        static_cast<std::int64_t>(cfg.deltas.size() * cfg.edge_counts.size());
    const std::int64_t total = cells * cfg.reps;

    ReplicationResult result;
    result.config_hash = cfg.config_hash();
    result.records.resize(static_cast<std::size_t>(total));

    parallel_for_index(total, cfg.workers, [&](std::int64_t g) {
        const std::int64_t cell = g / cfg.reps;
        const std::int64_t rep = g % cfg.reps;
        const std::size_t di = static_cast<std::size_t>(cell) / cfg.edge_counts.size();
        const std::size_t ni = static_cast<std::size_t>(cell) % cfg.edge_counts.size();

        ReplicationRecord rec;
        rec.rep = rep;
        rec.seed = mix_seed(cfg.master_seed, static_cast<std::uint64_t>(g));
        rec.delta = cfg.deltas[di];
        rec.n = cfg.edge_counts[ni];

        const auto t0 = std::chrono::steady_clock::now();
        const Graph graph = grow({cfg.model, rec.delta, rec.n}, rec.seed);
        rec.max_degree = graph.max_degree();
        try {
            const SortedSample sample = SortedSample::from_degrees(graph.degrees);
            const TailFit fit = min_distance_select(sample, cfg.k_min);
            rec.k_star = fit.k_star;
            rec.alpha_hat = fit.alpha_hat;
            rec.d_min = fit.d_min;
        } catch (const std::exception&) {
            rec.failed = true;
        }
        rec.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0).count();
        result.records[static_cast<std::size_t>(g)] = rec;
    });

    for (std::int64_t cell = 0; cell < cells; ++cell) {
        CellSummary cs;
        cs.model = cfg.model;
        cs.delta = cfg.deltas[static_cast<std::size_t>(cell) / cfg.edge_counts.size()];
        cs.n = cfg.edge_counts[static_cast<std::size_t>(cell) % cfg.edge_counts.size()];
        cs.reps = cfg.reps;
        std::vector<double> ok;
        ok.reserve(static_cast<std::size_t>(cfg.reps));
        for (std::int64_t r = 0; r < cfg.reps; ++r) {
            const auto& rec = result.records[static_cast<std::size_t>(cell * cfg.reps + r)];
            if (rec.failed) ++cs.failures;
            else ok.push_back(rec.alpha_hat);
        }
        if (!ok.empty()) {
            cs.mean_alpha_hat = mean_of(ok);
            cs.se = standard_error(ok);
        }
        result.failures += cs.failures;
        result.summary.push_back(cs);
    }
    return result;
}

// QQ-plot data for one cell of estimates: sorted values against standard
// normal quantiles at plotting positions (i - 0.5)/R, the standardized
// values, the quartile reference line, and the QQ correlation.
struct QqData {
    std::vector<double> normal_q;
    std::vector<double> sorted_values;
    std::vector<double> standardized;
    double slope = 0.0;        // quartile line on the raw values
    double intercept = 0.0;
    double correlation = 0.0;
    bool degenerate = false;   // zero spread; standardization impossible
};

inline QqData qq_data(std::span<const double> estimates) {
    if (estimates.size() < 10) throw std::invalid_argument("qq_data: need at least 10 records");
    QqData qq;
    const std::size_t r = estimates.size();
    qq.sorted_values.assign(estimates.begin(), estimates.end());
    std::sort(qq.sorted_values.begin(), qq.sorted_values.end());
    qq.normal_q.resize(r);
    for (std::size_t i = 0; i < r; ++i)
        qq.normal_q[i] = normal_quantile((static_cast<double>(i) + 0.5) / static_cast<double>(r));

    const double sd = sample_sd(qq.sorted_values);
    if (sd == 0.0) {
        qq.degenerate = true;
        return qq;
    }
    const double m = mean_of(qq.sorted_values);
    qq.standardized.resize(r);
    for (std::size_t i = 0; i < r; ++i) qq.standardized[i] = (qq.sorted_values[i] - m) / sd;

    auto quantile_at = [&](double p) {
        const double pos = p * static_cast<double>(r - 1);
        const std::size_t lo = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(lo);
        if (lo + 1 >= r) return qq.sorted_values[r - 1];
        return qq.sorted_values[lo] * (1.0 - frac) + qq.sorted_values[lo + 1] * frac;
    };
    const double q1 = quantile_at(0.25), q3 = quantile_at(0.75);
    const double z1 = normal_quantile(0.25), z3 = normal_quantile(0.75);
    qq.slope = (q3 - q1) / (z3 - z1);
    qq.intercept = q1 - qq.slope * z1;
    qq.correlation = pearson_correlation(qq.normal_q, qq.sorted_values);
    return qq;
}

// Mean and standard error of the Hill estimator at k_n = ceil(sqrt(n log n))
// over Model A replications, per (delta, n) cell.
struct ConsistencyCell {
    double delta = 0.0;
    std::int64_t n = 0;
    std::int64_t reps = 0;
    std::int64_t kn = 0;
    double mean_hill = 0.0;
    double se_hill = 0.0;
    double target = 0.0;   // 1/(2+delta)
};

inline std::vector<ConsistencyCell> consistency_sweep(std::span<const double> deltas,
                                                      std::span<const std::int64_t> ns,
                                                      std::int64_t reps,
                                                      std::uint64_t master_seed,
                                                      int workers = 1) {
    if (reps < 1) throw std::invalid_argument("consistency_sweep: reps must be >= 1");
    std::vector<ConsistencyCell> cells;
    std::int64_t cell_index = 0;
    for (double delta : deltas) {
        for (std::int64_t n : ns) {
            ConsistencyCell cc;
            cc.delta = delta;
            cc.n = n;
            cc.reps = reps;
            cc.kn = kn_default(n);
            cc.target = 1.0 / (2.0 + delta);
            std::vector<double> hs(static_cast<std::size_t>(reps));
            const std::int64_t base = cell_index * reps;
            parallel_for_index(reps, workers, [&](std::int64_t r) {
                const std::uint64_t seed =
                    mix_seed(master_seed, static_cast<std::uint64_t>(base + r));
                const Graph g = grow({Model::A, delta, n}, seed);
                const SortedSample sample = SortedSample::from_degrees(g.degrees);
                hs[static_cast<std::size_t>(r)] = hill(sample, cc.kn);
            });
            cc.mean_hill = mean_of(hs);
            cc.se_hill = standard_error(hs);
            cells.push_back(std::move(cc));
            ++cell_index;
        }
    }
    return cells;
}

} // namespace patail

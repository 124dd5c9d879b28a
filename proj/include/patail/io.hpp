#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "patail/degree_law.hpp"
#include "patail/experiments.hpp"
#include "patail/pa_graph.hpp"

namespace patail {

inline std::string format_g(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

inline void write_edges_csv(const Graph& g, std::ostream& os) {
    os << "step,source,target\n";
    for (std::size_t t = 0; t < g.edges.size(); ++t)
        os << (t + 1) << ',' << g.edges[t].first << ',' << g.edges[t].second << '\n';
}

inline void write_degrees(const Graph& g, std::ostream& os) {
    for (auto d : g.degrees) os << d << '\n';
}

inline std::vector<std::int64_t> read_degree_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open degree file " + path);
    std::vector<std::int64_t> degrees;
    std::string line;
    while (std::getline(in, line)) {
        const auto b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        degrees.push_back(std::stoll(line));
    }
    if (degrees.empty()) throw std::runtime_error("degree file is empty: " + path);
    return degrees;
}

inline void write_theory_csv(double delta, std::int64_t kmax, std::ostream& os) {
    os << "k,p_k,p_gt_k\n";
    for (std::int64_t k = 1; k <= kmax; ++k)
        os << k << ',' << format_g(degree_pmf(delta, k)) << ','
           << format_g(degree_tail(delta, k)) << '\n';
}

inline void write_expected_counts_csv(const ExpectedCounts& ec, std::ostream& os) {
    os << "m,k,mu_gt_k,eps_gt_k\n";
    for (std::int64_t m = 1; m <= ec.n; ++m)
        for (std::int64_t k = 0; k <= ec.kmax; ++k)
            os << m << ',' << k << ',' << format_g(ec.mu(m, k)) << ','
               << format_g(ec.eps(m, k)) << '\n';
}

inline void write_records_csv(const ReplicationResult& result, std::ostream& os) {
    os << "rep,seed,n,delta,k_star,alpha_hat,d_min,max_degree\n";
    for (const auto& r : result.records) {
        os << r.rep << ',' << r.seed << ',' << r.n << ',' << format_g(r.delta) << ',';
        if (r.failed) os << ",,,";   // k_star, alpha_hat, d_min left empty
        else os << r.k_star << ',' << format_g(r.alpha_hat) << ',' << format_g(r.d_min) << ',';
        os << r.max_degree << '\n';
    }
}

inline void write_summary_csv(const ReplicationResult& result, std::ostream& os) {
    os << "model,delta,n,reps,mean_alpha_hat,se\n";
    for (const auto& s : result.summary)
        os << model_name(s.model) << ',' << format_g(s.delta) << ',' << s.n << ','
           << (s.reps - s.failures) << ',' << format_g(s.mean_alpha_hat) << ','
           << format_g(s.se) << '\n';
}

inline void write_qq_csv(const QqData& qq, std::ostream& os) {
    os << "# slope=" << format_g(qq.slope) << " intercept=" << format_g(qq.intercept)
       << " corr=" << format_g(qq.correlation) << '\n';
    os << "q_normal,alpha_hat,z\n";
    for (std::size_t i = 0; i < qq.normal_q.size(); ++i) {
        os << format_g(qq.normal_q[i]) << ',' << format_g(qq.sorted_values[i]) << ',';
        if (!qq.degenerate) os << format_g(qq.standardized[i]);
        os << '\n';
    }
}

inline void write_consistency_csv(const std::vector<ConsistencyCell>& cells, std::ostream& os) {
    os << "model,delta,n,reps,kn,mean_hill,se,target\n";
    for (const auto& c : cells)
        os << "A," << format_g(c.delta) << ',' << c.n << ',' << c.reps << ',' << c.kn << ','
           << format_g(c.mean_hill) << ',' << format_g(c.se_hill) << ','
           << format_g(c.target) << '\n';
}

inline void write_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file " + path);
    out << contents;
}

template <typename WriteFn>
void write_file_with(const std::string& path, WriteFn&& fn) {
    std::ostringstream os;
    fn(os);
    write_file(path, os.str());
}

} // namespace patail

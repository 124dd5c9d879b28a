// Command-line front end: network generation, theoretical degree laws,
// tail-index estimation, embedding diagnostics, and the Monte Carlo
// replication harness. Exits nonzero on configuration errors only.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "patail/bi_embedding.hpp"
#include "patail/degree_law.hpp"
#include "patail/experiments.hpp"
#include "patail/io.hpp"
#include "patail/pa_graph.hpp"
#include "patail/tail_estimation.hpp"

namespace {

using namespace patail;

Model parse_model(const std::string& s) {
    if (s == "A" || s == "a") return Model::A;
    if (s == "B" || s == "b") return Model::B;
    throw CLI::ValidationError("--model", "model must be A or B");
}

void emit(const std::string& path, const std::string& contents) {
    if (path.empty() || path == "-") std::cout << contents;
    else write_file(path, contents);
}

std::string cell_tag(Model model, double delta, std::int64_t n) {
    std::ostringstream os;
    os << model_name(model) << "_delta" << format_g(delta) << "_n" << n;
    std::string s = os.str();
    for (auto& c : s)
        if (c == '.') c = 'p';
    return s;
}

int run_generate(Model model, double delta, std::int64_t n, std::uint64_t seed,
                 const std::string& edges_out, const std::string& degrees_out) {
    const Graph g = grow({model, delta, n}, seed);
    if (!edges_out.empty()) {
        std::ostringstream os;
        write_edges_csv(g, os);
        emit(edges_out, os.str());
    }
    std::ostringstream os;
    write_degrees(g, os);
    emit(degrees_out, os.str());
    return 0;
}

int run_theory(Model model, double delta, std::int64_t kmax, const std::string& out,
               std::int64_t expected_n, std::int64_t expected_kmax,
               const std::string& expected_out) {
    std::ostringstream os;
    write_theory_csv(delta, kmax, os);
    emit(out, os.str());
    if (!expected_out.empty()) {
        const ExpectedCounts ec = expected_tail_counts(model, delta, expected_n, expected_kmax);
        std::ostringstream eos;
        write_expected_counts_csv(ec, eos);
        emit(expected_out, eos.str());
    }
    return 0;
}

int run_estimate(const std::string& degrees_path, const std::string& method, std::int64_t k,
                 bool kn_auto, std::int64_t kmin, const std::string& curve_out) {
    const std::vector<std::int64_t> degrees = read_degree_file(degrees_path);
    const SortedSample sample = SortedSample::from_degrees(degrees);
    nlohmann::json out;
    out["n"] = sample.size();
    try {
        if (method == "mindist") {
            const TailFit fit = min_distance_select(sample, kmin);
            out["k"] = fit.k_star;
            out["alpha_hat"] = fit.alpha_hat;
            out["d_k"] = fit.d_min;
            if (!curve_out.empty()) {
                std::ostringstream os;
                os << "k,h_k,d_k\n";
                for (std::size_t i = 0; i < fit.scanned_k.size(); ++i)
                    os << fit.scanned_k[i] << ',' << format_g(fit.h_curve[i]) << ','
                       << format_g(fit.d_curve[i]) << '\n';
                emit(curve_out, os.str());
            }
        } else {
            const std::int64_t kk = kn_auto ? kn_default(sample.size()) : k;
            if (kk < 1) throw CLI::ValidationError("--k", "hill method needs --k or --kn-auto");
            out["k"] = kk;
            out["alpha_hat"] = alpha_hat(sample, kk);
            out["d_k"] = ks_distance(sample, kk);
        }
    } catch (const DegenerateTail&) {
        out["error"] = "degenerate tail";
    }
    std::cout << out.dump(2) << '\n';
    return 0;
}

int run_embed(Model model, double delta, std::int64_t n, std::int64_t reps, std::uint64_t seed,
              int workers, const std::string& out) {
    std::vector<EmbeddingTrace> traces(static_cast<std::size_t>(reps));
    parallel_for_index(reps, workers, [&](std::int64_t r) {
        traces[static_cast<std::size_t>(r)] =
            simulate_embedded_degrees(model, delta, n, mix_seed(seed, static_cast<std::uint64_t>(r)));
    });
    std::ostringstream os;
    os << "rep,T_n,w_hat,sigma_hat_1,max_scaled_degree\n";
    for (std::int64_t r = 0; r < reps; ++r) {
        const auto& tr = traces[static_cast<std::size_t>(r)];
        os << r << ',' << format_g(tr.terminal_time) << ',' << format_g(tr.w_hat) << ','
           << format_g(tr.sigma_hat(1)) << ',' << format_g(tr.max_scaled_degree()) << '\n';
    }
    emit(out, os.str());
    return 0;
}

int run_replicate(const std::string& config_path) {
    const ExperimentConfig cfg = ExperimentConfig::from_file(config_path);
    std::filesystem::create_directories(cfg.out_dir);
    const ReplicationResult result = replicate(cfg);

    const auto path = [&](const std::string& name) {
        return (std::filesystem::path(cfg.out_dir) / name).string();
    };
    write_file_with(path("records.csv"), [&](std::ostream& os) { write_records_csv(result, os); });
    write_file_with(path("summary.csv"), [&](std::ostream& os) { write_summary_csv(result, os); });
    {
        std::ostringstream os;
        os << cfg.canonical() << "hash=" << result.config_hash << '\n';
        write_file(path("config.txt"), os.str());
    }
    for (std::size_t cell = 0; cell < result.summary.size(); ++cell) {
        if (cfg.reps < 10) continue;
        const auto& cs = result.summary[cell];
        std::vector<double> estimates;
        for (std::int64_t r = 0; r < cfg.reps; ++r) {
            const auto& rec = result.records[cell * static_cast<std::size_t>(cfg.reps)
                                             + static_cast<std::size_t>(r)];
            if (!rec.failed) estimates.push_back(rec.alpha_hat);
        }
        if (estimates.size() < 10) continue;
        const QqData qq = qq_data(estimates);
        write_file_with(path("qq_" + cell_tag(cs.model, cs.delta, cs.n) + ".csv"),
                        [&](std::ostream& os) { write_qq_csv(qq, os); });
    }

    std::ostringstream os;
    write_summary_csv(result, os);
    std::cout << os.str();
    if (result.failures > 0)
        std::cout << "# excluded degenerate-tail failures: " << result.failures << '\n';
    return 0;
}

int run_consistency(const std::vector<double>& deltas, const std::vector<std::int64_t>& ns,
                    std::int64_t reps, std::uint64_t seed, int workers, const std::string& out) {
    const auto cells = consistency_sweep(deltas, ns, reps, seed, workers);
    std::ostringstream os;
    write_consistency_csv(cells, os);
    emit(out, os.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"linear preferential attachment networks and heavy-tail estimation"};
    app.require_subcommand(1);

    std::string model_str = "A";
    double delta = 0.0;
    std::int64_t n = 10000;
    std::uint64_t seed = 1;
    std::int64_t reps = 100;
    int workers = 1;

    auto* gen = app.add_subcommand("generate", "grow a network and write edge/degree files");
    std::string edges_out, degrees_out = "-";
    gen->add_option("--model", model_str, "A or B")->capture_default_str();
    gen->add_option("--delta", delta, "attachment offset, > -1")->capture_default_str();
    gen->add_option("--n", n, "growth steps")->capture_default_str();
    gen->add_option("--seed", seed, "random seed")->capture_default_str();
    gen->add_option("--edges-out", edges_out, "edge list CSV (step,source,target)");
    gen->add_option("--degrees-out", degrees_out, "degree file, one integer per line");

    auto* theory = app.add_subcommand("theory", "exact degree-law tables");
    std::int64_t kmax = 100, expected_n = 1000, expected_kmax = 20;
    std::string theory_out = "-", expected_out;
    theory->add_option("--model", model_str, "A or B (for expected counts)")->capture_default_str();
    theory->add_option("--delta", delta, "attachment offset")->capture_default_str();
    theory->add_option("--kmax", kmax, "largest k in the p_k table")->capture_default_str();
    theory->add_option("--out", theory_out, "k,p_k,p_gt_k CSV destination");
    theory->add_option("--expected-n", expected_n, "steps for the mu recursion")->capture_default_str();
    theory->add_option("--expected-kmax", expected_kmax, "largest k in the mu table")->capture_default_str();
    theory->add_option("--expected-out", expected_out, "m,k,mu_gt_k,eps_gt_k CSV destination");

    auto* est = app.add_subcommand("estimate", "tail-index estimation from a degree file");
    std::string degrees_path, method = "mindist", curve_out;
    std::int64_t k = 0, kmin = 5;
    bool kn_auto = false;
    est->add_option("--degrees", degrees_path, "degree file, one integer per line")->required();
    est->add_option("--method", method, "hill or mindist")
        ->check(CLI::IsMember({"hill", "mindist"}))
        ->capture_default_str();
    est->add_option("--k", k, "number of upper order statistics (hill)");
    est->add_flag("--kn-auto", kn_auto, "use k_n = ceil(sqrt(n log n)) (hill)");
    est->add_option("--kmin", kmin, "smallest tail size scanned (mindist)")->capture_default_str();
    est->add_option("--curve-out", curve_out, "CSV of the scanned k,h_k,d_k curve");

    auto* embed = app.add_subcommand("embed", "embedding limit diagnostics");
    std::string embed_out = "-";
    embed->add_option("--model", model_str, "A or B")->capture_default_str();
    embed->add_option("--delta", delta, "attachment offset")->capture_default_str();
    embed->add_option("--n", n, "nodes per trace")->capture_default_str();
    embed->add_option("--reps", reps, "number of traces")->capture_default_str();
    embed->add_option("--seed", seed, "master seed")->capture_default_str();
    embed->add_option("--workers", workers, "worker threads")->capture_default_str();
    embed->add_option("--out", embed_out, "CSV destination");

    auto* repl = app.add_subcommand("replicate", "Monte Carlo replication study from a config file");
    std::string config_path;
    repl->add_option("--config", config_path, "key=value config file")->required();

    auto* cons = app.add_subcommand("consistency", "mean Hill estimate at k_n per (delta, n) cell");
    std::vector<double> cons_deltas{0.0};
    std::vector<std::int64_t> cons_ns{100000};
    std::string cons_out = "-";
    cons->add_option("--delta", cons_deltas, "delta values")->capture_default_str();
    cons->add_option("--n", cons_ns, "network sizes")->capture_default_str();
    cons->add_option("--reps", reps, "replications per cell")->capture_default_str();
    cons->add_option("--seed", seed, "master seed")->capture_default_str();
    cons->add_option("--workers", workers, "worker threads")->capture_default_str();
    cons->add_option("--out", cons_out, "CSV destination");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return run_generate(parse_model(model_str), delta, n, seed, edges_out, degrees_out);
        if (theory->parsed())
            return run_theory(parse_model(model_str), delta, kmax, theory_out, expected_n,
                              expected_kmax, expected_out);
        if (est->parsed())
            return run_estimate(degrees_path, method, k, kn_auto, kmin, curve_out);
        if (embed->parsed())
            return run_embed(parse_model(model_str), delta, n, reps, seed, workers, embed_out);
        if (repl->parsed()) return run_replicate(config_path);
        if (cons->parsed())
            return run_consistency(cons_deltas, cons_ns, reps, seed, workers, cons_out);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

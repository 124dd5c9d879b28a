#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "patail/bi_embedding.hpp"
#include "patail/experiments.hpp"
#include "patail/stats.hpp"
#include "patail/tail_estimation.hpp"
#include "oracles.hpp"

using namespace patail;

TEST_CASE("branching time structure", "[bi_embedding]") {
    const BranchingTimes a = simulate_branching_times(Model::A, 0.0, 1000, 17);
    REQUIRE(a.times[0] == 0.0);
    for (std::size_t i = 1; i < a.times.size(); ++i) REQUIRE(a.times[i] > a.times[i - 1]);

    const BranchingTimes b = simulate_branching_times(Model::B, -0.5, 1000, 17);
    REQUIRE(b.times[0] == 0.0);
    for (std::size_t i = 1; i < b.times.size(); ++i) REQUIRE(b.times[i] > b.times[i - 1]);
}

TEST_CASE("first gap has the advertised rate", "[bi_embedding]") {
    const int reps = 100000;
    double acc_a = 0.0, acc_b = 0.0;
    for (int r = 0; r < reps; ++r) {
        const auto seed = mix_seed(21, static_cast<std::uint64_t>(r));
        acc_a += simulate_branching_times(Model::A, 0.0, 2, seed).times[1];
        acc_b += simulate_branching_times(Model::B, 0.0, 2, seed + 1).times[1];
    }
    // Exp(2) and Exp(3) means; 3 standard errors
    REQUIRE(std::abs(acc_a / reps - 0.5) <= 3.0 * 0.5 / std::sqrt(reps));
    REQUIRE(std::abs(acc_b / reps - 1.0 / 3.0) <= 3.0 * (1.0 / 3.0) / std::sqrt(reps));
}

TEST_CASE("model A terminal statistic is asymptotically unit exponential", "[bi_embedding]") {
    const int reps = 5000;
    std::vector<double> w(reps);
    parallel_for_index(reps, 2, [&](std::int64_t r) {
        w[static_cast<std::size_t>(r)] =
            simulate_branching_times(Model::A, 0.0, 2000, mix_seed(3001, static_cast<std::uint64_t>(r)))
                .scaled_terminal();
    });
    const KsResult ks = ks_test(w, [](double x) { return exp_cdf(x); });
    INFO("KS = " << ks.statistic << " p = " << ks.p_value);
    REQUIRE(ks.p_value >= 0.01);
}

TEST_CASE("model B terminal statistic follows the construction's gamma law", "[bi_embedding]") {
    // The gap law Exp((2+d)i + 1+d) telescopes to E[W] = (3+2d)/(2+d) and
    // E[W^2] = (3+2d)(5+3d)/(2+d)^2, the first two moments of
    // Gamma((3+2d)/(2+d), 1); the simulated statistic must agree with both
    // the moments and the full distribution.
    for (double delta : {0.0, 0.5}) {
        const int reps = 5000;
        std::vector<double> w(reps);
        parallel_for_index(reps, 2, [&](std::int64_t r) {
            w[static_cast<std::size_t>(r)] =
                simulate_branching_times(Model::B, delta, 2000,
                                         mix_seed(3700 + static_cast<std::uint64_t>(delta * 10),
                                                  static_cast<std::uint64_t>(r)))
                    .scaled_terminal();
        });
        const double shape = (3.0 + 2.0 * delta) / (2.0 + delta);
        const double m1 = mean_of(w);
        const double se = sample_sd(w) / std::sqrt(static_cast<double>(reps));
        REQUIRE(std::abs(m1 - shape) <= 3.0 * se);

        const KsResult ks = ks_test(w, [&](double x) { return gamma_cdf(shape, x); });
        INFO("delta = " << delta << " KS = " << ks.statistic << " p = " << ks.p_value);
        REQUIRE(ks.p_value >= 0.01);
    }
}

TEST_CASE("embedded dynamics reproduce the exact small-n law", "[bi_embedding]") {
    const auto law = oracles::enumerate_degree_law(Model::A, 0.0, 3);
    const int reps = 100000;
    int heavy = 0;
    for (int r = 0; r < reps; ++r) {
        const EmbeddingTrace tr =
            simulate_embedded_degrees(Model::A, 0.0, 3, mix_seed(52, static_cast<std::uint64_t>(r)));
        if (tr.degrees == std::vector<std::int64_t>({4, 1, 1})) ++heavy;
    }
    const double p = law.at({4, 1, 1});
    const double se = std::sqrt(p * (1.0 - p) / reps);
    REQUIRE(std::abs(static_cast<double>(heavy) / reps - p) <= 3.0 * se);
}

TEST_CASE("embedding trace is internally consistent", "[bi_embedding]") {
    for (Model model : {Model::A, Model::B}) {
        const EmbeddingTrace tr = simulate_embedded_degrees(model, 0.5, 500, 99);
        REQUIRE(tr.degrees.size() == 500);
        std::int64_t sum = 0;
        for (auto d : tr.degrees) sum += d;
        REQUIRE(sum == 2 * 500);
        REQUIRE(tr.birth_times[0] == 0.0);
        for (std::size_t i = 1; i < tr.birth_times.size(); ++i)
            REQUIRE(tr.birth_times[i] > tr.birth_times[i - 1]);   // exactly one event per gap
        REQUIRE(tr.terminal_time == tr.birth_times.back());
        REQUIRE(tr.w_hat == Catch::Approx(500.0 * std::exp(-2.5 * tr.terminal_time)));
        if (model == Model::A) {
            for (std::size_t i = 0; i < tr.start_times.size(); ++i)
                REQUIRE(tr.start_times[i] == tr.birth_times[i]);
        } else {
            REQUIRE(tr.start_times[0] == 0.0);
            REQUIRE(tr.start_times[1] == 0.0);
            for (std::size_t i = 1; i < tr.start_times.size(); ++i)
                REQUIRE(tr.start_times[i] == tr.birth_times[i - 1]);
        }
        REQUIRE(tr.sigma_hat(1) == Catch::Approx(static_cast<double>(tr.degrees[0])
                                                 * std::exp(-tr.terminal_time)));
    }
}

TEST_CASE("first-node scaled degree approaches Gamma(2+delta, 1)", "[bi_embedding]") {
    const int reps = 4000;
    const std::int64_t n = 10000;
    std::vector<double> sigma(reps);
    parallel_for_index(reps, 2, [&](std::int64_t r) {
        const EmbeddingTrace tr =
            simulate_embedded_degrees(Model::A, 0.0, n, mix_seed(61, static_cast<std::uint64_t>(r)));
        sigma[static_cast<std::size_t>(r)] = tr.sigma_hat(1);
    });
    const KsResult ks = ks_test(sigma, [](double x) { return gamma_cdf(2.0, x); });
    INFO("KS = " << ks.statistic << " p = " << ks.p_value);
    REQUIRE(ks.p_value >= 0.01);
}

TEST_CASE("max scaled degree is the composed limit statistic", "[bi_embedding]") {
    // algebraic identity on any trace:
    // max_i sigma_hat_i e^{-S_i} / w_hat^{1/(2+d)} = max_i D_i / n^{1/(2+d)}
    for (Model model : {Model::A, Model::B}) {
        const EmbeddingTrace tr = simulate_embedded_degrees(model, 0.0, 2000, 12345);
        double composed = 0.0;
        for (std::int64_t i = 1; i <= 2000; ++i)
            composed = std::max(composed,
                                tr.sigma_hat(i)
                                    * std::exp(-tr.start_times[static_cast<std::size_t>(i - 1)])
                                    / std::pow(tr.w_hat, 1.0 / (2.0 + tr.params.delta)));
        REQUIRE(composed == Catch::Approx(tr.max_scaled_degree()).epsilon(1e-12));
    }

    // distributional stability of the max across n (two-sample KS)
    const int reps = 3000;
    std::vector<double> small(reps), large(reps);
    parallel_for_index(reps, 2, [&](std::int64_t r) {
        small[static_cast<std::size_t>(r)] =
            simulate_embedded_degrees(Model::A, 0.0, 2000, mix_seed(710, static_cast<std::uint64_t>(r)))
                .max_scaled_degree();
        large[static_cast<std::size_t>(r)] =
            simulate_embedded_degrees(Model::A, 0.0, 6000, mix_seed(711, static_cast<std::uint64_t>(r)))
                .max_scaled_degree();
    });
    const KsResult ks = ks_test_two_sample(small, large);
    INFO("KS = " << ks.statistic << " p = " << ks.p_value);
    REQUIRE(ks.p_value >= 0.01);
}

TEST_CASE("mixed-Poisson birth process", "[bi_embedding]") {
    REQUIRE(birth_process_mixed_poisson(1.0, 0.0, 5).count == 1);

    const int reps = 100000;
    double acc = 0.0;
    std::vector<double> mixed(reps), direct(reps);
    for (int r = 0; r < reps; ++r) {
        const auto s = birth_process_mixed_poisson(1.0, 2.0, mix_seed(81, static_cast<std::uint64_t>(r)));
        acc += static_cast<double>(s.count);
        mixed[static_cast<std::size_t>(r)] = static_cast<double>(s.count);
    }
    // E zeta(t) = e^{lambda t}; the sd of zeta(2) is sqrt(e^4 - e^2)
    const double sd = std::sqrt(std::exp(4.0) - std::exp(2.0));
    REQUIRE(std::abs(acc / reps - std::exp(2.0)) <= 3.0 * sd / std::sqrt(reps));

    SplitMix64 rng(4242);
    for (int r = 0; r < reps; ++r)
        direct[static_cast<std::size_t>(r)] =
            static_cast<double>(oracles::ctmc_pure_birth(1.0, 2.0, rng));
    const KsResult ks = ks_test_two_sample(mixed, direct);
    INFO("KS = " << ks.statistic << " p = " << ks.p_value);
    REQUIRE(ks.p_value >= 0.01);
}

TEST_CASE("shot noise limit laws", "[bi_embedding]") {
    REQUIRE(bi_shot_noise(0.0, 1.0, 8.0, 7) == 0);
    REQUIRE(bi_shot_noise(0.0, 1.0, 100.0, 7) == 0);

    const int reps = 4000;
    const double t = 8.0;
    for (double theta : {1.0, 2.0}) {
        std::vector<double> scaled(reps);
        parallel_for_index(reps, 2, [&](std::int64_t r) {
            const std::int64_t c = bi_shot_noise(theta, 1.0, t,
                                                 mix_seed(9000 + static_cast<std::uint64_t>(theta),
                                                          static_cast<std::uint64_t>(r)));
            scaled[static_cast<std::size_t>(r)] = std::exp(-t) * static_cast<double>(c);
        });
        const KsResult ks = ks_test(scaled, [&](double x) { return gamma_cdf(theta, x); });
        INFO("theta = " << theta << " KS = " << ks.statistic << " p = " << ks.p_value);
        REQUIRE(ks.p_value >= 0.01);
    }
}

TEST_CASE("hill on branching points", "[bi_embedding]") {
    // closed form equals the order-statistic evaluation on Y_i = e^{-T_i}
    const BranchingTimes bt = simulate_branching_times(Model::A, 0.0, 500, 3);
    std::vector<double> y(bt.times.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = std::exp(-bt.times[i]);
    const SortedSample s(std::move(y));
    for (std::int64_t k : {1, 7, 100, 499})
        REQUIRE(std::abs(hill_on_branching_points(bt, k) - hill(s, k)) <= 1e-10);

    REQUIRE(std::abs(hill_on_branching_points(0.0, 10001, 10000, 71) - 0.5) <= 0.03 * 0.5);
    REQUIRE(std::abs(hill_on_branching_points(1.0, 10001, 10000, 72) - 1.0 / 3.0)
            <= 0.03 * (1.0 / 3.0));
}

TEST_CASE("hill on branching points: spread halves per hundredfold k", "[bi_embedding]") {
    const int reps = 2000;
    std::vector<double> h_small(reps), h_large(reps);
    parallel_for_index(reps, 2, [&](std::int64_t r) {
        h_small[static_cast<std::size_t>(r)] =
            hill_on_branching_points(0.0, 101, 100, mix_seed(1200, static_cast<std::uint64_t>(r)));
        h_large[static_cast<std::size_t>(r)] =
            hill_on_branching_points(0.0, 10001, 10000, mix_seed(1201, static_cast<std::uint64_t>(r)));
    });
    const double ratio = sample_sd(h_small) / sample_sd(h_large);
    INFO("sd ratio = " << ratio);
    REQUIRE(ratio >= 8.0);
    REQUIRE(ratio <= 12.0);
}

TEST_CASE("poisson sampler moments", "[bi_embedding]") {
    SplitMix64 rng(2718);
    for (double mean : {3.0, 50.0}) {
        const int reps = 200000;
        double s1 = 0.0, s2 = 0.0;
        for (int r = 0; r < reps; ++r) {
            const double x = static_cast<double>(rng.poisson(mean));
            s1 += x;
            s2 += x * x;
        }
        const double m = s1 / reps;
        const double v = s2 / reps - m * m;
        REQUIRE(std::abs(m - mean) <= 4.0 * std::sqrt(mean / reps));
        REQUIRE(v == Catch::Approx(mean).epsilon(0.05));
    }
}

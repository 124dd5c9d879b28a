#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>

namespace patail {

// SplitMix64 (Steele, Lea & Flood 2014). One 64-bit output per step; the
// whole toolkit draws from this stream so runs are reproducible bit for bit
// from a single seed, independent of the standard library.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform on [0,1), 53 random bits
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    // uniform on (0,1]
    double next_double_pos() {
        return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1.0p-53;
    }

    double exponential(double rate = 1.0) {
        return -std::log(next_double_pos()) / rate;
    }

    // Box-Muller; two uniforms per call, no cached spare
    double normal() {
        double r = std::sqrt(-2.0 * std::log(next_double_pos()));
        double theta = 6.283185307179586476925286766559 * next_double();
        return r * std::cos(theta);
    }

    std::int64_t poisson(double mean) {
        if (mean <= 0.0) return 0;
        return mean < 10.0 ? poisson_inversion(mean) : poisson_ptrd(mean);
    }

private:
    std::uint64_t state_;

    std::int64_t poisson_inversion(double mean) {
        double p = std::exp(-mean);
        double cum = p;
        double u = next_double();
        std::int64_t k = 0;
        while (u > cum && k < 1024) {
            ++k;
            p *= mean / static_cast<double>(k);
            cum += p;
        }
        return k;
    }

    // Hoermann (1993), transformed rejection with squeeze; valid for mean >= 10
    std::int64_t poisson_ptrd(double mean) {
        const double smu = std::sqrt(mean);
        const double b = 0.931 + 2.53 * smu;
        const double a = -0.059 + 0.02483 * b;
        const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
        const double v_r = 0.9277 - 3.6224 / (b - 2.0);
        const double log_mu = std::log(mean);
        for (;;) {
            double u = next_double() - 0.5;
            double v = next_double();
            double us = 0.5 - std::abs(u);
            double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
            if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(kf);
            if (kf < 0.0 || (us < 0.013 && v > us)) continue;
            if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
                kf * log_mu - mean - std::lgamma(kf + 1.0))
                return static_cast<std::int64_t>(kf);
        }
    }
};

// Per-replication seed fan-out: the (index+1)-th output of a SplitMix64
// stream started at `master`. Distinct indices give independent streams.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t index) {
    SplitMix64 g(master + index * 0x9e3779b97f4a7c15ull);
    return g.next_u64();
}

} // namespace patail

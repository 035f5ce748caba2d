#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace qig {

// Deterministic generator with explicit state, passed by value.
// Gaussian variates use Box-Muller over mt19937_64 uniforms so streams
// are reproducible independent of the standard library's distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // uniform in [0, 1)
    double uniform() {
        return (engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform();
    }

    // log-uniform in [lo, hi], both positive
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        while (u1 <= 0.0)
            u1 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::uint64_t next_u64() { return engine_(); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// splitmix64 finalizer, used to mix seed material
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Derives a stream seed from a master seed and coordinate tags so every
// (suite, n, kappa, spec, trial) cell gets an independent deterministic stream.
inline std::uint64_t derive_seed(std::uint64_t master) { return mix64(master); }

template <typename... Tags>
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag, Tags... rest) {
    return derive_seed(mix64(master ^ mix64(tag)), rest...);
}

} // namespace qig

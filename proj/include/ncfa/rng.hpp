#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <initializer_list>

namespace ncfa {

// splitmix64, used for seeding and for deriving sub-streams.
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Stream-split rule: fold each label (kind, K, n, trial, ...) into the seed
// through splitmix64. Every sampled object documents which labels it folds.
inline std::uint64_t derive_stream(std::uint64_t seed, std::initializer_list<std::uint64_t> labels) {
    std::uint64_t s = seed;
    for (std::uint64_t v : labels) {
        s ^= v + 0x9e3779b97f4a7c15ull + (s << 6) + (s >> 2);
        std::uint64_t t = s;
        s = splitmix64_next(t);
    }
    return s;
}

// xoshiro256** seeded through splitmix64. Uniforms take the top 53 bits;
// Gaussians are a fixed Box-Muller transform of one uniform pair, so every
// draw consumes a fixed number of raw words and runs are bit-reproducible.
class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t s = seed;
        for (auto& w : state_) w = splitmix64_next(s);
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // uniform on [0,1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // index in [0, n)
    std::uint64_t uniform_index(std::uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

    double gaussian() {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1 + 1e-300));
        return r * std::cos(6.283185307179586476925286766559 * u2);
    }

    std::complex<double> complex_gaussian() {
        const double re = gaussian();
        const double im = gaussian();
        return {re, im};
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t state_[4];
};

}  // namespace ncfa

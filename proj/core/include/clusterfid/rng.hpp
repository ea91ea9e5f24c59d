#pragma once

#include <cmath>
#include <cstdint>

namespace cfid {

// splitmix64; used to expand seeds and derive per-sample streams.
inline uint64_t splitmix64_next(uint64_t& s) {
    uint64_t z = (s += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// xoshiro256** with hand-rolled double/normal conversion. <random>
// distributions are implementation-defined, which would break the
// byte-identical-output contract, so everything is spelled out here.
class Rng {
  public:
    explicit Rng(uint64_t seed) {
        uint64_t s = seed;
        for (auto& w : s_) w = splitmix64_next(s);
    }

    uint64_t next() {
        const uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0,1) with 53 random mantissa bits.
    double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // One N(0, sigma) draw via Box-Muller; consumes two uniforms.
    double normal(double sigma) {
        constexpr double two_pi = 2.0 * 3.14159265358979323846264338327950288;
        const double u1 = 1.0 - uniform01();  // (0,1], keeps the log finite
        const double u2 = uniform01();
        return sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
    }

  private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    uint64_t s_[4]{};
};

// Stream for sample `index` under `master`; aggregation order never matters.
inline uint64_t derive_seed(uint64_t master, uint64_t index) {
    uint64_t s = master ^ (0x9e3779b97f4a7c15ull * (index + 1));
    return splitmix64_next(s);
}

}  // namespace cfid

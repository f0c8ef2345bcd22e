#pragma once

// Deterministic splittable randomness. Every experiment derives all of its
// random draws from one 64-bit seed; independent substreams are obtained by
// hashing a label into the seed, so adding a consumer never perturbs the
// draws seen by existing consumers. Output is identical across platforms
// (no std::distribution involved).

#include <cmath>
#include <cstdint>
#include <string_view>

#include "zygwave/common.hpp"

namespace zyg {

// SplitMix64: tiny, well-distributed 64-bit stream.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0,1) with 53 bits of mantissa.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Standard normal via Box-Muller on the uniform stream.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform01();
        double u2 = uniform01();
        while (u1 <= 0x1.0p-60) u1 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = kTwoPi * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    cplx normal_cplx() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

  private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// FNV-1a over the label, folded into the master seed. Distinct labels give
// statistically independent SplitMix64 streams.
inline std::uint64_t substream_seed(std::uint64_t master, std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : label) {
        h ^= static_cast<std::uint64_t>(static_cast<unsigned char>(c));
        h *= 0x100000001b3ULL;
    }
    return master ^ h;
}

inline Rng substream(std::uint64_t master, std::string_view label) {
    return Rng(substream_seed(master, label));
}

}  // namespace zyg

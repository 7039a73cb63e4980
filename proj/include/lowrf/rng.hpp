// Deterministic counter-friendly RNG for the simulation oracle. SplitMix64
// serves both as the child-seed mixing function and as the per-trial stream;
// normal variates use Box-Muller on 53-bit uniforms so the transform is
// pinned and reproducible.

#pragma once

#include <cmath>
#include <cstdint>

namespace lowrf {

class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1) with 53 random bits
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // standard normal pair via Box-Muller; u1 mapped into (0, 1]
    void next_normal_pair(double& a, double& b) {
        const double u1 = 1.0 - next_unit();
        const double u2 = next_unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * 3.14159265358979323846 * u2;
        a = r * std::cos(t);
        b = r * std::sin(t);
    }

  private:
    std::uint64_t state_;
};

// Fixed 64-bit mixing of (master_seed, trial index); trial streams depend
// only on these two values, never on execution order.
inline std::uint64_t child_seed(std::uint64_t master_seed, std::uint64_t index) {
    SplitMix64 mix(index + 0x9E3779B97F4A7C15ULL);
    return SplitMix64(master_seed ^ mix.next()).next();
}

}  // namespace lowrf

#pragma once

#include <cmath>
#include <cstdint>
#include <utility>

namespace ipt {

// Counter-based generator: SplitMix64 with substreams addressed by
// (seed, index). Substream states are produced by finalizing the seed,
// adding index times the golden-ratio increment, and finalizing again,
// so distinct indices can never collide for a fixed seed.
class SplitMix64 {
public:
    static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

    static constexpr std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    explicit constexpr SplitMix64(std::uint64_t state) : state_(state) {}

    static constexpr SplitMix64 stream(std::uint64_t seed, std::uint64_t index) {
        return SplitMix64(mix(mix(seed) + index * kGamma));
    }

    constexpr std::uint64_t next() {
        state_ += kGamma;
        return mix(state_);
    }

    // uniform on the open interval (0,1): (k + 1/2) / 2^53
    double uniform() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

    // Box-Muller pair of independent standard normals
    std::pair<double, double> normal_pair() {
        const double u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double t = 2.0 * 3.14159265358979323846 * u2;
        return {r * std::cos(t), r * std::sin(t)};
    }

private:
    std::uint64_t state_;
};

}  // namespace ipt

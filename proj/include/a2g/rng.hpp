#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace a2g {

std::uint64_t splitmix64(std::uint64_t& state);

/// Stateless mix of (seed, stream) into one 64-bit word. Used to derive
/// per-batch generator seeds, so a batch's stream never depends on which
/// worker ran it.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

/// xoshiro256** seeded through splitmix64. Satisfies UniformRandomBitGenerator.
class Rng {
public:
    using result_type = std::uint64_t;

    Rng(std::uint64_t seed, std::uint64_t stream);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()();

    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform();
    double normal();
    /// Exponential(1).
    double exponential();

private:
    std::uint64_t s_[4];
    std::normal_distribution<double> normal_{0.0, 1.0};
};

} // namespace a2g

#pragma once

#include "a2g/scenario.hpp"

#include <cstdint>

namespace a2g {

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n_samples = 0;
    std::uint64_t seed = 0;
};

/// Samples are drawn in fixed batches of this size; batch b always uses the
/// stream derived from (seed, b), whichever worker runs it.
inline constexpr std::uint64_t kMcBatch = 1u << 16;

/// Worker count used when a call passes workers = 0. Starts at
/// std::thread::hardware_concurrency().
void set_default_workers(int workers);
int default_workers();

McEstimate mc_expected_min_dep(const Scenario& s, const NodePosition& uav, double p_a, Mode mode,
                               std::uint64_t n, std::uint64_t seed, int workers = 0);

McEstimate mc_outage(const Scenario& s, const NodePosition& uav, double p_a, double gamma_th, Mode mode,
                     std::uint64_t n, std::uint64_t seed, int workers = 0);

/// Mean of W log2(1 + SNR) at Bob, bit/s.
McEstimate mc_ergodic_capacity(const Scenario& s, const NodePosition& uav, double p_a, Mode mode,
                               std::uint64_t n, std::uint64_t seed, int workers = 0);

struct RadiometerEstimate {
    double min_dep = 1.0;      // empirical min over thresholds of FA + MD
    double tau = 0.0;          // threshold achieving it
    std::uint64_t trials = 0;  // per hypothesis
    int channel_uses = 0;
};

/// Finite-N radiometer for a fixed received power k_a: simulates the
/// averaged energy statistic under H0 and H1 (noise power redrawn per
/// trial), then minimizes the empirical FA + MD over every sample
/// threshold. Slow; used to check the N -> infinity closed form.
RadiometerEstimate mc_radiometer_min_dep(double k_a, const NoiseModel& n, int channel_uses,
                                         std::uint64_t trials, std::uint64_t seed);

} // namespace a2g

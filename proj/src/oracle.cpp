#include "a2g/oracle.hpp"

#include "a2g/channel.hpp"
#include "a2g/detection.hpp"
#include "a2g/links.hpp"
#include "a2g/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

namespace a2g {
namespace {

std::atomic<int> g_workers{0};

struct Welford {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }
};

// Chan et al. pairwise combination
Welford merge(const Welford& a, const Welford& b) {
    if (a.n == 0) return b;
    if (b.n == 0) return a;
    Welford r;
    r.n = a.n + b.n;
    const double na = static_cast<double>(a.n), nb = static_cast<double>(b.n), n = static_cast<double>(r.n);
    const double d = b.mean - a.mean;
    r.mean = a.mean + d * nb / n;
    r.m2 = a.m2 + b.m2 + d * d * na * nb / n;
    return r;
}

// Tree reduction over [lo, hi); its shape depends only on the batch count.
Welford reduce(const std::vector<Welford>& parts, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return parts[lo];
    const std::size_t mid = lo + (hi - lo) / 2;
    return merge(reduce(parts, lo, mid), reduce(parts, mid, hi));
}

template <class Draw>
McEstimate run(std::uint64_t n, std::uint64_t seed, int workers, const Draw& draw) {
    if (n == 0) throw std::invalid_argument("Monte Carlo needs at least one sample");
    const std::uint64_t batches = (n + kMcBatch - 1) / kMcBatch;
    std::vector<Welford> parts(batches);

    auto run_batch = [&](std::uint64_t b) {
        const std::uint64_t count = std::min(kMcBatch, n - b * kMcBatch);
        Rng rng(seed, b);
        Welford w;
        for (std::uint64_t i = 0; i < count; ++i) w.add(draw(rng));
        parts[b] = w;
    };

    const int w = static_cast<int>(std::min<std::uint64_t>(
        batches, static_cast<std::uint64_t>(workers > 0 ? workers : default_workers())));
    if (w <= 1) {
        for (std::uint64_t b = 0; b < batches; ++b) run_batch(b);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(w);
        for (int t = 0; t < w; ++t) {
            pool.emplace_back([&, t] {
                for (std::uint64_t b = t; b < batches; b += w) run_batch(b);
            });
        }
        for (auto& th : pool) th.join();
    }

    const Welford total = reduce(parts, 0, parts.size());
    McEstimate e;
    e.mean = total.mean;
    e.n_samples = total.n;
    e.seed = seed;
    e.std_error = total.n > 1 ? std::sqrt(total.m2 / static_cast<double>(total.n - 1)) /
                                    std::sqrt(static_cast<double>(total.n))
                              : 0.0;
    return e;
}

// Picks a branch with probability proportional to its weight.
struct BranchPicker {
    std::array<double, 4> cum{};
    int n = 0;

    explicit BranchPicker(const LinkTerms& terms) : n(terms.n) {
        double acc = 0.0;
        for (int i = 0; i < n; ++i) cum[i] = (acc += terms.t[i].weight);
    }

    int pick(Rng& rng) const {
        const double u = rng.uniform() * cum[n - 1];
        for (int i = 0; i < n - 1; ++i)
            if (u < cum[i]) return i;
        return n - 1;
    }
};

double fading_draw(const LinkTerm& t, Mode mode, Rng& rng) {
    return mode == Mode::om ? sample_rician_power(t.k, rng) : sample_nakagami_power(t.s, rng);
}

} // namespace

void set_default_workers(int workers) { g_workers.store(workers); }

int default_workers() {
    const int w = g_workers.load();
    if (w > 0) return w;
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

McEstimate mc_expected_min_dep(const Scenario& s, const NodePosition& uav, double p_a, Mode mode,
                               std::uint64_t n, std::uint64_t seed, int workers) {
    const LinkTerms terms = willie_terms(s, uav, mode);
    const BranchPicker picker(terms);
    const NoiseModel noise = s.noise;
    return run(n, seed, workers, [&](Rng& rng) {
        const LinkTerm& t = terms.t[picker.pick(rng)];
        const double k_a = p_a * t.gain * t.loss * fading_draw(t, mode, rng);
        return min_dep_given_received_power(k_a, noise).p_ew_min;
    });
}

McEstimate mc_outage(const Scenario& s, const NodePosition& uav, double p_a, double gamma_th, Mode mode,
                     std::uint64_t n, std::uint64_t seed, int workers) {
    const LinkTerms terms = bob_terms(s, uav, mode);
    const BranchPicker picker(terms);
    const NoiseModel noise = s.noise;
    return run(n, seed, workers, [&](Rng& rng) {
        const LinkTerm& t = terms.t[picker.pick(rng)];
        const double h = fading_draw(t, mode, rng);
        const double snr = p_a * t.gain * t.loss * h / sample_noise_power(noise, rng);
        return snr < gamma_th ? 1.0 : 0.0;
    });
}

McEstimate mc_ergodic_capacity(const Scenario& s, const NodePosition& uav, double p_a, Mode mode,
                               std::uint64_t n, std::uint64_t seed, int workers) {
    const LinkTerms terms = bob_terms(s, uav, mode);
    const BranchPicker picker(terms);
    const NoiseModel noise = s.noise;
    const double w = band(s, mode).bandwidth_hz;
    return run(n, seed, workers, [&](Rng& rng) {
        const LinkTerm& t = terms.t[picker.pick(rng)];
        const double h = fading_draw(t, mode, rng);
        const double snr = p_a * t.gain * t.loss * h / sample_noise_power(noise, rng);
        return w * std::log2(1.0 + snr);
    });
}

RadiometerEstimate mc_radiometer_min_dep(double k_a, const NoiseModel& n, int channel_uses,
                                         std::uint64_t trials, std::uint64_t seed) {
    if (channel_uses < 1 || trials < 1) throw std::invalid_argument("radiometer needs N >= 1 and trials >= 1");
    // (1/N) sum |y|^2 over N complex Gaussian uses is power * Gamma(N, 1/N)
    std::vector<double> t0(trials), t1(trials);
    Rng rng0(seed, 0), rng1(seed, 1);
    std::gamma_distribution<double> energy(channel_uses, 1.0 / channel_uses);
    for (std::uint64_t i = 0; i < trials; ++i) t0[i] = sample_noise_power(n, rng0) * energy(rng0);
    for (std::uint64_t i = 0; i < trials; ++i) t1[i] = (k_a + sample_noise_power(n, rng1)) * energy(rng1);
    std::sort(t0.begin(), t0.end());
    std::sort(t1.begin(), t1.end());

    // Decide H1 when T > tau. Sweep tau over the merged samples.
    RadiometerEstimate r;
    r.trials = trials;
    r.channel_uses = channel_uses;
    const double m = static_cast<double>(trials);
    std::uint64_t i0 = 0, i1 = 0;  // samples <= tau
    r.min_dep = 1.0;               // tau below everything: FA = 1, MD = 0
    r.tau = std::min(t0.front(), t1.front());
    while (i0 < trials || i1 < trials) {
        const double tau = (i1 >= trials || (i0 < trials && t0[i0] <= t1[i1])) ? t0[i0] : t1[i1];
        while (i0 < trials && t0[i0] <= tau) ++i0;
        while (i1 < trials && t1[i1] <= tau) ++i1;
        const double dep = (m - i0) / m + i1 / m;
        if (dep < r.min_dep) {
            r.min_dep = dep;
            r.tau = tau;
        }
    }
    return r;
}

} // namespace a2g

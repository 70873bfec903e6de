#include "a2g/detection.hpp"

#include "a2g/diagnostics.hpp"
#include "a2g/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace a2g {
namespace {

void require_noise(const NoiseModel& n) {
    if (!(n.rho > 1.0)) throw DetectionError("noise.rho must exceed 1 (a perfect detector has no DEP)");
    if (!(n.sigma_n2 > 0.0)) throw DetectionError("noise.sigma_n2 must be positive");
}

double binom(int n, int r) {
    double c = 1.0;
    for (int i = 1; i <= r; ++i) c = c * (n - r + i) / i;
    return c;
}

double clamp_logged(double v, const char* what) {
    if (v < -1e-12 || v > 1.0 + 1e-12) {
        std::ostringstream os;
        os << what << " clamped from " << v;
        diag::debug(os.str());
    }
    return std::clamp(v, 0.0, 1.0);
}

// Fills cdf / cond_mean / value for one branch at cutoff rho_bar.
void evaluate_branch(DepTerm& d, const LinkTerm& t, Mode mode, const NoiseModel& n, double p_a) {
    const double rx = p_a * t.gain * t.loss;
    d.rho_bar = (n.rho * n.rho - 1.0) * n.sigma_n2 / (n.rho * rx);
    double partial = 0.0;
    if (mode == Mode::om) {
        const auto c = specfun::marcum_mu_nu(std::sqrt(2.0 * t.k));
        const double z = std::exp(c.mu + 0.5 * c.nu * std::log(2.0 * d.rho_bar * (t.k + 1.0)));
        d.cdf = -std::expm1(-z);
        partial = truncated_mean_rician(d.rho_bar, t.k);
    } else {
        d.cdf = nakagami_power_cdf(d.rho_bar, t.s);
        partial = truncated_mean_nakagami(d.rho_bar, t.s);
    }
    // cancellation makes partial / cdf noisy when cdf is tiny; the branch weight is tiny there too
    d.cond_mean = d.cdf > 0.0 ? std::clamp(partial / d.cdf, 0.0, d.rho_bar) : 0.0;
    const double inner = 1.0 - std::log1p(n.rho * rx * d.cond_mean / n.sigma_n2) / (2.0 * std::log(n.rho));
    d.value = d.cdf * inner;
}

} // namespace

DepResult min_dep_given_received_power(double k_a, const NoiseModel& n) {
    require_noise(n);
    if (!(k_a >= 0.0)) throw DetectionError("received power k_a must be >= 0");
    const double s2 = n.sigma_n2;
    const double upper_noise = n.rho * s2;
    const double onset = k_a + s2 / n.rho;
    if (upper_noise < onset) return {upper_noise, onset, 0.0};
    const double p = 1.0 - std::log1p(n.rho * k_a / s2) / (2.0 * std::log(n.rho));
    return {onset, onset, std::clamp(p, 0.0, 1.0)};
}

double truncated_mean_rician(double a, double k) {
    if (!(a >= 0.0)) throw DetectionError("truncated mean needs a >= 0");
    if (a == 0.0) return 0.0;
    const auto c = specfun::marcum_mu_nu(std::sqrt(2.0 * k));
    const double z = std::exp(c.mu + 0.5 * c.nu * std::log(2.0 * a * (k + 1.0)));
    const double head = specfun::lower_inc_gamma(2.0 / c.nu, z) /
                        ((k + 1.0) * c.nu * std::exp(2.0 * c.mu / c.nu));
    return std::max(0.0, head - a * std::exp(-z));
}

double truncated_mean_nakagami(double a, int s) {
    if (!(a >= 0.0)) throw DetectionError("truncated mean needs a >= 0");
    if (a == 0.0) return 0.0;
    const double xi = nakagami_xi(s);
    double sum = 0.0;
    for (int r = 1; r <= s; ++r) {
        const double e = std::exp(-r * xi * a);
        sum += binom(s, r) * ((r % 2) ? -1.0 : 1.0) * (a * e + std::expm1(-r * xi * a) / (r * xi));
    }
    return std::max(0.0, sum);
}

ExpectedDep expected_min_dep(const LinkTerms& willie, const NoiseModel& n, double p_a) {
    require_noise(n);
    if (!(p_a >= 0.0)) throw DetectionError("p_a must be >= 0");
    ExpectedDep out;
    out.mode = willie.mode;
    out.breakdown.reserve(willie.n);
    double total = 0.0;
    for (const LinkTerm& t : willie) {
        DepTerm d;
        d.willie_lobe = t.lobe;
        d.state = t.state;
        d.weight = t.weight;
        if (p_a == 0.0) {
            d.rho_bar = INFINITY;
            d.cdf = 1.0;
            d.value = 1.0;
        } else {
            evaluate_branch(d, t, willie.mode, n, p_a);
        }
        total += d.weight * d.value;
        out.breakdown.push_back(d);
    }
    out.value = clamp_logged(total, "expected DEP");
    return out;
}

ExpectedDep expected_min_dep_om(const Scenario& s, const NodePosition& uav, double p_a) {
    return expected_min_dep(willie_terms(s, uav, Mode::om), s.noise, p_a);
}

ExpectedDep expected_min_dep_dm(const Scenario& s, const NodePosition& uav, double p_a) {
    return expected_min_dep(willie_terms(s, uav, Mode::dm), s.noise, p_a);
}

ExpectedDep expected_min_dep(const Scenario& s, const NodePosition& uav, double p_a, Mode mode) {
    return expected_min_dep(willie_terms(s, uav, mode), s.noise, p_a);
}

} // namespace a2g

#include "a2g/throughput.hpp"

#include "a2g/detection.hpp"
#include "a2g/quadrature.hpp"
#include "a2g/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace a2g {
namespace {

double binom(int n, int r) {
    double c = 1.0;
    for (int i = 1; i <= r; ++i) c = c * (n - r + i) / i;
    return c;
}

// Ei(-u) from ln u. Small u uses Ei(-u) = gamma + ln u - u + O(u^2); huge u underflows to 0.
double ei_neg_from_log(double log_u) {
    if (log_u < -30.0) return specfun::kEulerGamma + log_u - std::exp(log_u);
    if (log_u > 6.62) return 0.0;  // u > 750
    return specfun::exp_integral_ei(-std::exp(log_u));
}

void require_noise(const NoiseModel& n) {
    if (!(n.rho > 1.0)) throw DetectionError("noise.rho must exceed 1");
}

double outage_term(const LinkTerm& t, Mode mode, const NoiseModel& n, double p_a, double gamma_th) {
    const double log_c = std::log(gamma_th) - std::log(p_a * t.gain * t.loss);
    const double hi = std::log(n.rho * n.sigma_n2);
    const double lo = std::log(n.sigma_n2 / n.rho);
    const double lnrho = std::log(n.rho);
    if (mode == Mode::om) {
        const auto c = specfun::marcum_mu_nu(std::sqrt(2.0 * t.k));
        auto f_ei = [&](double log_x) {
            const double log_u = c.mu + 0.5 * c.nu * (std::log(2.0 * (t.k + 1.0)) + log_c + log_x);
            return ei_neg_from_log(log_u) / (c.nu * lnrho);
        };
        return 1.0 - f_ei(hi) + f_ei(lo);
    }
    const double xi = nakagami_xi(t.s);
    double sum = 1.0;
    for (int r = 1; r <= t.s; ++r) {
        const double base = std::log(r * xi) + log_c;
        const double diff = ei_neg_from_log(base + hi) - ei_neg_from_log(base + lo);
        sum += binom(t.s, r) * ((r % 2) ? -1.0 : 1.0) * diff / (2.0 * lnrho);
    }
    return sum;
}

double csc_term(const LinkTerm& t, Mode mode, const NoiseModel& n, double p_a) {
    const double snr_scale = p_a * t.gain * t.loss / n.sigma_n2;
    const double c_lo = snr_scale / n.rho;
    const double c_hi = snr_scale * n.rho;
    std::function<double(double)> f;
    double y_max = 0.0;
    if (mode == Mode::om) {
        const double k = t.k;
        y_max = rician_power_upper(k);
        f = [=](double y) {
            return (specfun::dilog_li2(-c_lo * y) - specfun::dilog_li2(-c_hi * y)) * rician_power_pdf(y, k);
        };
    } else {
        const int s = t.s;
        y_max = gamma_power_upper(s);
        f = [=](double y) {
            return (specfun::dilog_li2(-c_lo * y) - specfun::dilog_li2(-c_hi * y)) * gamma_power_pdf(y, s);
        };
    }
    QuadratureOptions opts;
    opts.abs_tol = 1e-12;
    opts.rel_tol = 1e-10;
    opts.max_intervals = 4000;
    const double bracket = require_converged(integrate_split(f, 0.0, 1.0, y_max, opts), "covert capacity integral");
    // E_sigma[ln(1 + S / sigma^2)] = bracket / (2 ln rho)
    return bracket / (2.0 * std::log(n.rho) * std::numbers::ln2);
}

} // namespace

double snr_threshold(double r_b, double w) {
    if (!(w > 0.0)) throw std::invalid_argument("bandwidth must be positive");
    if (!(r_b >= 0.0)) throw std::invalid_argument("target rate must be >= 0");
    return std::exp2(r_b / w) - 1.0;
}

double outage(const LinkTerms& bob, const NoiseModel& n, double p_a, double gamma_th) {
    require_noise(n);
    if (!(gamma_th > 0.0)) return 0.0;
    if (!(p_a > 0.0)) return 1.0;
    double total = 0.0;
    for (const LinkTerm& t : bob) total += t.weight * std::clamp(outage_term(t, bob.mode, n, p_a, gamma_th), 0.0, 1.0);
    return std::clamp(total, 0.0, 1.0);
}

double outage_om(const Scenario& s, const NodePosition& uav, double p_a, double gamma_th) {
    return outage(bob_terms(s, uav, Mode::om), s.noise, p_a, gamma_th);
}

double outage_dm(const Scenario& s, const NodePosition& uav, double p_a, double gamma_th) {
    return outage(bob_terms(s, uav, Mode::dm), s.noise, p_a, gamma_th);
}

double outage(const Scenario& s, const NodePosition& uav, double p_a, double gamma_th, Mode mode) {
    return outage(bob_terms(s, uav, mode), s.noise, p_a, gamma_th);
}

double ecr(double r_b, double p_out) { return r_b * (1.0 - p_out); }

double csc(const LinkTerms& bob, const NoiseModel& n, double p_a, double bandwidth_hz) {
    require_noise(n);
    if (!(p_a > 0.0)) return 0.0;
    double total = 0.0;
    for (const LinkTerm& t : bob) total += t.weight * csc_term(t, bob.mode, n, p_a);
    return bandwidth_hz * std::max(0.0, total);
}

double csc_om(const Scenario& s, const NodePosition& uav, double p_a) {
    return csc(bob_terms(s, uav, Mode::om), s.noise, p_a, s.om.bandwidth_hz);
}

double csc_dm(const Scenario& s, const NodePosition& uav, double p_a) {
    return csc(bob_terms(s, uav, Mode::dm), s.noise, p_a, s.dm.bandwidth_hz);
}

double csc(const Scenario& s, const NodePosition& uav, double p_a, Mode mode) {
    return csc(bob_terms(s, uav, mode), s.noise, p_a, band(s, mode).bandwidth_hz);
}

LinkMetrics link_metrics(const Scenario& s, const NodePosition& uav, double p_a, double r_b, Mode mode) {
    const LinkTerms bob = bob_terms(s, uav, mode);
    const double w = band(s, mode).bandwidth_hz;
    LinkMetrics m;
    m.mode = mode;
    m.p_out = outage(bob, s.noise, p_a, snr_threshold(r_b, w));
    m.ecr = ecr(r_b, m.p_out);
    m.csc = csc(bob, s.noise, p_a, w);
    return m;
}

} // namespace a2g

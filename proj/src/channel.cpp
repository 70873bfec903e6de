#include "a2g/channel.hpp"

#include "a2g/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace a2g {
namespace {

void require_shape(int s) {
    if (s < 1) {
        std::ostringstream os;
        os << "Nakagami shape must be an integer >= 1 (got " << s << ")";
        throw ChannelError(os.str());
    }
}

double binom(int n, int r) {
    double c = 1.0;
    for (int i = 1; i <= r; ++i) c = c * (n - r + i) / i;
    return c;
}

} // namespace

double rician_factor(double theta_rad, const RicianLaw& law, LinkState state) {
    if (state == LinkState::nlos) return 0.0;
    if (!(law.k0 > 0.0) || !(law.k_half_pi >= law.k0)) {
        throw ChannelError("Rician law needs k_half_pi >= k0 > 0");
    }
    const double eta2 = (2.0 / std::numbers::pi) * std::log(law.k_half_pi / law.k0);
    return law.k0 * std::exp(eta2 * theta_rad);
}

double rician_power_pdf(double x, double k) {
    if (x < 0.0) return 0.0;
    // (k+1) e^{-k-(k+1)x} I0(2 sqrt(k(k+1)x)), with I0 scaled to keep the exponent in one place
    const double z = 2.0 * std::sqrt(k * (k + 1.0) * x);
    return (k + 1.0) * specfun::bessel_i0e(z) * std::exp(z - k - (k + 1.0) * x);
}

double rician_power_cdf(double x, double k, bool exact) {
    if (x <= 0.0) return 0.0;
    if (k < 0.0) throw ChannelError("Rician factor must be >= 0");
    const double a = std::sqrt(2.0 * k);
    const double b = std::sqrt(2.0 * (k + 1.0) * x);
    const double q = exact ? specfun::marcum_q1_exact(a, b) : specfun::marcum_q1_approx(a, b);
    return std::clamp(1.0 - q, 0.0, 1.0);
}

double nakagami_xi(int s) {
    require_shape(s);
    return s * std::exp(-specfun::log_gamma(s + 1.0) / s);
}

double nakagami_power_cdf(double x, int s) {
    require_shape(s);
    if (x <= 0.0) return 0.0;
    const double xi = nakagami_xi(s);
    double sum = 0.0;
    for (int r = 0; r <= s; ++r) sum += binom(s, r) * ((r % 2) ? -1.0 : 1.0) * std::exp(-r * xi * x);
    return std::clamp(sum, 0.0, 1.0);
}

double gamma_power_cdf(double x, int s) {
    require_shape(s);
    if (x <= 0.0) return 0.0;
    return specfun::gamma_p(s, s * x);
}

double gamma_power_pdf(double x, int s) {
    require_shape(s);
    if (x < 0.0) return 0.0;
    if (x == 0.0) return s == 1 ? 1.0 : 0.0;
    return std::exp(s * std::log(static_cast<double>(s)) + (s - 1) * std::log(x) - s * x -
                    specfun::log_gamma(s));
}

double noise_power_pdf(double x, const NoiseModel& n) {
    const double lo = n.sigma_n2 / n.rho;
    const double hi = n.sigma_n2 * n.rho;
    if (x < lo || x > hi) return 0.0;
    return 1.0 / (2.0 * std::log(n.rho) * x);
}

double path_loss(double d, const PathLoss& pl) {
    if (!(d > 0.0)) throw ChannelError("path loss needs d > 0");
    return pl.beta * std::pow(d, -pl.alpha);
}

double rician_power_upper(double k) {
    // |h|^2 (k+1) = |sqrt(k) + n|^2 with n ~ CN(0,1); P(|n| > t) = e^{-t^2}
    const double t = std::sqrt(10.0 * std::numbers::ln10);
    const double r = std::sqrt(k) + t;
    return r * r / (k + 1.0);
}

double gamma_power_upper(int s) {
    require_shape(s);
    // Chernoff: P(X > y) <= exp(-s (y - 1 - ln y)) for y > 1
    const double target = 10.0 * std::numbers::ln10 / s;
    double lo = 1.0, hi = 2.0;
    while (hi - 1.0 - std::log(hi) < target) hi *= 2.0;
    for (int i = 0; i < 100; ++i) {
        const double mid = 0.5 * (lo + hi);
        (mid - 1.0 - std::log(mid) < target ? lo : hi) = mid;
    }
    return hi;
}

double sample_rician_power(double k, Rng& rng) {
    const double los = std::sqrt(k / (k + 1.0));
    const double sd = 1.0 / std::sqrt(2.0 * (k + 1.0));
    const double re = los + sd * rng.normal();
    const double im = sd * rng.normal();
    return re * re + im * im;
}

double sample_nakagami_power(int s, Rng& rng) {
    require_shape(s);
    double sum = 0.0;
    for (int i = 0; i < s; ++i) sum += rng.exponential();
    return sum / s;
}

double sample_noise_power(const NoiseModel& n, Rng& rng) {
    const double u = 2.0 * rng.uniform() - 1.0;
    return n.sigma_n2 * std::pow(n.rho, u);
}

} // namespace a2g

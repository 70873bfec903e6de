#pragma once

#include "a2g/rng.hpp"

#include <stdexcept>

namespace a2g {

class ChannelError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class LinkState { los, nlos };

/// Elevation-dependent Rician factor law, both values linear.
struct RicianLaw {
    double k0 = 1.0;
    double k_half_pi = 1.0;
};

/// Integer Nakagami shapes for LoS / NLoS.
struct NakagamiLaw {
    int s_los = 1;
    int s_nlos = 1;
};

/// L = beta * d^-alpha.
struct PathLoss {
    double beta = 1.0;
    double alpha = 2.0;
};

/// Log-uniform noise on [sigma_n2 / rho, rho * sigma_n2]; sigma_n2 in mW, rho linear.
struct NoiseModel {
    double sigma_n2 = 1.0;
    double rho = 1.0;
};

/// LoS: k0 exp(eta2 theta) with eta2 = (2/pi) ln(k_half_pi / k0). NLoS: 0.
double rician_factor(double theta_rad, const RicianLaw& law, LinkState state);

/// Density of |h|^2 for unit-mean Rician fading with factor k.
double rician_power_pdf(double x, double k);

/// 1 - Q1(sqrt(2k), sqrt(2(k+1)x)); exact uses quadrature, otherwise the
/// exponential-type Marcum approximation.
double rician_power_cdf(double x, double k, bool exact);

/// xi = S (S!)^{-1/S}.
double nakagami_xi(int s);

/// Alzer-form CDF of unit-mean gamma power, [1 - exp(-xi x)]^S written as
/// the binomial sum.
double nakagami_power_cdf(double x, int s);

/// Exact CDF of Gamma(s, 1/s): P(s, s x).
double gamma_power_cdf(double x, int s);

/// Exact density of Gamma(s, 1/s).
double gamma_power_pdf(double x, int s);

double noise_power_pdf(double x, const NoiseModel& n);

double path_loss(double d, const PathLoss& pl);

/// Upper integration limit for a unit-mean fading power: tail mass beyond
/// it is below 1e-10.
double rician_power_upper(double k);
double gamma_power_upper(int s);

double sample_rician_power(double k, Rng& rng);
/// Gamma(s, 1/s) as a sum of s unit exponentials over s.
double sample_nakagami_power(int s, Rng& rng);
double sample_noise_power(const NoiseModel& n, Rng& rng);

} // namespace a2g

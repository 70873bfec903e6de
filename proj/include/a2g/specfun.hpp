#pragma once

#include <stdexcept>

/// Special functions used by the closed-form covert-performance expressions.
///
/// Everything here is pure and reentrant. Arguments outside the documented
/// domain raise a2g::specfun::DomainError.
namespace a2g::specfun {

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline constexpr double kEulerGamma = 0.57721566490153286060651209;
inline constexpr double kPi = 3.14159265358979323846264338;

/// Natural log of Gamma(x) for x > 0 (Lanczos, g = 7).
double log_gamma(double x);

/// Modified Bessel function of the first kind, order zero.
double bessel_i0(double x);

/// Exponentially scaled form e^{-|x|} I0(x); finite for any x.
double bessel_i0e(double x);

/// Lower incomplete gamma gamma(s, x) = int_0^x t^{s-1} e^{-t} dt (not regularized).
double lower_inc_gamma(double s, double x);

/// Regularized lower incomplete gamma P(s, x) = gamma(s, x) / Gamma(s).
double gamma_p(double s, double x);

/// Exponential integral Ei(x), principal value. Throws at x == 0.
double exp_integral_ei(double x);

/// Dilogarithm Li2(x) for x <= 0. Throws for x > 0.
double dilog_li2(double x);

/// First-order Marcum-Q by adaptive quadrature of its defining integral.
double marcum_q1_exact(double a, double b);

struct MarcumApproxCoeffs {
    double mu;
    double nu;
};

/// The printed degree-6 mu/nu polynomials. Defined only at x == 0 and on
/// [10, 8000]; anything else throws.
MarcumApproxCoeffs marcum_mu_nu_polynomial(double x);

/// mu/nu over [0, 8000]. The (0, 10) gap is filled from a node table of
/// least-squares fits to the exact Q1 (see tools/fit_marcum_gap.py) and
/// linearly interpolated between nodes; x == 0 and x >= 10 use the polynomials.
MarcumApproxCoeffs marcum_mu_nu(double x);

/// True when marcum_mu_nu(x) is served from the gap table.
bool marcum_in_gap(double x);

/// Exponential-type approximation Q1(a, b) ~ exp(-e^{mu(a)} b^{nu(a)}), clamped to [0, 1].
double marcum_q1_approx(double a, double b);

} // namespace a2g::specfun

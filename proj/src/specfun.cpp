#include "a2g/specfun.hpp"

#include "a2g/diagnostics.hpp"
#include "a2g/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace a2g::specfun {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxIter = 10000;

std::string fmt(const char* what, double x) {
    std::ostringstream os;
    os << what << " (argument " << x << ")";
    return os.str();
}

// I0 power series; used up to x = 15 where it is still well conditioned.
double i0_series(double x) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 500; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
        if (term < sum * kEps) break;
    }
    return sum;
}

// Hankel asymptotic expansion of e^{-x} I0(x).
double i0e_asymptotic(double x) {
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 60; ++k) {
        const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * x);
        if (next > term) break;
        term = next;
        sum += term;
        if (term < sum * kEps) break;
    }
    return sum / std::sqrt(2.0 * kPi * x);
}

// Series for P(s, x), valid for x < s + 1.
double gamma_series_sum(double s, double x) {
    double term = 1.0 / s;
    double sum = term;
    for (int n = 1; n < kMaxIter; ++n) {
        term *= x / (s + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * kEps) break;
    }
    return sum;
}

// Modified Lentz continued fraction for Q(s, x) * Gamma(s) * e^x * x^-s, x >= s + 1.
double gamma_cf(double s, double x) {
    double b = x + 1.0 - s;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -i * (i - s);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

// E1(z) for z > 0.
double expint_e1(double z) {
    if (z <= 1.0) {
        double term = 1.0;
        double sum = 0.0;
        for (int k = 1; k < 200; ++k) {
            term *= -z / k;
            const double add = -term / k;
            sum += add;
            if (std::abs(add) < std::abs(sum) * kEps) break;
        }
        return -kEulerGamma - std::log(z) + sum;
    }
    double b = z + 1.0;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < kMaxIter; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h * std::exp(-z);
}

// Li2 on [-1, 0] through the Bernoulli series in u = -ln(1 - x).
double dilog_bernoulli(double x) {
    // B_{2m} / (2m + 1)!, m = 1..10
    static constexpr std::array<double, 10> c = {
        1.0 / 36.0,
        -1.0 / 3600.0,
        1.0 / 211680.0,
        -1.0 / 10886400.0,
        1.0 / 526901760.0,
        -691.0 / 2730.0 / 6227020800.0,
        7.0 / 6.0 / 1307674368000.0,
        -3617.0 / 510.0 / 355687428096000.0,
        43867.0 / 798.0 / 121645100408832000.0,
        -174611.0 / 330.0 / 51090942171709440000.0,
    };
    const double u = -std::log1p(-x);
    const double u2 = u * u;
    double sum = u - 0.25 * u2;
    double p = u;
    for (double cm : c) {
        p *= u2;
        sum += cm * p;
    }
    return sum;
}

double horner(const std::array<double, 7>& coeff, double x) {
    double acc = 0.0;
    for (double c : coeff) acc = acc * x + c;
    return acc;
}

// Highest power first.
constexpr std::array<double, 7> kMuPoly = {-3.0888e-10, 1.8362e-7, -3.7185e-5, 3.4103e-3,
                                           -0.1624,     -1.4318,   0.7409};
constexpr std::array<double, 7> kNuPoly = {5.1546e-11, -3.1961e-8, 6.3859e-6, -5.4159e-4,
                                           1.9833e-2,  0.9044,     0.9439};

struct GapNode {
    double a;
    double mu;
    double nu;
    double rmse;
};

constexpr GapNode kGapTable[] = {
#include "a2g/detail/marcum_gap_table.inc"
};
constexpr double kGapStep = 0.25;
constexpr double kPolyLow = 10.0;
constexpr double kPolyHigh = 8000.0;

} // namespace

double log_gamma(double x) {
    if (!(x > 0.0)) throw DomainError(fmt("log_gamma requires x > 0", x));
    static constexpr std::array<double, 9> p = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7,
    };
    if (x < 0.5) return std::log(kPi / std::sin(kPi * x)) - log_gamma(1.0 - x);
    const double z = x - 1.0;
    double a = p[0];
    const double t = z + 7.5;
    for (int i = 1; i < 9; ++i) a += p[i] / (z + i);
    return 0.5 * std::log(2.0 * kPi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

double bessel_i0e(double x) {
    const double ax = std::abs(x);
    if (ax <= 15.0) return i0_series(ax) * std::exp(-ax);
    return i0e_asymptotic(ax);
}

double bessel_i0(double x) {
    const double ax = std::abs(x);
    if (ax <= 15.0) return i0_series(ax);
    return i0e_asymptotic(ax) * std::exp(ax);
}

double gamma_p(double s, double x) {
    if (!(s > 0.0)) throw DomainError(fmt("gamma_p requires s > 0", s));
    if (!(x >= 0.0)) throw DomainError(fmt("gamma_p requires x >= 0", x));
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    const double log_pref = -x + s * std::log(x) - log_gamma(s);
    if (x < s + 1.0) return std::exp(log_pref) * gamma_series_sum(s, x);
    return 1.0 - std::exp(log_pref) * gamma_cf(s, x);
}

double lower_inc_gamma(double s, double x) {
    if (!(s > 0.0)) throw DomainError(fmt("lower_inc_gamma requires s > 0", s));
    if (!(x >= 0.0)) throw DomainError(fmt("lower_inc_gamma requires x >= 0", x));
    if (x == 0.0) return 0.0;
    if (x < s + 1.0) return std::exp(-x + s * std::log(x)) * gamma_series_sum(s, x);
    const double lg = log_gamma(s);
    if (std::isinf(x)) return std::exp(lg);
    const double q = std::exp(-x + s * std::log(x) - lg) * gamma_cf(s, x);
    return std::exp(lg) * (1.0 - q);
}

double exp_integral_ei(double x) {
    if (x == 0.0 || std::isnan(x)) throw DomainError(fmt("Ei is singular at x = 0", x));
    if (x < 0.0) return -expint_e1(-x);
    if (x <= 40.0) {
        double term = 1.0;
        double sum = 0.0;
        for (int k = 1; k < 500; ++k) {
            term *= x / k;
            const double add = term / k;
            sum += add;
            if (add < sum * kEps) break;
        }
        return kEulerGamma + std::log(x) + sum;
    }
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 100; ++k) {
        const double next = term * k / x;
        if (next > term) break;
        term = next;
        sum += term;
        if (term < sum * kEps) break;
    }
    return std::exp(x) / x * sum;
}

double dilog_li2(double x) {
    if (x > 0.0 || std::isnan(x)) throw DomainError(fmt("dilog_li2 is implemented for x <= 0", x));
    if (x == 0.0) return 0.0;
    if (x >= -1.0) return dilog_bernoulli(x);
    const double z = -x;
    const double lz = std::log(z);
    return -kPi * kPi / 6.0 - 0.5 * lz * lz - dilog_bernoulli(-1.0 / z);
}

double marcum_q1_exact(double a, double b) {
    if (!(a >= 0.0)) throw DomainError(fmt("marcum_q1_exact requires a >= 0", a));
    if (!(b >= 0.0)) throw DomainError(fmt("marcum_q1_exact requires b >= 0", b));
    if (b == 0.0) return 1.0;
    if (std::isinf(b)) return 0.0;
    // x I0(ax) exp(-(x^2 + a^2)/2) == x i0e(ax) exp(-(x - a)^2 / 2)
    auto integrand = [a](double x) {
        const double d = x - a;
        return x * bessel_i0e(a * x) * std::exp(-0.5 * d * d);
    };
    QuadratureOptions opts;
    opts.abs_tol = 1e-15;
    opts.rel_tol = 1e-13;
    opts.max_intervals = 4000;
    if (b < a) {
        const double lower = require_converged(integrate(integrand, 0.0, b, opts), "marcum_q1_exact");
        return std::clamp(1.0 - lower, 0.0, 1.0);
    }
    const double upper = require_converged(integrate(integrand, b, b + 40.0, opts), "marcum_q1_exact");
    return std::clamp(upper, 0.0, 1.0);
}

MarcumApproxCoeffs marcum_mu_nu_polynomial(double x) {
    if (x == 0.0) return {-std::log(2.0), 2.0};
    if (!(x >= kPolyLow && x <= kPolyHigh)) {
        throw DomainError(fmt("mu/nu polynomials are defined only at 0 and on [10, 8000]", x));
    }
    return {horner(kMuPoly, x), horner(kNuPoly, x)};
}

bool marcum_in_gap(double x) { return x > 0.0 && x < kPolyLow; }

MarcumApproxCoeffs marcum_mu_nu(double x) {
    if (!(x >= 0.0 && x <= kPolyHigh)) {
        throw DomainError(fmt("mu/nu approximation is defined on [0, 8000]", x));
    }
    if (!marcum_in_gap(x)) return marcum_mu_nu_polynomial(x);

    constexpr int nodes = static_cast<int>(sizeof(kGapTable) / sizeof(kGapTable[0]));
    auto node = [&](int i) -> MarcumApproxCoeffs {
        if (i <= 0) return marcum_mu_nu_polynomial(0.0);
        if (i > nodes) return marcum_mu_nu_polynomial(kPolyLow);
        return {kGapTable[i - 1].mu, kGapTable[i - 1].nu};
    };
    const int i = static_cast<int>(x / kGapStep);
    const double t = x / kGapStep - i;
    const auto lo = node(i);
    const auto hi = node(i + 1);
    if (diag::level() >= diag::Level::debug) {
        diag::debug(fmt("marcum mu/nu served from gap table", x));
    }
    return {lo.mu + t * (hi.mu - lo.mu), lo.nu + t * (hi.nu - lo.nu)};
}

double marcum_q1_approx(double a, double b) {
    if (!(b >= 0.0)) throw DomainError(fmt("marcum_q1_approx requires b >= 0", b));
    const auto c = marcum_mu_nu(a);
    if (b == 0.0) return 1.0;
    const double v = std::exp(-std::exp(c.mu + c.nu * std::log(b)));
    return std::clamp(v, 0.0, 1.0);
}

} // namespace a2g::specfun

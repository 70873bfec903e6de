#pragma once

// Reference computations for the tests. None of this calls into the
// library's numerics: own quadrature, own series, brute force where it
// is cheap enough.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

// adaptive Simpson, recursive, Richardson-corrected
namespace detail {
inline double simpson_step(const std::function<double(double)>& f, double a, double b, double fa, double fm,
                           double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    if (depth <= 0 || std::abs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
} // namespace detail

inline double simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-12,
                      int pieces = 64) {
    double total = 0.0;
    const double h = (b - a) / pieces;
    for (int i = 0; i < pieces; ++i) {
        const double lo = a + i * h, hi = lo + h;
        const double fa = f(lo), fb = f(hi), fm = f(0.5 * (lo + hi));
        const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
        total += detail::simpson_step(f, lo, hi, fa, fm, fb, whole, tol / pieces, 40);
    }
    return total;
}

// I_nu(x) by its power series; fine for the moderate arguments used here
inline double bessel_i(int nu, double x) {
    const double half = 0.5 * x;
    double term = std::pow(half, nu) / std::tgamma(nu + 1.0);
    double sum = term;
    for (int k = 1; k < 2000; ++k) {
        term *= half * half / (static_cast<double>(k) * (k + nu));
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

// Q1(a, b) = e^{-(a^2+b^2)/2} sum_k (a/b)^k I_k(ab), b > 0
inline double marcum_q1_series(double a, double b) {
    const double pre = std::exp(-0.5 * (a * a + b * b));
    double sum = 0.0;
    for (int k = 0; k < 400; ++k) {
        const double t = std::pow(a / b, k) * bessel_i(k, a * b);
        sum += t;
        if (k > 5 && t < 1e-18 * sum) break;
    }
    return pre * sum;
}

inline double rician_pdf(double x, double k) {
    if (x < 0.0) return 0.0;
    return (k + 1.0) * std::exp(-k - (k + 1.0) * x) * bessel_i(0, 2.0 * std::sqrt(k * (k + 1.0) * x));
}

inline double gamma_pdf(double x, int s) {
    if (x <= 0.0) return s == 1 ? 1.0 : 0.0;
    return std::exp(s * std::log(s) + (s - 1) * std::log(x) - s * x - std::lgamma(s));
}

// Log-uniform noise power on [sigma2/rho, rho sigma2].
inline double noise_cdf(double x, double sigma2, double rho) {
    if (x <= sigma2 / rho) return 0.0;
    if (x >= sigma2 * rho) return 1.0;
    return std::log(x * rho / sigma2) / (2.0 * std::log(rho));
}

// FA + MD for the averaged-energy detector when N is infinite: under H0 the
// statistic is the noise power, under H1 it is k_a plus the noise power.
inline double detector_error(double tau, double k_a, double sigma2, double rho) {
    const double fa = 1.0 - noise_cdf(tau, sigma2, rho);
    const double md = noise_cdf(tau - k_a, sigma2, rho);
    return fa + md;
}

// Minimum over tau of detector_error: dense grid over the span where the
// error can change, then golden section inside the best cell's neighbours.
inline double brute_force_min_dep(double k_a, double sigma2, double rho, int grid = 100000) {
    const double lo = sigma2 / rho;
    const double hi = sigma2 * rho + k_a;
    const double h = (hi - lo) / (grid - 1);
    int best = 0;
    double best_v = 2.0;
    for (int i = 0; i < grid; ++i) {
        const double v = detector_error(lo + i * h, k_a, sigma2, rho);
        if (v < best_v) {
            best_v = v;
            best = i;
        }
    }
    double a = lo + std::max(0, best - 1) * h;
    double b = lo + std::min(grid - 1, best + 1) * h;
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = detector_error(c, k_a, sigma2, rho), fd = detector_error(d, k_a, sigma2, rho);
    for (int it = 0; it < 200 && b - a > 1e-15 * hi; ++it) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = detector_error(c, k_a, sigma2, rho);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = detector_error(d, k_a, sigma2, rho);
        }
    }
    return std::min({best_v, fc, fd});
}

// sup |F_n - F| for a sample (sorted in place).
inline double ks_statistic(std::vector<double>& xs, const std::function<double(double)>& cdf) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return d;
}

// Upper bound on sup |F_n - F| from F on a grid covering the sample: both
// are monotone, so between nodes the gap can grow by at most the step in F.
inline double ks_bound_on_grid(std::vector<double>& xs, double lo, double hi, int nodes,
                               const std::function<double(double)>& cdf) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0, step = 0.0, prev_f = cdf(lo);
    for (int i = 0; i <= nodes; ++i) {
        const double x = lo + (hi - lo) * i / nodes;
        const double f = cdf(x);
        const auto below = std::upper_bound(xs.begin(), xs.end(), x) - xs.begin();
        const auto strict = std::lower_bound(xs.begin(), xs.end(), x) - xs.begin();
        d = std::max({d, std::abs(below / n - f), std::abs(strict / n - f)});
        step = std::max(step, f - prev_f);
        prev_f = f;
    }
    const double outside = std::max(cdf(lo), 1.0 - prev_f);
    return d + std::max(step, outside);
}

// Mean and standard error of a sample.
struct Moments {
    double mean = 0.0;
    double se = 0.0;
};

inline Moments moments(const std::vector<double>& xs) {
    double m = 0.0, m2 = 0.0;
    std::size_t n = 0;
    for (double x : xs) {
        ++n;
        const double d = x - m;
        m += d / n;
        m2 += d * (x - m);
    }
    return {m, std::sqrt(m2 / (n - 1) / n)};
}

} // namespace oracle

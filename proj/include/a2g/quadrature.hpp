#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace a2g {

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 0.0;
    int max_intervals = 2000;
};

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    int intervals = 0;
    bool converged = false;
};

/// Adaptive 7/15-point Gauss-Kronrod on a finite interval. Bisects the
/// interval with the largest error estimate until the total estimate drops
/// below max(abs_tol, rel_tol * |value|) or max_intervals is reached.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts = {});

/// Same as integrate(), but starts from [a, split] and [split, b] so a known
/// mode or kink is never straddled by the first panel.
QuadratureResult integrate_split(const std::function<double(double)>& f, double a, double split,
                                 double b, const QuadratureOptions& opts = {});

/// Throws QuadratureError carrying `what` plus the error estimate when the
/// result did not converge; otherwise returns the value.
double require_converged(const QuadratureResult& r, const std::string& what);

} // namespace a2g

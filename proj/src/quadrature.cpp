#include "a2g/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

namespace a2g {
namespace {

// Kronrod abscissae (positive half, descending) and weights for G7/K15.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
// Gauss weights for the odd Kronrod nodes (1, 3, 5) and the centre.
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct Panel {
    double a;
    double b;
    double value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gauss_kronrod(const std::function<double(double)>& f, double a, double b) {
    const double centre = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(centre);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(centre - dx);
        const double f2 = f(centre + dx);
        kronrod += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

QuadratureResult run(const std::function<double(double)>& f, std::vector<Panel> start,
                     const QuadratureOptions& opts) {
    std::priority_queue<Panel> heap;
    double total = 0.0;
    double err = 0.0;
    for (const auto& p : start) {
        total += p.value;
        err += p.error;
        heap.push(p);
    }
    int count = static_cast<int>(heap.size());
    auto tolerance = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };
    while (err > tolerance() && count < opts.max_intervals) {
        const Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            heap.push(worst);
            break;  // interval exhausted in double precision
        }
        const Panel left = gauss_kronrod(f, worst.a, mid);
        const Panel right = gauss_kronrod(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++count;
    }
    // Re-sum to drop the drift accumulated by incremental updates.
    double value = 0.0;
    double error = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        error += heap.top().error;
        heap.pop();
    }
    QuadratureResult r;
    r.value = value;
    r.abs_error = error;
    r.intervals = count;
    r.converged = error <= std::max(opts.abs_tol, opts.rel_tol * std::abs(value));
    return r;
}

} // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts) {
    if (a == b) return {0.0, 0.0, 0, true};
    if (a > b) {
        auto r = integrate(f, b, a, opts);
        r.value = -r.value;
        return r;
    }
    return run(f, {gauss_kronrod(f, a, b)}, opts);
}

QuadratureResult integrate_split(const std::function<double(double)>& f, double a, double split,
                                 double b, const QuadratureOptions& opts) {
    if (!(split > a && split < b)) return integrate(f, a, b, opts);
    return run(f, {gauss_kronrod(f, a, split), gauss_kronrod(f, split, b)}, opts);
}

double require_converged(const QuadratureResult& r, const std::string& what) {
    if (!r.converged) {
        std::ostringstream os;
        os << what << ": quadrature did not converge (value " << r.value << ", error estimate "
           << r.abs_error << ", " << r.intervals << " panels)";
        throw QuadratureError(os.str());
    }
    return r.value;
}

} // namespace a2g

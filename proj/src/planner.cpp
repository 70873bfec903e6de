#include "a2g/planner.hpp"

#include "a2g/detection.hpp"
#include "a2g/throughput.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace a2g {
namespace {

struct Context {
    const Scenario& s;
    LinkTerms willie;
    LinkTerms bob;
    double w;

    Context(const Scenario& sc, const NodePosition& uav, Mode mode)
        : s(sc), willie(willie_terms(sc, uav, mode)), bob(bob_terms(sc, uav, mode)), w(band(sc, mode).bandwidth_hz) {}

    double dep(double p) const { return expected_min_dep(willie, s.noise, p).value; }
    bool covert(double p) const { return dep(p) >= 1.0 - s.epsilon - kConstraintSlack; }
    double ecr_at(double p, double r) const { return ecr(r, outage(bob, s.noise, p, snr_threshold(r, w))); }
};

double power_limit(const Context& c, double rel_tol) {
    const double p_max = c.s.p_max;
    if (c.covert(p_max)) return p_max;
    double lo = 0.0, hi = p_max;
    for (int i = 0; i < 400 && hi - lo > rel_tol * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        (c.covert(mid) ? lo : hi) = mid;
    }
    return lo;
}

// Golden-section maximum of r -> ecr on [a, b].
double golden_rate(const Context& c, double p, double a, double b) {
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = c.ecr_at(p, x1), f2 = c.ecr_at(p, x2);
    for (int i = 0; i < 60 && b - a > 1e-9 * b; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = c.ecr_at(p, x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = c.ecr_at(p, x1);
        }
    }
    return f1 > f2 ? x1 : x2;
}

} // namespace

const char* to_string(Binding b) {
    switch (b) {
    case Binding::covertness: return "covertness";
    case Binding::power: return "power";
    default: return "none";
    }
}

const char* to_string(Metric m) { return m == Metric::ecr ? "ecr" : "csc"; }

double ecr_rate_ceiling(const Scenario& s, const NodePosition& uav, Mode mode) {
    double best = 0.0;
    for (const LinkTerm& t : bob_terms(s, uav, mode)) best = std::max(best, t.gain * t.loss);
    const double snr = s.noise.rho * s.p_max * best / s.noise.sigma_n2;
    return band(s, mode).bandwidth_hz * std::log2(1.0 + snr);
}

double covert_power_limit(const Scenario& s, const NodePosition& uav, Mode mode, double rel_tol) {
    return power_limit(Context(s, uav, mode), rel_tol);
}

OptimizationResult maximize_ecr(const Scenario& s, const NodePosition& uav, Mode mode) {
    const Context c(s, uav, mode);
    const int np = std::max(2, s.grid.power_points);
    const int nr = std::max(2, s.grid.rate_points);
    const double p_min = s.p_max * s.grid.p_min_ratio;

    std::vector<double> powers(np);
    for (int i = 0; i < np; ++i) powers[i] = p_min * std::pow(s.p_max / p_min, static_cast<double>(i) / (np - 1));
    powers.back() = s.p_max;
    const double p_star = power_limit(c, 1e-9);
    const bool boundary_inside = p_star >= p_min && p_star < s.p_max;
    if (boundary_inside) {
        powers.insert(std::upper_bound(powers.begin(), powers.end(), p_star), p_star);
    }

    const double r_max = ecr_rate_ceiling(s, uav, mode);
    std::vector<double> rates(nr);
    for (int j = 0; j < nr; ++j) rates[j] = r_max * (j + 1) / nr;

    OptimizationResult best;
    int best_j = -1;
    for (double p : powers) {
        if (!c.covert(p)) continue;
        for (int j = 0; j < nr; ++j) {
            const double v = c.ecr_at(p, rates[j]);
            if (v > best.objective || best_j < 0) {
                best.objective = v;
                best.p_a_opt = p;
                best.r_b_opt = rates[j];
                best_j = j;
            }
        }
    }
    if (best_j < 0) return {};

    const double lo = best_j > 0 ? rates[best_j - 1] : 0.0;
    const double hi = best_j + 1 < nr ? rates[best_j + 1] : r_max;
    const double r_ref = golden_rate(c, best.p_a_opt, lo, hi);
    if (c.ecr_at(best.p_a_opt, r_ref) > best.objective) best.r_b_opt = r_ref;

    best.feasible = true;
    best.objective = c.ecr_at(best.p_a_opt, *best.r_b_opt);
    best.dep_at_opt = c.dep(best.p_a_opt);
    if (best.p_a_opt == s.p_max) {
        best.binding = Binding::power;
    } else if (boundary_inside && best.p_a_opt == p_star) {
        best.binding = Binding::covertness;
    } else {
        best.binding = Binding::none;
    }
    return best;
}

OptimizationResult maximize_csc(const Scenario& s, const NodePosition& uav, Mode mode) {
    const Context c(s, uav, mode);
    OptimizationResult r;
    const double p = power_limit(c, 1e-6);
    if (!(p > 0.0)) return r;
    r.feasible = true;
    r.p_a_opt = p;
    r.binding = p == s.p_max ? Binding::power : Binding::covertness;
    r.objective = csc(c.bob, s.noise, p, c.w);
    r.dep_at_opt = c.dep(p);
    return r;
}

OptimizationResult maximize(const Scenario& s, const NodePosition& uav, Mode mode, Metric metric) {
    return metric == Metric::ecr ? maximize_ecr(s, uav, mode) : maximize_csc(s, uav, mode);
}

ModeDecision select_mode(const Scenario& s, const NodePosition& uav, Metric metric) {
    ModeDecision d;
    d.metric = metric;
    d.om = maximize(s, uav, Mode::om, metric);
    d.dm = maximize(s, uav, Mode::dm, metric);
    d.objective_om = d.om.objective;
    d.objective_dm = d.dm.objective;
    d.indicator = d.objective_om >= d.objective_dm ? Mode::om : Mode::dm;
    return d;
}

} // namespace a2g

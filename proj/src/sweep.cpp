#include "a2g/sweep.hpp"

#include "a2g/config.hpp"
#include "a2g/detection.hpp"
#include "a2g/diagnostics.hpp"
#include "a2g/oracle.hpp"
#include "a2g/throughput.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

namespace a2g {
namespace {

// Runs fn(i) for i in [0, n); rows land in their own slots so output order
// never depends on scheduling.
template <class Fn>
void parallel_for(int n, int workers, const Fn& fn) {
    const int w = std::min(n, workers > 0 ? workers : default_workers());
    if (w <= 1) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::exception_ptr first;
    std::mutex m;
    std::vector<std::thread> pool;
    for (int t = 0; t < w; ++t) {
        pool.emplace_back([&, t] {
            for (int i = t; i < n; i += w) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(m);
                    if (!first) first = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first) std::rethrow_exception(first);
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = n == 1 ? a : a + (b - a) * i / (n - 1);
    return v;
}

bool is_opt(SweepMetric m) { return m == SweepMetric::ecr_opt || m == SweepMetric::csc_opt; }

Cell dbm_cell(const OptimizationResult& r) {
    if (!r.feasible || !(r.p_a_opt > 0.0)) return std::monostate{};
    return mw_to_dbm(r.p_a_opt);
}

// Scenario and UAV position for one axis value.
struct Point {
    Scenario s;
    NodePosition uav;
    double p_a = 0.0;
};

Point apply_axis(const Scenario& base, const SweepRequest& req, double v) {
    Point p{base, base.alice, dbm_to_mw(req.p_a_dbm)};
    switch (req.axis) {
    case Axis::rho:
        if (!(v > 0.0)) throw RequestError("rho axis values must be > 0 dB");
        p.s.noise.rho = db_to_linear(v);
        break;
    case Axis::p_a: p.p_a = dbm_to_mw(v); break;
    case Axis::x_a:
        p.uav.x = v;
        p.s.alice.x = v;
        if (!within_safe_distance(p.s, p.uav)) {
            std::ostringstream os;
            os << "x_a = " << v << " m is outside the d_aw safe band (row kept)";
            diag::warn(os.str());
        }
        break;
    case Axis::r_b:
        if (!(v > 0.0)) throw RequestError("r_b axis values must be positive");
        p.s.r_b = v;
        break;
    case Axis::epsilon:
        if (!(v > 0.0 && v <= 1.0)) throw RequestError("epsilon axis values must lie in (0, 1]");
        p.s.epsilon = v;
        break;
    case Axis::p_max: p.s.p_max = dbm_to_mw(v); break;
    }
    return p;
}

} // namespace

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string to_csv(const Table& t) {
    std::string out;
    for (const auto& [k, v] : t.meta) out += "# " + k + ": " + v + "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
    out += "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            if (const double* d = std::get_if<double>(&row[i])) out += format_number(*d);
            else if (const std::string* s = std::get_if<std::string>(&row[i])) out += *s;
        }
        out += "\n";
    }
    return out;
}

std::string to_json(const Table& t) {
    nlohmann::ordered_json j;
    j["meta"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : t.meta) j["meta"][k] = v;
    j["columns"] = t.columns;
    j["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : t.rows) {
        nlohmann::ordered_json r = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            const std::string& key = t.columns[i];
            if (const double* d = std::get_if<double>(&row[i])) {
                if (std::isfinite(*d)) r[key] = std::stod(format_number(*d));
                else r[key] = format_number(*d);
            } else if (const std::string* s = std::get_if<std::string>(&row[i])) {
                r[key] = *s;
            } else {
                r[key] = nullptr;
            }
        }
        j["rows"].push_back(r);
    }
    return j.dump(2) + "\n";
}

std::vector<std::pair<std::string, std::string>> base_metadata(const Scenario& s, std::uint64_t seed) {
    return {
        {"tool", kToolVersion},
        {"scenario_hash", scenario_hash_hex(s)},
        {"seed", std::to_string(seed)},
        {"rician_k", s.rician_k_db ? "k0 and k_half_pi read as dB ratios" : "k0 and k_half_pi read as linear"},
        {"r_b", "absolute rate in bit/s; gamma_th = 2^(r_b/W) - 1 per mode bandwidth"},
        {"units", "powers in dBm where named _dbm, rates in bit/s, rho in dB"},
        {"side_lobe", s.side_lobe == SideLobeFormula::standard ? "standard" : "printed"},
        {"marcum_mu_nu", "polynomials at 0 and [10, 8000]; fitted node table on (0, 10)"},
    };
}

Axis parse_axis(const std::string& n) {
    if (n == "rho") return Axis::rho;
    if (n == "p_a") return Axis::p_a;
    if (n == "x_a") return Axis::x_a;
    if (n == "r_b") return Axis::r_b;
    if (n == "epsilon") return Axis::epsilon;
    if (n == "p_max") return Axis::p_max;
    throw RequestError("unknown axis '" + n + "' (rho, p_a, x_a, r_b, epsilon, p_max)");
}

SweepMetric parse_metric(const std::string& n) {
    if (n == "dep") return SweepMetric::dep;
    if (n == "p_out") return SweepMetric::p_out;
    if (n == "ecr") return SweepMetric::ecr;
    if (n == "csc") return SweepMetric::csc;
    if (n == "ecr_opt") return SweepMetric::ecr_opt;
    if (n == "csc_opt") return SweepMetric::csc_opt;
    throw RequestError("unknown metric '" + n + "' (dep, p_out, ecr, csc, ecr_opt, csc_opt)");
}

SweepMode parse_mode(const std::string& n) {
    if (n == "om") return SweepMode::om;
    if (n == "dm") return SweepMode::dm;
    if (n == "hybrid") return SweepMode::hybrid;
    throw RequestError("unknown mode '" + n + "' (om, dm, hybrid)");
}

const char* to_string(Axis a) {
    switch (a) {
    case Axis::rho: return "rho";
    case Axis::p_a: return "p_a";
    case Axis::x_a: return "x_a";
    case Axis::r_b: return "r_b";
    case Axis::epsilon: return "epsilon";
    default: return "p_max";
    }
}

const char* to_string(SweepMetric m) {
    switch (m) {
    case SweepMetric::dep: return "dep";
    case SweepMetric::p_out: return "p_out";
    case SweepMetric::ecr: return "ecr";
    case SweepMetric::csc: return "csc";
    case SweepMetric::ecr_opt: return "ecr_opt";
    default: return "csc_opt";
    }
}

const char* to_string(SweepMode m) {
    switch (m) {
    case SweepMode::om: return "om";
    case SweepMode::dm: return "dm";
    default: return "hybrid";
    }
}

Table run_sweep(const Scenario& s, const SweepRequest& req) {
    if (req.points < 2) throw RequestError("a sweep needs at least 2 points");
    if (!std::isfinite(req.from) || !std::isfinite(req.to)) throw RequestError("sweep range must be finite");
    if (req.metrics.empty()) throw RequestError("no metrics requested");
    if (req.modes.empty()) throw RequestError("no modes requested");
    const bool hybrid = std::find(req.modes.begin(), req.modes.end(), SweepMode::hybrid) != req.modes.end();
    const bool any_fixed = std::any_of(req.metrics.begin(), req.metrics.end(), [](SweepMetric m) { return !is_opt(m); });
    const bool any_opt = std::any_of(req.metrics.begin(), req.metrics.end(), is_opt);
    if (hybrid && any_fixed) throw RequestError("mode 'hybrid' only applies to ecr_opt / csc_opt");
    if (req.axis == Axis::p_a && any_opt) throw RequestError("axis p_a only applies to fixed-power metrics");
    if (req.mc && req.mc_samples < 1000) throw RequestError("--samples must be >= 1000");

    Table t;
    t.meta = base_metadata(s, req.seed);
    {
        std::ostringstream cmd;
        cmd << "sweep axis=" << to_string(req.axis) << " from=" << format_number(req.from)
            << " to=" << format_number(req.to) << " points=" << req.points << " p_a_dbm=" << format_number(req.p_a_dbm);
        if (req.mc) cmd << " mc_samples=" << req.mc_samples;
        t.meta.emplace_back("command", cmd.str());
    }

    t.columns = {"axis_value", "mode"};
    if (hybrid) t.columns.push_back("selected");
    std::vector<SweepMetric> mc_metrics;
    for (SweepMetric m : req.metrics) {
        switch (m) {
        case SweepMetric::dep: t.columns.push_back("dep"); break;
        case SweepMetric::p_out: t.columns.push_back("p_out"); break;
        case SweepMetric::ecr: t.columns.push_back("ecr_bps"); break;
        case SweepMetric::csc: t.columns.push_back("csc_bps"); break;
        case SweepMetric::ecr_opt:
            for (const char* c : {"ecr_opt_bps", "ecr_p_a_opt_dbm", "ecr_r_b_opt_bps", "ecr_binding", "ecr_feasible"})
                t.columns.push_back(c);
            break;
        case SweepMetric::csc_opt:
            for (const char* c : {"csc_opt_bps", "csc_p_a_opt_dbm", "csc_binding", "csc_feasible"}) t.columns.push_back(c);
            break;
        }
        if (req.mc && !is_opt(m)) mc_metrics.push_back(m);
    }
    auto mc_name = [](SweepMetric m) -> std::string {
        switch (m) {
        case SweepMetric::dep: return "mc_dep";
        case SweepMetric::p_out: return "mc_p_out";
        case SweepMetric::ecr: return "mc_ecr_bps";
        default: return "mc_csc_bps";
        }
    };
    for (SweepMetric m : mc_metrics) t.columns.push_back(mc_name(m));
    for (SweepMetric m : mc_metrics) t.columns.push_back(mc_name(m) + "_stderr");

    const std::vector<double> axis = linspace(req.from, req.to, req.points);
    std::vector<std::vector<std::vector<Cell>>> blocks(axis.size());

    auto eval = [&](int i, int mc_workers) {
        const Point pt = apply_axis(s, req, axis[i]);
        // optimizations are shared between om / dm / hybrid rows of the same point
        std::optional<OptimizationResult> opt[2][2];
        auto optimum = [&](Mode mode, Metric metric) -> const OptimizationResult& {
            auto& slot = opt[mode == Mode::om ? 0 : 1][metric == Metric::ecr ? 0 : 1];
            if (!slot) slot = maximize(pt.s, pt.uav, mode, metric);
            return *slot;
        };

        for (SweepMode sm : req.modes) {
            std::vector<Cell> row{axis[i], std::string(to_string(sm))};
            if (hybrid) row.emplace_back(std::monostate{});
            std::vector<Cell> mc_vals, mc_errs;
            for (SweepMetric m : req.metrics) {
                if (is_opt(m)) {
                    const Metric metric = m == SweepMetric::ecr_opt ? Metric::ecr : Metric::csc;
                    const OptimizationResult* r = nullptr;
                    if (sm == SweepMode::hybrid) {
                        const auto& om = optimum(Mode::om, metric);
                        const auto& dm = optimum(Mode::dm, metric);
                        const bool pick_om = om.objective >= dm.objective;
                        r = pick_om ? &om : &dm;
                        row[2] = std::string(pick_om ? "om" : "dm");
                    } else {
                        r = &optimum(sm == SweepMode::om ? Mode::om : Mode::dm, metric);
                    }
                    row.emplace_back(r->objective);
                    row.push_back(dbm_cell(*r));
                    if (metric == Metric::ecr) row.push_back(r->r_b_opt ? Cell(*r->r_b_opt) : Cell(std::monostate{}));
                    row.emplace_back(std::string(r->feasible ? to_string(r->binding) : ""));
                    row.emplace_back(std::string(r->feasible ? "true" : "false"));
                    continue;
                }
                const Mode mode = sm == SweepMode::om ? Mode::om : Mode::dm;
                const double w = band(pt.s, mode).bandwidth_hz;
                const double gth = snr_threshold(pt.s.r_b, w);
                std::optional<McEstimate> e;
                switch (m) {
                case SweepMetric::dep:
                    row.emplace_back(expected_min_dep(pt.s, pt.uav, pt.p_a, mode).value);
                    if (req.mc) e = mc_expected_min_dep(pt.s, pt.uav, pt.p_a, mode, req.mc_samples, req.seed, mc_workers);
                    break;
                case SweepMetric::p_out:
                    row.emplace_back(outage(pt.s, pt.uav, pt.p_a, gth, mode));
                    if (req.mc) e = mc_outage(pt.s, pt.uav, pt.p_a, gth, mode, req.mc_samples, req.seed, mc_workers);
                    break;
                case SweepMetric::ecr:
                    row.emplace_back(ecr(pt.s.r_b, outage(pt.s, pt.uav, pt.p_a, gth, mode)));
                    if (req.mc) {
                        e = mc_outage(pt.s, pt.uav, pt.p_a, gth, mode, req.mc_samples, req.seed, mc_workers);
                        e->mean = ecr(pt.s.r_b, e->mean);
                        e->std_error *= pt.s.r_b;
                    }
                    break;
                default:
                    row.emplace_back(csc(pt.s, pt.uav, pt.p_a, mode));
                    if (req.mc) e = mc_ergodic_capacity(pt.s, pt.uav, pt.p_a, mode, req.mc_samples, req.seed, mc_workers);
                    break;
                }
                if (e) {
                    mc_vals.emplace_back(e->mean);
                    mc_errs.emplace_back(e->std_error);
                }
            }
            if (req.mc) {
                if (mc_vals.empty()) {
                    mc_vals.assign(mc_metrics.size(), std::monostate{});
                    mc_errs.assign(mc_metrics.size(), std::monostate{});
                }
                row.insert(row.end(), mc_vals.begin(), mc_vals.end());
                row.insert(row.end(), mc_errs.begin(), mc_errs.end());
            }
            blocks[i].push_back(std::move(row));
        }
    };

    const int n = static_cast<int>(axis.size());
    if (req.mc) {
        for (int i = 0; i < n; ++i) eval(i, req.workers);
    } else {
        parallel_for(n, req.workers, [&](int i) { eval(i, 1); });
    }
    for (auto& b : blocks)
        for (auto& r : b) t.rows.push_back(std::move(r));
    return t;
}

Table run_mode_map(const Scenario& s, Metric metric, double x_from, double x_to, int points, int workers) {
    if (points < 2) throw RequestError("mode map needs at least 2 positions");
    Table t;
    t.meta = base_metadata(s, s.seed);
    t.meta.emplace_back("command", std::string("mode-map metric=") + to_string(metric) + " from=" + format_number(x_from) +
                                       " to=" + format_number(x_to) + " points=" + std::to_string(points));
    t.columns = {"x_a", "metric", "objective_om_bps", "objective_dm_bps", "hybrid_bps", "selected",
                 "p_a_opt_om_dbm", "p_a_opt_dm_dbm"};
    const std::vector<double> xs = linspace(x_from, x_to, points);
    t.rows.resize(xs.size());
    parallel_for(points, workers, [&](int i) {
        NodePosition uav = s.alice;
        uav.x = xs[i];
        const ModeDecision d = select_mode(s, uav, metric);
        t.rows[i] = {xs[i],
                     std::string(to_string(metric)),
                     d.objective_om,
                     d.objective_dm,
                     d.hybrid_objective(),
                     std::string(to_string(d.indicator)),
                     dbm_cell(d.om),
                     dbm_cell(d.dm)};
    });
    return t;
}

Table run_optimize(const Scenario& s) {
    Table t;
    t.meta = base_metadata(s, s.seed);
    t.meta.emplace_back("command", "optimize x_a=" + format_number(s.alice.x));
    t.columns = {"metric", "mode", "feasible", "objective_bps", "p_a_opt_dbm", "r_b_opt_bps", "binding", "dep_at_opt"};
    for (Metric metric : {Metric::ecr, Metric::csc}) {
        const ModeDecision d = select_mode(s, s.alice, metric);
        for (const auto& [name, r] : {std::pair<std::string, const OptimizationResult*>{"om", &d.om},
                                      {"dm", &d.dm},
                                      {std::string("hybrid:") + to_string(d.indicator),
                                       d.indicator == Mode::om ? &d.om : &d.dm}}) {
            t.rows.push_back({std::string(to_string(metric)), name, std::string(r->feasible ? "true" : "false"),
                              r->objective, dbm_cell(*r), r->r_b_opt ? Cell(*r->r_b_opt) : Cell(std::monostate{}),
                              std::string(r->feasible ? to_string(r->binding) : ""), r->dep_at_opt});
        }
    }
    return t;
}

Table run_validation(const Scenario& s, std::uint64_t n, std::uint64_t seed, int workers, bool& all_pass) {
    if (n < 1000) throw RequestError("validation needs at least 1000 samples per cell");
    Table t;
    t.meta = base_metadata(s, seed);
    t.meta.emplace_back("command", "validate samples=" + std::to_string(n));
    t.columns = {"check", "mode", "x_a", "p_a_dbm", "rho_db", "r_b_bps", "analytic", "mc", "mc_stderr", "tolerance", "gap",
                 "pass"};
    all_pass = true;
    const double xs[] = {400.0, 1000.0, 1360.0, 2000.0};
    const double ps[] = {5.0, 15.0, 25.0};
    const double rhos[] = {2.0, 4.0};
    const double rates[] = {0.5e6, 1e6, 2e6};

    auto add = [&](const char* check, Mode mode, double x, double p_dbm, double rho_db, Cell rate, double analytic,
                   const McEstimate& e, double base_tol) {
        const double tol = std::max(base_tol, 3.0 * e.std_error);
        const double gap = analytic - e.mean;
        const bool pass = std::abs(gap) <= tol;
        all_pass = all_pass && pass;
        t.rows.push_back({std::string(check), std::string(to_string(mode)), x, p_dbm, rho_db, rate, analytic, e.mean,
                          e.std_error, tol, gap, std::string(pass ? "pass" : "FAIL")});
    };

    for (const char* check : {"dep", "outage", "csc"}) {
        for (Mode mode : {Mode::om, Mode::dm}) {
            for (double x : xs) {
                for (double p_dbm : ps) {
                    for (double rho_db : rhos) {
                        Scenario sc = s;
                        sc.noise.rho = db_to_linear(rho_db);
                        NodePosition uav = sc.alice;
                        uav.x = x;
                        sc.alice = uav;
                        const double p = dbm_to_mw(p_dbm);
                        const std::string c = check;
                        if (c == "dep") {
                            add(check, mode, x, p_dbm, rho_db, std::monostate{}, expected_min_dep(sc, uav, p, mode).value,
                                mc_expected_min_dep(sc, uav, p, mode, n, seed, workers), 0.02);
                        } else if (c == "outage") {
                            for (double r : rates) {
                                const double g = snr_threshold(r, band(sc, mode).bandwidth_hz);
                                add(check, mode, x, p_dbm, rho_db, r, outage(sc, uav, p, g, mode),
                                    mc_outage(sc, uav, p, g, mode, n, seed, workers), 0.02);
                            }
                        } else {
                            const double a = csc(sc, uav, p, mode);
                            add(check, mode, x, p_dbm, rho_db, std::monostate{}, a,
                                mc_ergodic_capacity(sc, uav, p, mode, n, seed, workers), 0.05 * std::abs(a));
                        }
                    }
                }
            }
        }
    }
    return t;
}

} // namespace a2g

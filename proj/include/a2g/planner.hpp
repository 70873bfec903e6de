#pragma once

#include "a2g/scenario.hpp"

#include <optional>

namespace a2g {

enum class Binding { covertness, power, none };
enum class Metric { ecr, csc };

const char* to_string(Binding b);
const char* to_string(Metric m);

struct OptimizationResult {
    double p_a_opt = 0.0;               // mW
    std::optional<double> r_b_opt;      // bit/s, ECR problems only
    double objective = 0.0;             // bit/s
    Binding binding = Binding::none;
    bool feasible = false;
    double dep_at_opt = 1.0;
};

struct ModeDecision {
    Mode indicator = Mode::om;
    double objective_om = 0.0;
    double objective_dm = 0.0;
    Metric metric = Metric::ecr;
    OptimizationResult om;
    OptimizationResult dm;

    double hybrid_objective() const { return indicator == Mode::om ? objective_om : objective_dm; }
};

/// DEP slack used for every covertness check.
inline constexpr double kConstraintSlack = 1e-9;

/// Largest R_b on the ECR grid: W log2(1 + rho P_max G L_LoS / sigma_n2),
/// i.e. unit fading, the best lobe and the lowest noise draw.
double ecr_rate_ceiling(const Scenario& s, const NodePosition& uav, Mode mode);

/// Largest p in (0, p_max] with E[P_ew*](p) >= 1 - eps - slack, by
/// bisection to relative tolerance rel_tol. Returns 0 when none exists.
double covert_power_limit(const Scenario& s, const NodePosition& uav, Mode mode, double rel_tol = 1e-6);

/// Grid search over log-spaced P_a x linear R_b (Scenario::grid). The
/// covertness boundary power joins the power candidates, and the best R_b
/// is polished by golden section between its grid neighbours.
OptimizationResult maximize_ecr(const Scenario& s, const NodePosition& uav, Mode mode);

/// CSC grows with P_a and the DEP falls with it, so the optimum is
/// min(P_max, covertness boundary).
OptimizationResult maximize_csc(const Scenario& s, const NodePosition& uav, Mode mode);

OptimizationResult maximize(const Scenario& s, const NodePosition& uav, Mode mode, Metric metric);

/// Runs both modes; OM wins ties.
ModeDecision select_mode(const Scenario& s, const NodePosition& uav, Metric metric);

} // namespace a2g

#pragma once

#include "a2g/links.hpp"

#include <stdexcept>
#include <vector>

namespace a2g {

class DetectionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Willie's best radiometer threshold interval and the resulting DEP for a
/// known received signal power.
struct DepResult {
    double tau_lo = 0.0;
    double tau_hi = 0.0;
    double p_ew_min = 1.0;
};

/// One (Willie lobe, channel state) branch of the expected DEP.
struct DepTerm {
    Lobe willie_lobe = Lobe::main;
    LinkState state = LinkState::los;
    double weight = 0.0;     // P_w^A * P_aw^B
    double rho_bar = 0.0;    // received-power cutoff below which the detector errs
    double cdf = 0.0;        // P(|h|^2 <= rho_bar)
    double cond_mean = 0.0;  // E[|h|^2 | |h|^2 <= rho_bar]
    double value = 0.0;      // branch DEP before weighting
};

struct ExpectedDep {
    double value = 1.0;
    Mode mode = Mode::om;
    std::vector<DepTerm> breakdown;
};

/// k_a is the received signal power at Willie (mW). Throws DetectionError
/// when rho <= 1 or k_a < 0.
DepResult min_dep_given_received_power(double k_a, const NoiseModel& n);

/// Partial moment int_0^a x f(x) dx of unit-mean Rician power, using the
/// exponential Marcum approximation for the CDF.
double truncated_mean_rician(double a, double k);

/// Partial moment int_0^a x f(x) dx under the Alzer gamma CDF.
double truncated_mean_nakagami(double a, int s);

ExpectedDep expected_min_dep(const LinkTerms& willie, const NoiseModel& n, double p_a);

ExpectedDep expected_min_dep_om(const Scenario& s, const NodePosition& uav, double p_a);
ExpectedDep expected_min_dep_dm(const Scenario& s, const NodePosition& uav, double p_a);
ExpectedDep expected_min_dep(const Scenario& s, const NodePosition& uav, double p_a, Mode mode);

} // namespace a2g

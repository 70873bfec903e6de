#pragma once

#include "a2g/channel.hpp"
#include "a2g/geometry.hpp"

#include <cstdint>
#include <string>

namespace a2g {

enum class Mode { om, dm };

const char* to_string(Mode m);

/// Per-mode propagation bundle. OM links fade with `rician`, DM links with
/// `nakagami`; the other law is ignored.
struct BandModel {
    PathLoss los;
    PathLoss nlos;
    double bandwidth_hz = 1.0;
    RicianLaw rician;
    NakagamiLaw nakagami;
};

struct PlannerGrid {
    int power_points = 200;
    int rate_points = 200;
    double p_min_ratio = 1e-6;  // lowest grid power = p_max * p_min_ratio
};

/// Everything needed to evaluate one operating point. All internal units
/// are linear: powers in mW, ratios linear, rates in bit/s.
struct Scenario {
    NodePosition alice{1000.0, 0.0, 500.0};
    NodePosition bob{-500.0, 0.0, 0.0};
    NodePosition willie{1000.0, 0.0, 0.0};
    double d_aw_min = 300.0;
    double d_aw_max = 1500.0;
    double p_max = 100.0;
    double epsilon = 0.2;
    NoiseModel noise;
    BandModel om;
    BandModel dm;
    AntennaSpec alice_ant;
    AntennaSpec bob_ant;
    AntennaSpec willie_ant;
    SideLobeFormula side_lobe = SideLobeFormula::standard;
    SCurveParams scurve;
    double r_b = 1e6;
    std::uint64_t seed = 1;
    PlannerGrid grid;
    bool rician_k_db = true;  // how k0 / k_half_pi were given; metadata only
};

/// Table II network parameters with the documented readings (Rician
/// factors as dB, R_b as an absolute rate, UPA half-power beamwidths).
Scenario table2_defaults();

double db_to_linear(double db);
double linear_to_db(double x);
double dbm_to_mw(double dbm);
double mw_to_dbm(double mw);

const BandModel& band(const Scenario& s, Mode m);

double band_path_loss(const BandModel& b, LinkState state, double d);

/// Geometry of one UAV -> ground link.
struct LinkView {
    double d = 0.0;
    double theta_deg = 0.0;
    double theta_rad = 0.0;
    double p_los = 0.0;
};

LinkView link_view(const Scenario& s, const NodePosition& uav, const NodePosition& ground);

/// Throws GeometryError when d_aw at `uav` is outside [d_aw_min, d_aw_max].
void check_safe_distance(const Scenario& s, const NodePosition& uav);
bool within_safe_distance(const Scenario& s, const NodePosition& uav);

} // namespace a2g

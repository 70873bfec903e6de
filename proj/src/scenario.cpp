#include "a2g/scenario.hpp"

#include <cmath>
#include <sstream>

namespace a2g {

const char* to_string(Mode m) { return m == Mode::om ? "om" : "dm"; }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double x) { return 10.0 * std::log10(x); }
double dbm_to_mw(double dbm) { return db_to_linear(dbm); }
double mw_to_dbm(double mw) { return linear_to_db(mw); }

Scenario table2_defaults() {
    Scenario s;
    s.noise = {dbm_to_mw(-80.0), db_to_linear(2.0)};
    s.p_max = dbm_to_mw(20.0);

    s.om.los = {1e-6, 1.64};
    s.om.nlos = {1e-7, 2.71};
    s.om.bandwidth_hz = 40e6;
    s.om.rician = {db_to_linear(5.0), db_to_linear(15.0)};

    s.dm.los = {std::pow(10.0, -6.11), 2.0};
    s.dm.nlos = {std::pow(10.0, -7.18), 3.0};
    s.dm.bandwidth_hz = 100e6;
    s.dm.nakagami = {3, 2};

    s.alice_ant = default_antenna(6);
    s.bob_ant = default_antenna(18);
    s.willie_ant = default_antenna(18);
    return s;
}

const BandModel& band(const Scenario& s, Mode m) { return m == Mode::om ? s.om : s.dm; }

double band_path_loss(const BandModel& b, LinkState state, double d) {
    return path_loss(d, state == LinkState::los ? b.los : b.nlos);
}

LinkView link_view(const Scenario& s, const NodePosition& uav, const NodePosition& ground) {
    LinkView v;
    v.d = distance(uav, ground);
    v.theta_rad = elevation_angle_rad(uav, ground);
    v.theta_deg = elevation_angle_deg(uav, ground);
    v.p_los = los_probability(v.theta_deg, s.scurve);
    return v;
}

bool within_safe_distance(const Scenario& s, const NodePosition& uav) {
    const double d = distance(uav, s.willie);
    return d >= s.d_aw_min && d <= s.d_aw_max;
}

void check_safe_distance(const Scenario& s, const NodePosition& uav) {
    if (within_safe_distance(s, uav)) return;
    std::ostringstream os;
    os << "alice: d_aw = " << distance(uav, s.willie) << " m is outside the safe band [" << s.d_aw_min
       << ", " << s.d_aw_max << "] m";
    throw GeometryError(os.str());
}

} // namespace a2g

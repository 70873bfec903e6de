#include "a2g/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace a2g {

double distance(const NodePosition& p, const NodePosition& q) {
    return std::hypot(p.x - q.x, p.y - q.y, p.h - q.h);
}

double elevation_angle_rad(const NodePosition& uav, const NodePosition& ground) {
    const double d = distance(uav, ground);
    const double dh = uav.h - ground.h;
    if (!(dh > 0.0) || !(d > 0.0)) {
        std::ostringstream os;
        os << "elevation angle needs the UAV above the ground node (dh = " << dh << ", d = " << d << ")";
        throw GeometryError(os.str());
    }
    return std::asin(std::min(1.0, dh / d));
}

double elevation_angle_deg(const NodePosition& uav, const NodePosition& ground) {
    return elevation_angle_rad(uav, ground) * 180.0 / std::numbers::pi;
}

double los_probability(double theta_deg, const SCurveParams& s) {
    return 1.0 / (1.0 + s.sigma * std::exp(-s.f * (theta_deg - s.sigma)));
}

double upa_half_power_beamwidth(int n_elements) {
    if (n_elements < 1) throw GeometryError("antenna needs at least one element");
    return std::sqrt(3.0) / std::sqrt(static_cast<double>(n_elements));
}

AntennaSpec default_antenna(int n_elements) {
    const double bw = upa_half_power_beamwidth(n_elements);
    return {n_elements, bw, bw};
}

LobeGainTable lobe_gains(const AntennaSpec& a, SideLobeFormula formula) {
    constexpr double pi = std::numbers::pi;
    if (a.n_elements < 1) throw GeometryError("antenna needs at least one element");
    if (!(a.theta_h > 0.0 && a.theta_h <= 2.0 * pi) || !(a.theta_ed > 0.0 && a.theta_ed <= pi)) {
        throw GeometryError("beamwidths must satisfy 0 < theta_h <= 2pi and 0 < theta_ed <= pi");
    }
    const double n = a.n_elements;
    const double root = std::sqrt(n);
    const double arg = formula == SideLobeFormula::standard ? std::sqrt(3.0) / (2.0 * root)
                                                            : 3.0 * pi / (2.0 * root);
    const double c = std::sqrt(3.0) / (2.0 * pi) * std::sin(arg);
    const double num = root - c * n;
    const double den = root - c;
    if (!(den > 0.0) || !(num > 0.0)) {
        std::ostringstream os;
        os << "degenerate array: side-lobe ratio " << num << "/" << den << " for N = " << a.n_elements;
        throw GeometryError(os.str());
    }
    LobeGainTable t;
    t.g_main = n;
    t.g_side = num / den;
    t.p_main = (a.theta_h / (2.0 * pi)) * (a.theta_ed / pi);
    t.p_side = 1.0 - t.p_main;
    return t;
}

double boresight_separation(const NodePosition& alice, const NodePosition& bob,
                            const NodePosition& willie) {
    const double ux = bob.x - alice.x, uy = bob.y - alice.y, uh = bob.h - alice.h;
    const double vx = willie.x - alice.x, vy = willie.y - alice.y, vh = willie.h - alice.h;
    const double nu = std::hypot(ux, uy, uh);
    const double nv = std::hypot(vx, vy, vh);
    if (nu == 0.0 || nv == 0.0) throw GeometryError("boresight undefined for coincident nodes");
    // atan2 keeps small separations accurate where acos(dot) would not
    const double cx = uy * vh - uh * vy, cy = uh * vx - ux * vh, cz = ux * vy - uy * vx;
    return std::atan2(std::hypot(cx, cy, cz), ux * vx + uy * vy + uh * vh);
}

Lobe alice_lobe_toward(const NodePosition& alice, const NodePosition& bob, const NodePosition& willie,
                       const AntennaSpec& alice_ant) {
    return boresight_separation(alice, bob, willie) <= alice_ant.theta_ed ? Lobe::main : Lobe::side;
}

double alice_willie_gain(const NodePosition& alice, const NodePosition& bob, const NodePosition& willie,
                         const AntennaSpec& alice_ant, const LobeGainTable& alice_gains,
                         double willie_lobe_gain) {
    const bool main = alice_lobe_toward(alice, bob, willie, alice_ant) == Lobe::main;
    return willie_lobe_gain * (main ? alice_gains.g_main : alice_gains.g_side);
}

} // namespace a2g

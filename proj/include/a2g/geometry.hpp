#pragma once

#include <stdexcept>

namespace a2g {

class GeometryError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Cartesian position in metres; h is height above ground.
struct NodePosition {
    double x = 0.0;
    double y = 0.0;
    double h = 0.0;
};

/// Uniform planar array description. Beamwidths in radians.
struct AntennaSpec {
    int n_elements = 1;
    double theta_h = 0.0;   // half-power azimuth beamwidth
    double theta_ed = 0.0;  // half-power elevation / depression beamwidth
};

/// Side-lobe gain formula for the sectorized UPA pattern.
///  - standard: sin(sqrt(3) / (2 sqrt(N))) argument, consistent with the
///    sqrt(3)/sqrt(N) half-power beamwidth; positive for every N >= 1.
///  - printed: sin(3 pi / (2 sqrt(N))) argument; negative for N >= 16.
enum class SideLobeFormula { standard, printed };

struct LobeGainTable {
    double g_main = 1.0;
    double g_side = 1.0;
    double p_main = 1.0;
    double p_side = 0.0;
};

enum class Lobe { main, side };

struct SCurveParams {
    double sigma = 4.88;
    double f = 0.429;
};

double distance(const NodePosition& p, const NodePosition& q);

/// Elevation of the UAV seen from a ground node, radians in (0, pi/2].
double elevation_angle_rad(const NodePosition& uav, const NodePosition& ground);

/// Same angle in degrees, as consumed by the LoS S-curve.
double elevation_angle_deg(const NodePosition& uav, const NodePosition& ground);

/// S-curve LoS probability 1 / (1 + sigma exp(-f (theta - sigma))), theta in degrees.
double los_probability(double theta_deg, const SCurveParams& s);

/// Half-power beamwidth sqrt(3)/sqrt(N) of an N-element square UPA (radians).
double upa_half_power_beamwidth(int n_elements);

/// AntennaSpec with both beamwidths set to upa_half_power_beamwidth(n).
AntennaSpec default_antenna(int n_elements);

LobeGainTable lobe_gains(const AntennaSpec& a, SideLobeFormula formula = SideLobeFormula::standard);

/// Angle (radians) between the boresight Alice->Bob and the ray Alice->Willie.
double boresight_separation(const NodePosition& alice, const NodePosition& bob,
                            const NodePosition& willie);

/// Alice's lobe toward Willie when her main lobe is steered at Bob: main
/// iff the boresight separation is within theta_ed.
Lobe alice_lobe_toward(const NodePosition& alice, const NodePosition& bob, const NodePosition& willie,
                       const AntennaSpec& alice_ant);

/// G_w^A * (G_a^M or G_a^S) for the Alice->Willie link.
double alice_willie_gain(const NodePosition& alice, const NodePosition& bob, const NodePosition& willie,
                         const AntennaSpec& alice_ant, const LobeGainTable& alice_gains,
                         double willie_lobe_gain);

} // namespace a2g

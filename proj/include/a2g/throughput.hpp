#pragma once

#include "a2g/links.hpp"

namespace a2g {

struct LinkMetrics {
    double p_out = 1.0;
    double ecr = 0.0;  // bit/s
    double csc = 0.0;  // bit/s
    Mode mode = Mode::om;
};

/// gamma_th = 2^{r_b / w} - 1.
double snr_threshold(double r_b, double w);

/// Outage at Bob averaged over channel state, Bob's lobe (DM) and Bob's
/// noise-uncertainty draw.
double outage(const LinkTerms& bob, const NoiseModel& n, double p_a, double gamma_th);
double outage_om(const Scenario& s, const NodePosition& uav, double p_a, double gamma_th);
double outage_dm(const Scenario& s, const NodePosition& uav, double p_a, double gamma_th);
double outage(const Scenario& s, const NodePosition& uav, double p_a, double gamma_th, Mode mode);

double ecr(double r_b, double p_out);

/// Ergodic capacity in bit/s via the Li2 representation; the fading
/// integral is done by quadrature against the exact fading density.
double csc(const LinkTerms& bob, const NoiseModel& n, double p_a, double bandwidth_hz);
double csc_om(const Scenario& s, const NodePosition& uav, double p_a);
double csc_dm(const Scenario& s, const NodePosition& uav, double p_a);
double csc(const Scenario& s, const NodePosition& uav, double p_a, Mode mode);

LinkMetrics link_metrics(const Scenario& s, const NodePosition& uav, double p_a, double r_b, Mode mode);

} // namespace a2g

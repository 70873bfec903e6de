#include "a2g/links.hpp"

namespace a2g {
namespace {

LinkTerms build(const Scenario& s, const NodePosition& uav, const NodePosition& rx, Mode mode,
                const AntennaSpec* rx_ant, double tx_gain) {
    const LinkView v = link_view(s, uav, rx);
    const BandModel& b = band(s, mode);
    LinkTerms out;
    out.mode = mode;

    struct LobeChoice {
        Lobe lobe;
        double p;
        double g;
    };
    std::array<LobeChoice, 2> lobes{};
    int nl = 0;
    if (mode == Mode::om) {
        lobes[nl++] = {Lobe::main, 1.0, 1.0};
    } else {
        const LobeGainTable g = lobe_gains(*rx_ant, s.side_lobe);
        lobes[nl++] = {Lobe::main, g.p_main, g.g_main};
        lobes[nl++] = {Lobe::side, g.p_side, g.g_side};
    }

    for (int i = 0; i < nl; ++i) {
        for (LinkState st : {LinkState::los, LinkState::nlos}) {
            LinkTerm t;
            t.lobe = lobes[i].lobe;
            t.state = st;
            t.weight = lobes[i].p * (st == LinkState::los ? v.p_los : 1.0 - v.p_los);
            t.gain = tx_gain * lobes[i].g;
            t.loss = band_path_loss(b, st, v.d);
            if (mode == Mode::om) {
                t.k = rician_factor(v.theta_rad, b.rician, st);
            } else {
                t.s = st == LinkState::los ? b.nakagami.s_los : b.nakagami.s_nlos;
            }
            out.t[out.n++] = t;
        }
    }
    return out;
}

} // namespace

LinkTerms willie_terms(const Scenario& s, const NodePosition& uav, Mode mode) {
    if (mode == Mode::om) return build(s, uav, s.willie, mode, nullptr, 1.0);
    const LobeGainTable ga = lobe_gains(s.alice_ant, s.side_lobe);
    const bool main = alice_lobe_toward(uav, s.bob, s.willie, s.alice_ant) == Lobe::main;
    return build(s, uav, s.willie, mode, &s.willie_ant, main ? ga.g_main : ga.g_side);
}

LinkTerms bob_terms(const Scenario& s, const NodePosition& uav, Mode mode) {
    if (mode == Mode::om) return build(s, uav, s.bob, mode, nullptr, 1.0);
    const LobeGainTable ga = lobe_gains(s.alice_ant, s.side_lobe);
    return build(s, uav, s.bob, mode, &s.bob_ant, ga.g_main);
}

} // namespace a2g

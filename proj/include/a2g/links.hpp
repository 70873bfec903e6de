#pragma once

#include "a2g/scenario.hpp"

#include <array>

namespace a2g {

/// One (receiver lobe, channel state) branch of a link mixture. OM links
/// have a single lobe with gain 1.
struct LinkTerm {
    double weight = 0.0;  // P^A * P^B
    Lobe lobe = Lobe::main;
    LinkState state = LinkState::los;
    double gain = 1.0;  // transmit * receive antenna gain
    double loss = 0.0;  // path loss
    double k = 0.0;     // Rician factor (OM)
    int s = 1;          // Nakagami shape (DM)
};

struct LinkTerms {
    Mode mode = Mode::om;
    std::array<LinkTerm, 4> t{};
    int n = 0;

    const LinkTerm* begin() const { return t.data(); }
    const LinkTerm* end() const { return t.data() + n; }
};

/// Alice -> Willie branches. In DM Alice's lobe toward Willie is fixed by
/// geometry and Willie's receive lobe is random.
LinkTerms willie_terms(const Scenario& s, const NodePosition& uav, Mode mode);

/// Alice -> Bob branches. In DM Alice always serves Bob with her main lobe
/// and Bob's receive lobe is random.
LinkTerms bob_terms(const Scenario& s, const NodePosition& uav, Mode mode);

} // namespace a2g

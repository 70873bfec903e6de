#include "a2g/detection.hpp"
#include "a2g/planner.hpp"
#include "a2g/throughput.hpp"

#include <doctest.h>

#include <cmath>

using namespace a2g;

TEST_CASE("vacuous covertness") {
    auto s = table2_defaults();
    s.epsilon = 1.0;
    for (Mode m : {Mode::om, Mode::dm}) {
        const auto e = maximize_ecr(s, s.alice, m);
        CHECK(e.feasible);
        CHECK(e.binding != Binding::covertness);
        const auto c = maximize_csc(s, s.alice, m);
        CHECK(c.p_a_opt == s.p_max);
        CHECK(c.binding == Binding::power);
    }
}

TEST_CASE("near-zero epsilon forces silence") {
    auto s = table2_defaults();
    const double loose = maximize_ecr(s, s.alice, Mode::om).objective;
    s.epsilon = 1e-7;
    for (Mode m : {Mode::om, Mode::dm}) {
        const auto e = maximize_ecr(s, s.alice, m);
        CHECK(e.objective < 1e-3 * loose);
        const auto c = maximize_csc(s, s.alice, m);
        CHECK(c.p_a_opt < 1e-3 * s.p_max);
    }
}

TEST_CASE("csc boundary point") {
    const auto s = table2_defaults();
    const auto r = maximize_csc(s, s.alice, Mode::om);
    REQUIRE(r.feasible);
    CHECK(r.binding == Binding::covertness);
    const double dep = expected_min_dep(s, s.alice, r.p_a_opt, Mode::om).value;
    CHECK(std::abs(dep - (1.0 - s.epsilon)) <= 1e-4);
    CHECK(r.objective == doctest::Approx(csc(s, s.alice, r.p_a_opt, Mode::om)));
    CHECK(covert_power_limit(s, s.alice, Mode::om) == doctest::Approx(r.p_a_opt).epsilon(1e-6));
}

TEST_CASE("dm tolerates more power at 1360 m") {
    const auto s = table2_defaults();
    const NodePosition uav{1360.0, 0.0, 500.0};
    const auto om = maximize_csc(s, uav, Mode::om);
    const auto dm = maximize_csc(s, uav, Mode::dm);
    CHECK(dm.p_a_opt > om.p_a_opt);
}

TEST_CASE("ecr optimum re-evaluates feasible and beats its neighbours") {
    const auto s = table2_defaults();
    for (double x : {400.0, 1000.0, 1360.0, 2000.0})
        for (Mode m : {Mode::om, Mode::dm}) {
            const NodePosition uav{x, 0.0, 500.0};
            const auto r = maximize_ecr(s, uav, m);
            REQUIRE(r.feasible);
            REQUIRE(r.r_b_opt);
            CHECK(expected_min_dep(s, uav, r.p_a_opt, m).value >= 1.0 - s.epsilon - 1e-4);
            CHECK(r.dep_at_opt == doctest::Approx(expected_min_dep(s, uav, r.p_a_opt, m).value));
            const double w = band(s, m).bandwidth_hz;
            CHECK(r.objective == doctest::Approx(ecr(*r.r_b_opt, outage(s, uav, r.p_a_opt, snr_threshold(*r.r_b_opt, w), m))));
            for (double f : {0.97, 1.03})
                CHECK(ecr(*r.r_b_opt * f, outage(s, uav, r.p_a_opt, snr_threshold(*r.r_b_opt * f, w), m)) <=
                      r.objective * (1.0 + 1e-9));
            CHECK(*r.r_b_opt <= ecr_rate_ceiling(s, uav, m));
        }
}

TEST_CASE("refining the ecr grid keeps the objective") {
    auto s = table2_defaults();
    for (Mode m : {Mode::om, Mode::dm}) {
        const double base = maximize_ecr(s, s.alice, m).objective;
        auto fine = s;
        fine.grid.power_points *= 2;
        fine.grid.rate_points *= 2;
        CHECK(maximize_ecr(fine, s.alice, m).objective >= 0.99 * base);
    }
}

TEST_CASE("binding labels") {
    auto s = table2_defaults();
    // low power ceiling: power binds
    s.p_max = dbm_to_mw(0.0);
    CHECK(maximize_csc(s, s.alice, Mode::dm).binding == Binding::power);
    CHECK(maximize_ecr(s, s.alice, Mode::dm).binding == Binding::power);
    CHECK(std::string(to_string(Binding::covertness)) == "covertness");
    CHECK(std::string(to_string(Metric::csc)) == "csc");
}

TEST_CASE("mode selection") {
    const auto s = table2_defaults();
    for (Metric metric : {Metric::ecr, Metric::csc})
        for (double x : {-200.0, 1000.0, 2200.0}) {
            const auto d = select_mode(s, {x, 0.0, 500.0}, metric);
            CHECK(d.hybrid_objective() == std::max(d.objective_om, d.objective_dm));
            CHECK((d.indicator == Mode::om) == (d.objective_om >= d.objective_dm));
        }
    // identical objectives go to OM
    ModeDecision tie;
    tie.objective_om = tie.objective_dm = 0.0;
    CHECK(tie.hybrid_objective() == 0.0);
    auto same = s;
    same.dm = same.om;
    same.dm.rician = same.om.rician;
    const auto d = select_mode(same, same.alice, Metric::csc);
    if (d.objective_om == d.objective_dm) CHECK(d.indicator == Mode::om);
}

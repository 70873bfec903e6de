#include "a2g/geometry.hpp"
#include "a2g/scenario.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace a2g;

TEST_CASE("distances") {
    CHECK(distance({0, 0, 500}, {0, 0, 0}) == 500.0);
    CHECK(distance({1000, 0, 500}, {1000, 0, 0}) == 500.0);
    CHECK(distance({1360, 0, 500}, {1000, 0, 0}) == doctest::Approx(std::sqrt(360.0 * 360.0 + 500.0 * 500.0)));
    CHECK(distance({1360, 0, 500}, {1000, 0, 0}) == doctest::Approx(616.117).epsilon(1e-6));
}

TEST_CASE("elevation angles") {
    CHECK(elevation_angle_deg({0, 0, 500}, {0, 0, 0}) == doctest::Approx(90.0));
    CHECK(elevation_angle_deg({300, 0, 300}, {0, 0, 0}) == doctest::Approx(45.0));
    const double d = std::sqrt(360.0 * 360.0 + 500.0 * 500.0);
    CHECK(elevation_angle_deg({1360, 0, 500}, {1000, 0, 0}) ==
          doctest::Approx(std::asin(500.0 / d) * 180.0 / std::numbers::pi));
    CHECK(elevation_angle_deg({1360, 0, 500}, {1000, 0, 0}) == doctest::Approx(54.25).epsilon(1e-3));
    CHECK_THROWS_AS(elevation_angle_deg({0, 0, 0}, {10, 0, 0}), GeometryError);
    CHECK_THROWS_AS(elevation_angle_rad({0, 0, 0}, {0, 0, 0}), GeometryError);
}

TEST_CASE("los s-curve") {
    const SCurveParams sc;
    CHECK(los_probability(sc.sigma, sc) == doctest::Approx(1.0 / (1.0 + sc.sigma)));
    CHECK(los_probability(90.0, sc) == doctest::Approx(1.0).epsilon(1e-10));
    const long double direct = 1.0L / (1.0L + 4.88L * std::exp(-0.429L * (10.0L - 4.88L)));
    CHECK(los_probability(10.0, sc) == doctest::Approx(static_cast<double>(direct)).epsilon(1e-14));
    double prev = 0.0;
    for (double th = 0.5; th <= 90.0; th += 0.5) {
        const double p = los_probability(th, sc);
        CHECK(p > prev);
        CHECK(p < 1.0 + 1e-15);
        prev = p;
    }
}

TEST_CASE("lobe gains") {
    const auto a18 = default_antenna(18);
    CHECK(a18.theta_h == doctest::Approx(std::sqrt(3.0 / 18.0)));
    const auto g = lobe_gains(a18);
    CHECK(g.g_main == 18.0);
    // standard ratio, recomputed by hand
    const double pi = std::numbers::pi;
    const double c = std::sqrt(3.0) / (2.0 * pi) * std::sin(std::sqrt(3.0) / (2.0 * std::sqrt(18.0)));
    CHECK(g.g_side == doctest::Approx((std::sqrt(18.0) - c * 18.0) / (std::sqrt(18.0) - c)));
    CHECK(g.g_side == doctest::Approx(0.77310).epsilon(1e-4));
    CHECK(lobe_gains(default_antenna(6)).g_side == doctest::Approx(0.79728).epsilon(1e-4));
    CHECK(g.p_main + g.p_side == doctest::Approx(1.0));
    CHECK(g.p_main == doctest::Approx(a18.theta_h / (2 * pi) * a18.theta_ed / pi));

    const auto full = lobe_gains({4, 2.0 * pi, pi});
    CHECK(full.p_main == doctest::Approx(1.0));
    CHECK(full.p_side == doctest::Approx(0.0));

    // the printed argument goes negative from N = 16 up
    CHECK(lobe_gains(default_antenna(6), SideLobeFormula::printed).g_side == doctest::Approx(0.40966).epsilon(1e-4));
    CHECK_THROWS_AS(lobe_gains(default_antenna(18), SideLobeFormula::printed), GeometryError);
    CHECK_THROWS_AS(lobe_gains({0, 1.0, 1.0}), GeometryError);
    CHECK_THROWS_AS(lobe_gains({4, 0.0, 1.0}), GeometryError);
}

TEST_CASE("alice to willie gain") {
    const auto ant = default_antenna(6);
    const auto gt = lobe_gains(ant);
    const NodePosition alice{0, 0, 500}, bob{500, 0, 0};
    // willie on the boresight ray
    const NodePosition w_on{250, 0, 250};
    CHECK(boresight_separation(alice, bob, w_on) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    CHECK(alice_lobe_toward(alice, bob, w_on, ant) == Lobe::main);
    CHECK(alice_willie_gain(alice, bob, w_on, ant, gt, 2.0) == doctest::Approx(6.0 * 2.0));
    // antipodal
    const NodePosition w_back{-500, 0, 1000};
    CHECK(alice_lobe_toward(alice, bob, w_back, ant) == Lobe::side);
    CHECK(alice_willie_gain(alice, bob, w_back, ant, gt, 2.0) == doctest::Approx(gt.g_side * 2.0));

    // the evaluation geometry: willie just inside the half-power cone
    const NodePosition a{1360, 0, 500}, b{-500, 0, 0}, w{1000, 0, 0};
    const double sep = boresight_separation(a, b, w);
    const double u = std::atan2(500.0, 1860.0), v = std::atan2(500.0, 360.0);
    CHECK(sep == doctest::Approx(v - u).epsilon(1e-12));
    AntennaSpec wide = ant;
    wide.theta_ed = sep * 1.001;
    CHECK(alice_lobe_toward(a, b, w, wide) == Lobe::main);
    wide.theta_ed = sep * 0.999;
    CHECK(alice_lobe_toward(a, b, w, wide) == Lobe::side);
}

TEST_CASE("safe distance band") {
    const auto s = table2_defaults();
    CHECK(within_safe_distance(s, s.alice));
    CHECK_FALSE(within_safe_distance(s, {1000, 0, 200}));
    CHECK_THROWS_AS(check_safe_distance(s, {3000, 0, 500}), GeometryError);
}

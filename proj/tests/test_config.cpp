#include "a2g/config.hpp"

#include <doctest.h>

#include <cmath>
#include <string>

using namespace a2g;

namespace {

std::string error_of(const std::string& text, bool allow_unsafe = false) {
    try {
        parse_scenario(text, allow_unsafe);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

bool starts_with(const std::string& s, const std::string& p) { return s.rfind(p, 0) == 0; }

} // namespace

TEST_CASE("empty text gives the default scenario") {
    const auto s = parse_scenario("");
    const auto d = table2_defaults();
    CHECK(scenario_hash(s) == scenario_hash(d));
    CHECK(s.alice_ant.n_elements == 6);
    CHECK(s.bob_ant.n_elements == 18);
    CHECK(s.willie_ant.n_elements == 18);
    CHECK(s.scurve.sigma == 4.88);
    CHECK(s.scurve.f == 0.429);
    CHECK(s.om.los.beta == 1e-6);
    CHECK(s.om.nlos.beta == 1e-7);
    CHECK(s.om.los.alpha == 1.64);
    CHECK(s.om.nlos.alpha == 2.71);
    CHECK(s.dm.los.beta == doctest::Approx(std::pow(10.0, -6.11)));
    CHECK(s.dm.nlos.beta == doctest::Approx(std::pow(10.0, -7.18)));
    CHECK(s.dm.los.alpha == 2.0);
    CHECK(s.dm.nlos.alpha == 3.0);
    CHECK(s.om.rician.k0 == doctest::Approx(std::pow(10.0, 0.5)));
    CHECK(s.om.rician.k_half_pi == doctest::Approx(std::pow(10.0, 1.5)));
    CHECK(s.dm.nakagami.s_los == 3);
    CHECK(s.dm.nakagami.s_nlos == 2);
    CHECK(s.noise.sigma_n2 == doctest::Approx(1e-11));
    CHECK(s.noise.rho == doctest::Approx(std::pow(10.0, 0.2)));
    CHECK(s.r_b == 1e6);
    CHECK(s.epsilon == 0.2);
    CHECK(s.om.bandwidth_hz == 40e6);
    CHECK(s.dm.bandwidth_hz == 100e6);
    CHECK(s.d_aw_min == 300.0);
    CHECK(s.d_aw_max == 1500.0);
    CHECK(s.alice.h == 500.0);
    CHECK(s.bob.x == -500.0);
    CHECK(s.willie.x == 1000.0);
    CHECK(s.p_max == doctest::Approx(100.0));
}

TEST_CASE("comments, units and overrides") {
    const auto s = parse_scenario("# a comment\n\nnoise.rho_db = 4   # trailing\nom.rician.unit = linear\n"
                                  "om.rician.k0 = 2\nom.rician.k_half_pi = 20\nantenna.bob.n = 8\n");
    CHECK(s.noise.rho == doctest::Approx(std::pow(10.0, 0.4)));
    CHECK(s.om.rician.k0 == 2.0);
    CHECK(s.om.rician.k_half_pi == 20.0);
    CHECK_FALSE(s.rician_k_db);
    CHECK(s.bob_ant.n_elements == 8);
    CHECK(s.bob_ant.theta_h == doctest::Approx(std::sqrt(3.0 / 8.0)));
}

TEST_CASE("round trip through the config text") {
    auto s = parse_scenario("alice.x = 1360\npower.p_max_dbm = 23.5\ncovert.epsilon = 0.1\nseed = 99\n");
    const auto back = parse_scenario(scenario_to_config(s, 17));
    CHECK(scenario_hash(back) == scenario_hash(s));
    CHECK(scenario_to_config(back) == scenario_to_config(s));
    CHECK(scenario_hash_hex(s).size() == 16);
    CHECK(scenario_hash(s) != scenario_hash(table2_defaults()));
}

TEST_CASE("field-named errors") {
    CHECK(starts_with(error_of("noise.rho_db = 0\n"), "noise.rho_db"));
    CHECK(starts_with(error_of("noise.rho_db = -1\n"), "noise.rho_db"));
    CHECK(starts_with(error_of("dm.nakagami.s_los = 2.5\n"), "dm.nakagami.s_los"));
    CHECK(starts_with(error_of("dm.nakagami.s_nlos = 0\n"), "dm.nakagami.s_nlos"));
    CHECK(starts_with(error_of("covert.epsilon = 0\n"), "covert.epsilon"));
    CHECK(starts_with(error_of("covert.epsilon = 1.5\n"), "covert.epsilon"));
    CHECK(starts_with(error_of("nosuch.key = 1\n"), "nosuch.key"));
    CHECK(starts_with(error_of("seed = 1\nseed = 2\n"), "seed"));
    CHECK(starts_with(error_of("om.alpha_los = abc\n"), "om.alpha_los"));
    CHECK(starts_with(error_of("om.rician.unit = furlongs\n"), "om.rician.unit"));
    CHECK(starts_with(error_of("antenna.side_lobe = fancy\n"), "antenna.side_lobe"));
    CHECK(error_of("just some words\n").find("expected 'key = value'") != std::string::npos);
    // the printed side-lobe formula breaks down for 18-element arrays
    CHECK_FALSE(error_of("antenna.side_lobe = printed\n").empty());
}

TEST_CASE("safe band") {
    // d_aw = 1500 m exactly is allowed; beyond that needs the override
    CHECK(error_of("alice.x = 2414.2\n").empty());
    CHECK_FALSE(error_of("alice.x = 3000\n").empty());
    CHECK(error_of("alice.x = 3000\n", true).empty());
    CHECK_FALSE(error_of("alice.h = 200\n").empty());
    CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.cfg"), ConfigError);
}

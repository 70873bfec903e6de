#include "a2g/oracle.hpp"
#include "a2g/throughput.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace a2g;

namespace {

// P(s, y) for integer s
double gamma_cdf_int(double y, int s) {
    double term = 1.0, sum = 1.0;
    for (int j = 1; j < s; ++j) {
        term *= y / j;
        sum += term;
    }
    return 1.0 - std::exp(-y) * sum;
}

// outage with the exact fading cdf, averaged over the log-uniform noise
double outage_exact(const LinkTerms& bob, const NoiseModel& n, double p_a, double gamma_th) {
    double total = 0.0;
    for (const auto& t : bob) {
        auto cdf = [&](double y) {
            return bob.mode == Mode::dm ? gamma_cdf_int(t.s * y, t.s) : rician_power_cdf(y, t.k, true);
        };
        const double lr = std::log(n.rho);
        const double v = oracle::simpson(
            [&](double u) { return cdf(gamma_th * n.sigma_n2 * std::exp(u) / (p_a * t.gain * t.loss)); }, -lr, lr,
            1e-10, 32);
        total += t.weight * v / (2.0 * lr);
    }
    return total;
}

// E[W log2(1 + P G L y / sigma^2)] by nested quadrature
double capacity_exact(const LinkTerms& bob, const NoiseModel& n, double p_a, double w) {
    double total = 0.0;
    const double lr = std::log(n.rho);
    for (const auto& t : bob) {
        const double c = p_a * t.gain * t.loss / n.sigma_n2;
        const double y_max = bob.mode == Mode::om ? rician_power_upper(t.k) : gamma_power_upper(t.s);
        auto pdf = [&](double y) { return bob.mode == Mode::om ? oracle::rician_pdf(y, t.k) : oracle::gamma_pdf(y, t.s); };
        const double v = oracle::simpson(
            [&](double u) {
                const double cu = c * std::exp(-u);
                return oracle::simpson([&](double y) { return std::log2(1.0 + cu * y) * pdf(y); }, 0.0, y_max, 1e-9, 16);
            },
            -lr, lr, 1e-8, 8);
        total += t.weight * v / (2.0 * lr);
    }
    return w * total;
}

} // namespace

TEST_CASE("snr threshold and ecr") {
    CHECK(snr_threshold(0.0, 40e6) == 0.0);
    CHECK(snr_threshold(40e6, 40e6) == doctest::Approx(1.0));
    CHECK(snr_threshold(1e6, 40e6) == doctest::Approx(std::pow(2.0, 0.025) - 1.0));
    CHECK(ecr(1e6, 1.0) == 0.0);
    CHECK(ecr(1e6, 0.0) == 1e6);
    CHECK(ecr(1e6, 0.25) == doctest::Approx(0.75e6));
    CHECK_THROWS(snr_threshold(1.0, 0.0));
}

TEST_CASE("outage trivial ends") {
    const auto s = table2_defaults();
    const double p = dbm_to_mw(15.0);
    CHECK(outage_om(s, s.alice, p, 0.0) == 0.0);
    CHECK(outage_dm(s, s.alice, p, 0.0) == 0.0);
    CHECK(outage_om(s, s.alice, 0.0, 0.1) == 1.0);
    CHECK(outage_om(s, s.alice, p, 1e12) == doctest::Approx(1.0));
}

TEST_CASE("outage against monte carlo at the default position") {
    const auto s = table2_defaults();
    const double p = dbm_to_mw(15.0);
    const double g_om = snr_threshold(1e6, s.om.bandwidth_hz);
    const auto mc_om = mc_outage(s, s.alice, p, g_om, Mode::om, 1000000, 3);
    CHECK(std::abs(outage_om(s, s.alice, p, g_om) - mc_om.mean) <= std::max(0.02, 3 * mc_om.std_error));
    // the DM value at this point is one of the documented Alzer misses, so only
    // the exact-cdf reference is held to the oracle here
    const double g_dm = snr_threshold(1e6, s.dm.bandwidth_hz);
    const auto mc_dm = mc_outage(s, s.alice, p, g_dm, Mode::dm, 1000000, 3);
    const double exact = outage_exact(bob_terms(s, s.alice, Mode::dm), s.noise, p, g_dm);
    CHECK(std::abs(exact - mc_dm.mean) <= 4 * mc_dm.std_error + 1e-4);
}

TEST_CASE("dm outage gap is the alzer cdf") {
    // with the exact gamma cdf the closed form structure reproduces MC; the
    // Alzer lower bound on the cdf accounts for the whole gap
    const auto s = table2_defaults();
    const NodePosition uav{400.0, 0.0, 500.0};
    const double p = dbm_to_mw(15.0);
    const double g = snr_threshold(2e6, s.dm.bandwidth_hz);
    const auto bob = bob_terms(s, uav, Mode::dm);
    const double exact = outage_exact(bob, s.noise, p, g);
    const double alzer = outage(bob, s.noise, p, g);
    const auto mc = mc_outage(s, uav, p, g, Mode::dm, 1000000, 5);
    CHECK(std::abs(exact - mc.mean) <= 4 * mc.std_error + 1e-4);
    CHECK(alzer < exact);
}

TEST_CASE("om outage closed form vs exact rician cdf") {
    const auto s = table2_defaults();
    for (double x : {400.0, 1000.0, 2000.0}) {
        const NodePosition uav{x, 0.0, 500.0};
        const double p = dbm_to_mw(15.0);
        const double g = snr_threshold(1e6, s.om.bandwidth_hz);
        const auto bob = bob_terms(s, uav, Mode::om);
        CHECK(std::abs(outage(bob, s.noise, p, g) - outage_exact(bob, s.noise, p, g)) < 0.02);
    }
}

TEST_CASE("outage monotone in power and rate") {
    const auto s = table2_defaults();
    for (Mode m : {Mode::om, Mode::dm}) {
        const double w = band(s, m).bandwidth_hz;
        for (double dbm = 0.0; dbm < 30.0; dbm += 3.0) {
            const double p = dbm_to_mw(dbm);
            CHECK(outage(s, s.alice, 2.0 * p, snr_threshold(1e6, w), m) <= outage(s, s.alice, p, snr_threshold(1e6, w), m));
            CHECK(outage(s, s.alice, p, snr_threshold(2e6, w), m) >= outage(s, s.alice, p, snr_threshold(1e6, w), m));
        }
    }
}

TEST_CASE("csc closed form") {
    const auto s = table2_defaults();
    CHECK(csc_om(s, s.alice, 0.0) == 0.0);
    CHECK(csc_dm(s, s.alice, 0.0) == 0.0);

    const double p = dbm_to_mw(15.0);
    for (Mode m : {Mode::om, Mode::dm}) {
        const double c = csc(s, s.alice, p, m);
        const double ref = capacity_exact(bob_terms(s, s.alice, m), s.noise, p, band(s, m).bandwidth_hz);
        CHECK(c == doctest::Approx(ref).epsilon(1e-5));
        const auto mc = mc_ergodic_capacity(s, s.alice, p, m, 1000000, 9);
        CHECK(std::abs(c - mc.mean) <= std::max(0.05 * c, 3 * mc.std_error));
    }

    auto wide = s;
    wide.dm.bandwidth_hz *= 2.0;
    CHECK(csc_dm(wide, s.alice, p) == doctest::Approx(2.0 * csc_dm(s, s.alice, p)));

    for (Mode m : {Mode::om, Mode::dm}) {
        double prev = 0.0;
        for (double dbm = -10.0; dbm <= 40.0; dbm += 2.5) {
            const double c = csc(s, s.alice, dbm_to_mw(dbm), m);
            CHECK(c > prev);
            prev = c;
        }
    }
}

TEST_CASE("link metrics bundle") {
    const auto s = table2_defaults();
    const auto lm = link_metrics(s, s.alice, dbm_to_mw(15.0), 1e6, Mode::om);
    CHECK(lm.p_out >= 0.0);
    CHECK(lm.p_out <= 1.0);
    CHECK(lm.ecr <= 1e6);
    CHECK(lm.ecr == doctest::Approx(1e6 * (1.0 - lm.p_out)));
    CHECK(lm.csc > 0.0);
}

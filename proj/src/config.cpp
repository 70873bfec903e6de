#include "a2g/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <vector>

namespace a2g {
namespace {

std::string trim(std::string_view v) {
    const auto b = v.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = v.find_last_not_of(" \t\r");
    return std::string(v.substr(b, e - b + 1));
}

[[noreturn]] void fail(const std::string& key, const std::string& what) { throw ConfigError(key + ": " + what); }

double parse_real(const std::string& key, const std::string& val) {
    errno = 0;
    char* end = nullptr;
    const double x = std::strtod(val.c_str(), &end);
    if (val.empty() || end != val.c_str() + val.size() || errno == ERANGE || !std::isfinite(x)) {
        fail(key, "expected a finite number, got '" + val + "'");
    }
    return x;
}

long long parse_integer(const std::string& key, const std::string& val) {
    const double x = parse_real(key, val);
    if (x != std::floor(x) || std::abs(x) > 9.0e15) fail(key, "must be an integer, got '" + val + "'");
    return static_cast<long long>(x);
}

std::uint64_t parse_seed(const std::string& key, const std::string& val) {
    errno = 0;
    char* end = nullptr;
    const unsigned long long x = std::strtoull(val.c_str(), &end, 10);
    if (val.empty() || val[0] == '-' || end != val.c_str() + val.size() || errno == ERANGE) {
        fail(key, "expected a non-negative 64-bit integer, got '" + val + "'");
    }
    return x;
}

std::string num(double x, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

struct Field {
    std::string key;
    std::function<void(Scenario&, const std::string&)> set;
    std::function<std::string(const Scenario&, int)> get;
};

Field real_field(std::string key, std::function<double&(Scenario&)> ref) {
    auto cref = ref;
    return {key,
            [key, ref](Scenario& s, const std::string& v) { ref(s) = parse_real(key, v); },
            [cref](const Scenario& s, int d) { return num(cref(const_cast<Scenario&>(s)), d); }};
}

// Stored linear, read and written through `to_lin` / `from_lin`.
Field unit_field(std::string key, std::function<double&(Scenario&)> ref, double (*to_lin)(double),
                 double (*from_lin)(double)) {
    return {key,
            [key, ref, to_lin](Scenario& s, const std::string& v) { ref(s) = to_lin(parse_real(key, v)); },
            [ref, from_lin](const Scenario& s, int d) { return num(from_lin(ref(const_cast<Scenario&>(s))), d); }};
}

Field int_field(std::string key, std::function<int&(Scenario&)> ref) {
    return {key,
            [key, ref](Scenario& s, const std::string& v) {
                const long long x = parse_integer(key, v);
                if (x < 1 || x > 1000000) fail(key, "must be an integer in [1, 1e6], got '" + v + "'");
                ref(s) = static_cast<int>(x);
            },
            [ref](const Scenario& s, int) { return std::to_string(ref(const_cast<Scenario&>(s))); }};
}

Field antenna_n_field(std::string key, AntennaSpec Scenario::*ant) {
    return {key,
            [key, ant](Scenario& s, const std::string& v) {
                const long long x = parse_integer(key, v);
                if (x < 1 || x > 1000000) fail(key, "must be an integer >= 1, got '" + v + "'");
                // beamwidths follow the array size unless given explicitly (applied later)
                s.*ant = default_antenna(static_cast<int>(x));
            },
            [ant](const Scenario& s, int) { return std::to_string((s.*ant).n_elements); }};
}

double rician_in(const Scenario& s, double x) { return s.rician_k_db ? db_to_linear(x) : x; }
double rician_out(const Scenario& s, double x) { return s.rician_k_db ? linear_to_db(x) : x; }

const std::vector<Field>& fields() {
    static const std::vector<Field> table = [] {
        std::vector<Field> f;
        auto pos = [&](const std::string& who, NodePosition Scenario::*p) {
            f.push_back(real_field(who + ".x", [p](Scenario& s) -> double& { return (s.*p).x; }));
            f.push_back(real_field(who + ".y", [p](Scenario& s) -> double& { return (s.*p).y; }));
            f.push_back(real_field(who + ".h", [p](Scenario& s) -> double& { return (s.*p).h; }));
        };
        pos("alice", &Scenario::alice);
        pos("bob", &Scenario::bob);
        pos("willie", &Scenario::willie);
        f.push_back(real_field("safety.d_aw_min", [](Scenario& s) -> double& { return s.d_aw_min; }));
        f.push_back(real_field("safety.d_aw_max", [](Scenario& s) -> double& { return s.d_aw_max; }));
        f.push_back(unit_field("power.p_max_dbm", [](Scenario& s) -> double& { return s.p_max; }, dbm_to_mw, mw_to_dbm));
        f.push_back(real_field("covert.epsilon", [](Scenario& s) -> double& { return s.epsilon; }));
        f.push_back(unit_field("noise.sigma_n2_dbm", [](Scenario& s) -> double& { return s.noise.sigma_n2; },
                               dbm_to_mw, mw_to_dbm));
        f.push_back(unit_field("noise.rho_db", [](Scenario& s) -> double& { return s.noise.rho; }, db_to_linear,
                               linear_to_db));
        f.push_back(real_field("rate.r_b_bps", [](Scenario& s) -> double& { return s.r_b; }));
        f.push_back(real_field("scurve.sigma", [](Scenario& s) -> double& { return s.scurve.sigma; }));
        f.push_back(real_field("scurve.f", [](Scenario& s) -> double& { return s.scurve.f; }));

        auto ant = [&](const std::string& who, AntennaSpec Scenario::*a) {
            f.push_back(antenna_n_field("antenna." + who + ".n", a));
        };
        ant("alice", &Scenario::alice_ant);
        ant("bob", &Scenario::bob_ant);
        ant("willie", &Scenario::willie_ant);
        auto beam = [&](const std::string& who, AntennaSpec Scenario::*a) {
            f.push_back(real_field("antenna." + who + ".theta_h_rad",
                                   [a](Scenario& s) -> double& { return (s.*a).theta_h; }));
            f.push_back(real_field("antenna." + who + ".theta_ed_rad",
                                   [a](Scenario& s) -> double& { return (s.*a).theta_ed; }));
        };
        beam("alice", &Scenario::alice_ant);
        beam("bob", &Scenario::bob_ant);
        beam("willie", &Scenario::willie_ant);
        f.push_back({"antenna.side_lobe",
                     [](Scenario& s, const std::string& v) {
                         if (v == "standard") s.side_lobe = SideLobeFormula::standard;
                         else if (v == "printed") s.side_lobe = SideLobeFormula::printed;
                         else fail("antenna.side_lobe", "expected 'standard' or 'printed', got '" + v + "'");
                     },
                     [](const Scenario& s, int) {
                         return std::string(s.side_lobe == SideLobeFormula::standard ? "standard" : "printed");
                     }});

        auto bandf = [&](const std::string& m, BandModel Scenario::*b) {
            f.push_back(real_field(m + ".bandwidth_hz", [b](Scenario& s) -> double& { return (s.*b).bandwidth_hz; }));
            f.push_back(real_field(m + ".beta_los", [b](Scenario& s) -> double& { return (s.*b).los.beta; }));
            f.push_back(real_field(m + ".beta_nlos", [b](Scenario& s) -> double& { return (s.*b).nlos.beta; }));
            f.push_back(real_field(m + ".alpha_los", [b](Scenario& s) -> double& { return (s.*b).los.alpha; }));
            f.push_back(real_field(m + ".alpha_nlos", [b](Scenario& s) -> double& { return (s.*b).nlos.alpha; }));
        };
        bandf("om", &Scenario::om);
        f.push_back({"om.rician.unit",
                     [](Scenario& s, const std::string& v) {
                         if (v == "db") s.rician_k_db = true;
                         else if (v == "linear") s.rician_k_db = false;
                         else fail("om.rician.unit", "expected 'db' or 'linear', got '" + v + "'");
                     },
                     [](const Scenario& s, int) { return std::string(s.rician_k_db ? "db" : "linear"); }});
        f.push_back({"om.rician.k0",
                     [](Scenario& s, const std::string& v) { s.om.rician.k0 = rician_in(s, parse_real("om.rician.k0", v)); },
                     [](const Scenario& s, int d) { return num(rician_out(s, s.om.rician.k0), d); }});
        f.push_back({"om.rician.k_half_pi",
                     [](Scenario& s, const std::string& v) {
                         s.om.rician.k_half_pi = rician_in(s, parse_real("om.rician.k_half_pi", v));
                     },
                     [](const Scenario& s, int d) { return num(rician_out(s, s.om.rician.k_half_pi), d); }});
        bandf("dm", &Scenario::dm);
        f.push_back(int_field("dm.nakagami.s_los", [](Scenario& s) -> int& { return s.dm.nakagami.s_los; }));
        f.push_back(int_field("dm.nakagami.s_nlos", [](Scenario& s) -> int& { return s.dm.nakagami.s_nlos; }));
        f.push_back(int_field("planner.power_points", [](Scenario& s) -> int& { return s.grid.power_points; }));
        f.push_back(int_field("planner.rate_points", [](Scenario& s) -> int& { return s.grid.rate_points; }));
        f.push_back(real_field("planner.p_min_ratio", [](Scenario& s) -> double& { return s.grid.p_min_ratio; }));
        f.push_back({"seed", [](Scenario& s, const std::string& v) { s.seed = parse_seed("seed", v); },
                     [](const Scenario& s, int) { return std::to_string(s.seed); }});
        return f;
    }();
    return table;
}

void check(bool ok, const std::string& key, const std::string& what) {
    if (!ok) fail(key, what);
}

void check_antenna(const std::string& who, const AntennaSpec& a, SideLobeFormula f) {
    const double pi = std::numbers::pi;
    check(a.theta_h > 0.0 && a.theta_h <= 2.0 * pi, "antenna." + who + ".theta_h_rad", "must lie in (0, 2pi]");
    check(a.theta_ed > 0.0 && a.theta_ed <= pi, "antenna." + who + ".theta_ed_rad", "must lie in (0, pi]");
    try {
        (void)lobe_gains(a, f);
    } catch (const GeometryError& e) {
        fail("antenna." + who + ".n", e.what());
    }
}

} // namespace

void validate_scenario(const Scenario& s, bool allow_unsafe) {
    check(s.alice.h > 0.0, "alice.h", "UAV height must be positive");
    check(s.bob.h >= 0.0 && s.bob.h < s.alice.h, "bob.h", "must be >= 0 and below the UAV");
    check(s.willie.h >= 0.0 && s.willie.h < s.alice.h, "willie.h", "must be >= 0 and below the UAV");
    check(s.d_aw_min >= 0.0, "safety.d_aw_min", "must be >= 0");
    check(s.d_aw_max > s.d_aw_min, "safety.d_aw_max", "must exceed safety.d_aw_min");
    check(s.p_max > 0.0, "power.p_max_dbm", "must be finite");
    check(s.epsilon > 0.0 && s.epsilon <= 1.0, "covert.epsilon", "must lie in (0, 1]");
    check(s.noise.sigma_n2 > 0.0, "noise.sigma_n2_dbm", "must be finite");
    check(s.noise.rho >= 1.0 + 1e-6, "noise.rho_db",
          "must be > 0 dB (rho = 1 makes Willie's detector perfect)");
    check(s.r_b > 0.0, "rate.r_b_bps", "must be positive");
    check(s.scurve.sigma > 0.0, "scurve.sigma", "must be positive");
    check(s.scurve.f > 0.0, "scurve.f", "must be positive");
    check_antenna("alice", s.alice_ant, s.side_lobe);
    check_antenna("bob", s.bob_ant, s.side_lobe);
    check_antenna("willie", s.willie_ant, s.side_lobe);
    for (const auto& [m, b] : {std::pair<std::string, const BandModel*>{"om", &s.om}, {"dm", &s.dm}}) {
        check(b->bandwidth_hz > 0.0, m + ".bandwidth_hz", "must be positive");
        check(b->los.beta > 0.0, m + ".beta_los", "must be positive");
        check(b->nlos.beta > 0.0, m + ".beta_nlos", "must be positive");
        check(b->los.alpha > 0.0, m + ".alpha_los", "must be positive");
        check(b->nlos.alpha > 0.0, m + ".alpha_nlos", "must be positive");
    }
    check(s.om.rician.k0 > 0.0, "om.rician.k0", "must be positive (linear)");
    check(s.om.rician.k_half_pi >= s.om.rician.k0, "om.rician.k_half_pi", "must be >= om.rician.k0");
    // the Marcum approximation is tabulated up to a = 8000, i.e. k = 3.2e7
    check(s.om.rician.k_half_pi <= 3.2e7, "om.rician.k_half_pi", "exceeds the Marcum approximation range");
    check(s.dm.nakagami.s_los >= 1, "dm.nakagami.s_los", "must be an integer >= 1");
    check(s.dm.nakagami.s_nlos >= 1, "dm.nakagami.s_nlos", "must be an integer >= 1");
    check(s.grid.power_points >= 2, "planner.power_points", "must be >= 2");
    check(s.grid.rate_points >= 2, "planner.rate_points", "must be >= 2");
    check(s.grid.p_min_ratio > 0.0 && s.grid.p_min_ratio < 1.0, "planner.p_min_ratio", "must lie in (0, 1)");
    if (!allow_unsafe) {
        try {
            check_safe_distance(s, s.alice);
        } catch (const GeometryError& e) {
            throw ConfigError(std::string(e.what()) + " (pass --allow-unsafe to override)");
        }
    }
}

Scenario parse_scenario(std::string_view text, bool allow_unsafe, const std::string& origin) {
    std::map<std::string, std::string> kv;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
        }
        const std::string key = trim(std::string_view(t).substr(0, eq));
        const std::string val = trim(std::string_view(t).substr(eq + 1));
        if (key.empty()) throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        if (!kv.emplace(key, val).second) {
            throw ConfigError(key + ": given more than once (" + origin + ":" + std::to_string(lineno) + ")");
        }
    }
    for (const auto& [k, v] : kv) {
        bool known = false;
        for (const Field& f : fields()) known = known || f.key == k;
        if (!known) throw ConfigError(k + ": unknown key");
    }
    Scenario s = table2_defaults();
    for (const Field& f : fields()) {
        const auto it = kv.find(f.key);
        if (it != kv.end()) f.set(s, it->second);
    }
    validate_scenario(s, allow_unsafe);
    return s;
}

Scenario load_scenario(const std::string& path, bool allow_unsafe) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open scenario file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), allow_unsafe, path);
}

std::string scenario_to_config(const Scenario& s, int digits) {
    std::string out;
    for (const Field& f : fields()) out += f.key + " = " + f.get(s, digits) + "\n";
    return out;
}

std::uint64_t scenario_hash(const Scenario& s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : scenario_to_config(s, 17)) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string scenario_hash_hex(const Scenario& s) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(scenario_hash(s)));
    return buf;
}

} // namespace a2g

// a2g-covert: covert air-to-ground link analysis from the command line.
//
// exit codes: 0 ok, 1 a validation check (or a numerical step) failed,
// 2 bad input (flags, scenario file, request).

#include "a2g/config.hpp"
#include "a2g/diagnostics.hpp"
#include "a2g/oracle.hpp"
#include "a2g/sweep.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

int emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        std::cout.flush();
        return std::cout ? 0 : 2;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "a2g-covert: cannot write " << path << "\n";
        return 2;
    }
    f << text;
    return f ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Covert UAV air-to-ground link analysis: OM vs DM, closed forms plus Monte Carlo checks"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    bool allow_unsafe = false;
    bool json = false;
    std::string out_path;
    int workers = 0;
    std::optional<std::uint64_t> seed;
    std::uint64_t samples = 0;
    bool verbose = false;
    bool quiet = false;

    app.add_option("--config", config_path, "Scenario file (flat key = value; omitted keys take defaults)");
    app.add_flag("--allow-unsafe", allow_unsafe, "Accept a UAV position outside the d_aw safe band");
    app.add_flag("--json", json, "Write JSON instead of CSV");
    app.add_option("--out", out_path, "Output file (default stdout)");
    app.add_option("--workers", workers, "Worker threads (0 = hardware concurrency); never changes results")
        ->check(CLI::NonNegativeNumber);
    app.add_option("--seed", seed, "Monte Carlo seed (default: scenario seed)");
    app.add_option("--samples", samples, "Monte Carlo samples per estimate");
    app.add_flag("-v,--verbose", verbose, "Debug diagnostics on stderr");
    app.add_flag("-q,--quiet", quiet, "Suppress warnings");

    auto* defaults = app.add_subcommand("defaults", "Print the default scenario as a config file");

    a2g::SweepRequest req;
    std::string axis = "p_a", metrics = "dep", modes = "om,dm";
    bool mc = false;
    auto* sweep = app.add_subcommand("sweep", "Evaluate metrics along one parameter axis");
    sweep->add_option("--axis", axis, "rho (dB) | p_a (dBm) | x_a (m) | r_b (bit/s) | epsilon | p_max (dBm)")
        ->capture_default_str();
    sweep->add_option("--from", req.from, "First axis value")->capture_default_str();
    sweep->add_option("--to", req.to, "Last axis value")->capture_default_str();
    sweep->add_option("--points", req.points, "Number of axis values (>= 2)")->capture_default_str();
    sweep->add_option("--metrics", metrics, "Comma list of dep, p_out, ecr, csc, ecr_opt, csc_opt")
        ->capture_default_str();
    sweep->add_option("--modes", modes, "Comma list of om, dm, hybrid")->capture_default_str();
    sweep->add_option("--p-a-dbm", req.p_a_dbm, "Transmit power for fixed-power metrics")->capture_default_str();
    sweep->add_flag("--mc", mc, "Append Monte Carlo columns");

    std::string opt_metric = "ecr";
    auto* optimize = app.add_subcommand("optimize", "Optimal power / rate for both modes at the scenario UAV position");
    std::optional<double> opt_x;
    optimize->add_option("--x-a", opt_x, "Override the UAV x coordinate (m)");

    double map_from = -200.0, map_to = 2200.0;
    int map_points = 50;
    auto* mode_map = app.add_subcommand("mode-map", "Hybrid OM/DM selection along the UAV track");
    mode_map->add_option("--metric", opt_metric, "ecr | csc")->capture_default_str();
    mode_map->add_option("--from", map_from, "First x_a (m)")->capture_default_str();
    mode_map->add_option("--to", map_to, "Last x_a (m)")->capture_default_str();
    mode_map->add_option("--points", map_points, "Number of positions")->capture_default_str();

    auto* validate = app.add_subcommand("validate", "Closed forms vs Monte Carlo over the acceptance grid");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    a2g::diag::set_level(quiet ? a2g::diag::Level::quiet : verbose ? a2g::diag::Level::debug : a2g::diag::Level::warn);
    if (workers > 0) a2g::set_default_workers(workers);

    try {
        a2g::Scenario s = config_path.empty() ? a2g::table2_defaults() : a2g::load_scenario(config_path, allow_unsafe);
        if (config_path.empty()) a2g::validate_scenario(s, allow_unsafe);
        const std::uint64_t used_seed = seed.value_or(s.seed);

        if (*defaults) {
            if (!json) return emit(a2g::scenario_to_config(s), out_path);
            a2g::Table t;
            t.meta = a2g::base_metadata(s, used_seed);
            t.columns = {"key", "value"};
            std::istringstream in(a2g::scenario_to_config(s));
            std::string line;
            while (std::getline(in, line)) {
                const auto eq = line.find(" = ");
                t.rows.push_back({line.substr(0, eq), line.substr(eq + 3)});
            }
            return emit(a2g::to_json(t), out_path);
        }

        a2g::Table table;
        int status = 0;
        if (*sweep) {
            req.axis = a2g::parse_axis(axis);
            req.metrics.clear();
            for (const auto& m : split_list(metrics)) req.metrics.push_back(a2g::parse_metric(m));
            req.modes.clear();
            for (const auto& m : split_list(modes)) req.modes.push_back(a2g::parse_mode(m));
            req.mc = mc;
            if (samples) req.mc_samples = samples;
            req.seed = used_seed;
            req.workers = workers;
            table = a2g::run_sweep(s, req);
        } else if (*optimize) {
            if (opt_x) {
                s.alice.x = *opt_x;
                a2g::validate_scenario(s, allow_unsafe);
            }
            table = a2g::run_optimize(s);
        } else if (*mode_map) {
            if (opt_metric != "ecr" && opt_metric != "csc") throw a2g::RequestError("--metric must be ecr or csc");
            const a2g::Metric m = opt_metric == "ecr" ? a2g::Metric::ecr : a2g::Metric::csc;
            table = a2g::run_mode_map(s, m, map_from, map_to, map_points, workers);
        } else if (*validate) {
            bool all_pass = false;
            const std::uint64_t n = samples ? samples : 1000000;
            if (n < 10000) throw a2g::RequestError("validate needs --samples >= 10000");
            table = a2g::run_validation(s, n, used_seed, workers, all_pass);
            std::size_t failed = 0;
            for (const auto& row : table.rows)
                if (std::get<std::string>(row.back()) != "pass") ++failed;
            std::cerr << "validate: " << table.rows.size() - failed << "/" << table.rows.size() << " cells pass\n";
            status = all_pass ? 0 : 1;
        }
        const int w = emit(json ? a2g::to_json(table) : a2g::to_csv(table), out_path);
        return w ? w : status;
    } catch (const a2g::ConfigError& e) {
        std::cerr << "a2g-covert: config error: " << e.what() << "\n";
        return 2;
    } catch (const a2g::RequestError& e) {
        std::cerr << "a2g-covert: bad request: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "a2g-covert: invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "a2g-covert: failed: " << e.what() << "\n";
        return 1;
    }
}

#pragma once

#include "a2g/planner.hpp"
#include "a2g/scenario.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace a2g {

/// Bad sweep / command request (as opposed to a bad scenario file).
class RequestError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline constexpr const char* kToolVersion = "a2g-covert 1.0.0";

/// A cell is empty, a number, or text.
using Cell = std::variant<std::monostate, double, std::string>;

struct Table {
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

/// 10 significant digits; "inf", "-inf", "nan" for non-finite values.
std::string format_number(double x);

/// `# key: value` lines, one header row, then data rows.
std::string to_csv(const Table& t);
/// {"meta": {...}, "columns": [...], "rows": [{column: value}, ...]}
std::string to_json(const Table& t);

/// Metadata block shared by every artifact: tool version, scenario hash,
/// seed and the unit readings.
std::vector<std::pair<std::string, std::string>> base_metadata(const Scenario& s, std::uint64_t seed);

enum class Axis { rho, p_a, x_a, r_b, epsilon, p_max };
enum class SweepMetric { dep, p_out, ecr, csc, ecr_opt, csc_opt };
enum class SweepMode { om, dm, hybrid };

Axis parse_axis(const std::string& name);
SweepMetric parse_metric(const std::string& name);
SweepMode parse_mode(const std::string& name);
const char* to_string(Axis a);
const char* to_string(SweepMetric m);
const char* to_string(SweepMode m);

struct SweepRequest {
    Axis axis = Axis::p_a;
    double from = 0.0;
    double to = 30.0;
    int points = 11;
    std::vector<SweepMetric> metrics{SweepMetric::dep};
    std::vector<SweepMode> modes{SweepMode::om, SweepMode::dm};
    double p_a_dbm = 15.0;  // transmit power for the fixed-power metrics
    bool mc = false;
    std::uint64_t mc_samples = 100000;
    std::uint64_t seed = 1;
    int workers = 0;
};

/// Axis values: rho in dB, p_a / p_max in dBm, x_a in m, r_b in bit/s.
/// Values are linearly spaced and rows come out in axis order, then in the
/// requested mode order. MC columns reuse one seed for every row.
Table run_sweep(const Scenario& s, const SweepRequest& req);

/// Per-position OM / DM optimum and the hybrid choice.
Table run_mode_map(const Scenario& s, Metric metric, double x_from, double x_to, int points, int workers = 0);

/// Both metrics and both modes at the scenario's UAV position.
Table run_optimize(const Scenario& s);

/// Closed form vs Monte Carlo over the acceptance grid: DEP and CSC on
/// x_a x p_a x rho x mode, outage additionally over R_b. Sets all_pass.
Table run_validation(const Scenario& s, std::uint64_t n, std::uint64_t seed, int workers, bool& all_pass);

} // namespace a2g

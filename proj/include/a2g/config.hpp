#pragma once

#include "a2g/scenario.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace a2g {

/// Bad scenario input. The message starts with the offending key.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parses flat `dotted.key = value` text. Blank lines and `#` comments are
/// ignored; unknown or repeated keys are errors. Omitted keys keep their
/// Table II defaults. Powers are read in dBm, rho in dB.
Scenario parse_scenario(std::string_view text, bool allow_unsafe = false, const std::string& origin = "<text>");

/// parse_scenario on a file's contents.
Scenario load_scenario(const std::string& path, bool allow_unsafe = false);

/// Throws ConfigError naming the first field that breaks an invariant.
/// The d_aw safe band is only checked when allow_unsafe is false.
void validate_scenario(const Scenario& s, bool allow_unsafe = false);

/// The scenario as config text, in the same units parse_scenario reads.
/// Feeding the output back reproduces the scenario (to `digits` digits).
std::string scenario_to_config(const Scenario& s, int digits = 12);

/// FNV-1a over the 17-digit config rendering.
std::uint64_t scenario_hash(const Scenario& s);
std::string scenario_hash_hex(const Scenario& s);

} // namespace a2g

#pragma once

#include <string_view>

// Process-wide diagnostic sink (stderr). The verbosity is an atomic; nothing
// else is shared, so numerical code may call these from any thread.
namespace a2g::diag {

enum class Level { quiet = 0, warn = 1, debug = 2 };

void set_level(Level level);
Level level();

void warn(std::string_view message);
void debug(std::string_view message);

} // namespace a2g::diag

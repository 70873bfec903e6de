#include "a2g/diagnostics.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace a2g::diag {
namespace {

std::atomic<int> g_level{static_cast<int>(Level::warn)};
std::mutex g_out;

void emit(const char* tag, std::string_view message) {
    std::lock_guard lock(g_out);
    std::clog << "[a2g " << tag << "] " << message << '\n';
}

} // namespace

void set_level(Level level) { g_level.store(static_cast<int>(level), std::memory_order_relaxed); }

Level level() { return static_cast<Level>(g_level.load(std::memory_order_relaxed)); }

void warn(std::string_view message) {
    if (level() >= Level::warn) emit("warn", message);
}

void debug(std::string_view message) {
    if (level() >= Level::debug) emit("debug", message);
}

} // namespace a2g::diag

#include "qkinetic/log.hpp"

#include <atomic>
#include <iostream>

namespace qkinetic::log {

namespace {
std::atomic<Level> g_level{Level::Warning};
std::atomic<long> g_warnings{0};
constexpr long kPrintedWarnings = 20;
}  // namespace

void set_level(Level level) { g_level = level; }
Level level() { return g_level; }

void info(std::string_view message) {
  if (g_level <= Level::Info) std::clog << "[qkinetic] " << message << '\n';
}

void warn(std::string_view message) {
  const long n = ++g_warnings;
  if (g_level > Level::Warning || n > kPrintedWarnings) return;
  std::clog << "[qkinetic] warning: " << message << '\n';
  if (n == kPrintedWarnings) std::clog << "[qkinetic] further warnings suppressed\n";
}

long warning_count() { return g_warnings; }

}  // namespace qkinetic::log

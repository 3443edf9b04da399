#pragma once

#include <string_view>

namespace qkinetic::log {

enum class Level { Debug = 0, Info = 1, Warning = 2, Silent = 3 };

/// Messages below this level are dropped. Default: Warning.
void set_level(Level level);
Level level();

void info(std::string_view message);
/// Only the first 20 warnings are printed.
void warn(std::string_view message);

/// Number of warnings emitted since start-up (including suppressed ones).
long warning_count();

}  // namespace qkinetic::log

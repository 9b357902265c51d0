#pragma once

#include <string_view>

namespace scorestab::log {

// Level comes from SCORESTAB_LOG (error|warn|info|debug), default warn.
// Output goes to stderr.
void init_from_env();

void warn(std::string_view message);
void info(std::string_view message);
void debug(std::string_view message);

}  // namespace scorestab::log

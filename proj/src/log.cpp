#include "scorestab/log.hpp"

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <memory>
#include <mutex>
#include <string>

namespace scorestab::log {
namespace {

std::shared_ptr<spdlog::logger> logger() {
  static std::once_flag once;
  static std::shared_ptr<spdlog::logger> instance;
  std::call_once(once, [] {
    instance = spdlog::stderr_color_mt("scorestab");
    instance->set_pattern("[%l] %v");
    instance->set_level(spdlog::level::warn);
  });
  return instance;
}

}  // namespace

void init_from_env() {
  const char* raw = std::getenv("SCORESTAB_LOG");
  if (raw == nullptr) return;
  const std::string level(raw);
  if (level == "error") logger()->set_level(spdlog::level::err);
  else if (level == "warn") logger()->set_level(spdlog::level::warn);
  else if (level == "info") logger()->set_level(spdlog::level::info);
  else if (level == "debug") logger()->set_level(spdlog::level::debug);
  else logger()->warn("ignoring unknown SCORESTAB_LOG level '{}'", level);
}

void warn(std::string_view message) { logger()->warn("{}", message); }
void info(std::string_view message) { logger()->info("{}", message); }
void debug(std::string_view message) { logger()->debug("{}", message); }

}  // namespace scorestab::log

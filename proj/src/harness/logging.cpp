#include "rulegoal/harness/logging.hpp"

#include <cstdlib>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

namespace rulegoal::harness {

std::string init_logging() {
  auto logger = spdlog::get("rulegoal");
  if (!logger) logger = spdlog::stderr_color_mt("rulegoal");
  spdlog::set_default_logger(logger);
  spdlog::level::level_enum level = spdlog::level::warn;
  if (const char* env = std::getenv("RULEGOAL_LOG")) {
    level = spdlog::level::from_str(env);
    // from_str maps unknown names to off.
    if (level == spdlog::level::off && std::string(env) != "off") {
      level = spdlog::level::warn;
      spdlog::warn("unknown RULEGOAL_LOG level '{}', using warn", env);
    }
  }
  spdlog::set_level(level);
  return std::string(spdlog::level::to_string_view(level).data(), spdlog::level::to_string_view(level).size());
}

}  // namespace rulegoal::harness

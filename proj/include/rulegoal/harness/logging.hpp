#pragma once

#include <string>

namespace rulegoal::harness {

/// Sets the spdlog level from RULEGOAL_LOG (trace, debug, info, warn, error,
/// off). Unset means warn. Returns the level name in effect.
std::string init_logging();

}  // namespace rulegoal::harness

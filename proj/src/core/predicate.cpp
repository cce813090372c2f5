#include "rulegoal/core/predicate.hpp"

#include <cctype>
#include <stdexcept>

namespace rulegoal {

namespace {

bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
  }
  return true;
}

}  // namespace

bool is_goal_name(std::string_view name) {
  return name.size() > 2 && name.substr(0, 2) == "G_" && is_identifier(name);
}

Predicate::Predicate(PredicateKind kind, std::string name, std::string indication)
    : kind_(kind), name_(std::move(name)), indication_(std::move(indication)) {
  text_ = indication_.empty() ? name_ : name_ + "(" + indication_ + ")";
}

Predicate Predicate::sensor(std::string name, std::string indication) {
  if (!is_identifier(name) || is_goal_name(name)) {
    throw std::invalid_argument("invalid sensor name: '" + name + "'");
  }
  if (!indication.empty() && !is_identifier(indication)) {
    throw std::invalid_argument("invalid sensor indication: '" + indication + "'");
  }
  return Predicate(PredicateKind::sensor, std::move(name), std::move(indication));
}

Predicate Predicate::goal(std::string name) {
  if (!is_goal_name(name)) throw std::invalid_argument("invalid goal name: '" + name + "'");
  return Predicate(PredicateKind::goal, std::move(name), {});
}

Predicate Predicate::action(std::string name) {
  if (!is_identifier(name)) throw std::invalid_argument("invalid action name: '" + name + "'");
  return Predicate(PredicateKind::action, std::move(name), {});
}

}  // namespace rulegoal

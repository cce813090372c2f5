#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace rulegoal {

enum class PredicateKind : std::uint8_t { sensor, goal, action };

/// A nullary predicate of the rule language.
///
/// Sensor predicates pair a sensor name with one indication, e.g. `Right(type3)`;
/// a sensor without indication (`PickedUp`) is written bare. Goal predicates are
/// names from the goal registry and always carry the `G_` prefix so the textual
/// notation stays unambiguous. Action predicates name one agent action.
class Predicate {
 public:
  static Predicate sensor(std::string name, std::string indication = {});
  static Predicate goal(std::string name);
  static Predicate action(std::string name);

  PredicateKind kind() const { return kind_; }
  bool is_sensor() const { return kind_ == PredicateKind::sensor; }
  bool is_goal() const { return kind_ == PredicateKind::goal; }
  bool is_action() const { return kind_ == PredicateKind::action; }

  const std::string& name() const { return name_; }
  const std::string& indication() const { return indication_; }

  /// Serialized form; also the lexicographic ordering key.
  const std::string& text() const { return text_; }

  friend bool operator==(const Predicate& a, const Predicate& b) {
    return a.kind_ == b.kind_ && a.text_ == b.text_;
  }
  friend std::strong_ordering operator<=>(const Predicate& a, const Predicate& b) {
    if (auto c = a.text_ <=> b.text_; c != 0) return c;
    return a.kind_ <=> b.kind_;
  }

 private:
  Predicate(PredicateKind kind, std::string name, std::string indication);

  PredicateKind kind_;
  std::string name_;
  std::string indication_;
  std::string text_;
};

/// True when `name` is a syntactically valid goal name (`G_` followed by an identifier).
bool is_goal_name(std::string_view name);

}  // namespace rulegoal

template <>
struct std::hash<rulegoal::Predicate> {
  std::size_t operator()(const rulegoal::Predicate& p) const noexcept {
    return std::hash<std::string>{}(p.text()) ^ static_cast<std::size_t>(p.kind());
  }
};

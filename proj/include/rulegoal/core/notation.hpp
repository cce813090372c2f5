#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "rulegoal/core/evaluator.hpp"
#include "rulegoal/core/rule.hpp"

// Textual notation of the rule language.
//
//   predicate := goal | sensor
//   goal      := "G_" ident
//   sensor    := ident [ "(" ident ")" ]
//   state     := predicate { ", " predicate }
//   rule      := state ", " action " -> " state
//   policy    := { state " {" action "} " } state
//
// Dump lines append tab separated annotations, numbers with 4 decimals:
//   law line     := rule TAB probability TAB prm TAB prmconc
//   policy line  := policy TAB fitness

namespace rulegoal {

class NotationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Predicate parse_predicate(std::string_view text);
State parse_state(std::string_view text);
EnvironmentRule parse_rule(std::string_view text);
Policy parse_policy(std::string_view text);

/// "0.5000" style, or "undefined".
std::string format_value(std::optional<double> v);

std::string format_law(const EnvironmentRule& r, const Frequency& f);
std::string format_policy(const Policy& p, std::optional<double> fitness);

struct LawLine {
  EnvironmentRule rule;
  std::optional<double> probability;
  std::size_t prm = 0;
  std::size_t prmconc = 0;
};
LawLine parse_law_line(std::string_view line);
std::pair<Policy, std::optional<double>> parse_policy_line(std::string_view line);

}  // namespace rulegoal

#include "rulegoal/core/notation.hpp"

#include <charconv>
#include <fmt/format.h>
#include <vector>

namespace rulegoal {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

std::optional<double> parse_value(std::string_view s) {
  s = trim(s);
  if (s == "undefined") return std::nullopt;
  try {
    std::size_t used = 0;
    double v = std::stod(std::string(s), &used);
    if (used != s.size()) throw NotationError("bad number");
    return v;
  } catch (const std::exception&) {
    throw NotationError("bad numeric field: '" + std::string(s) + "'");
  }
}

std::size_t parse_count(std::string_view s) {
  s = trim(s);
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw NotationError("bad count field: '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

Predicate parse_predicate(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw NotationError("empty predicate");
  try {
    if (auto open = text.find('('); open != std::string_view::npos) {
      if (text.back() != ')') throw NotationError("unbalanced parenthesis in '" + std::string(text) + "'");
      return Predicate::sensor(std::string(text.substr(0, open)),
                               std::string(text.substr(open + 1, text.size() - open - 2)));
    }
    if (is_goal_name(text)) return Predicate::goal(std::string(text));
    return Predicate::sensor(std::string(text));
  } catch (const std::invalid_argument& e) {
    throw NotationError(e.what());
  }
}

State parse_state(std::string_view text) {
  std::vector<Predicate> preds;
  text = trim(text);
  if (text.empty()) return State{};
  for (auto part : split(text, ',')) preds.push_back(parse_predicate(part));
  return State(std::move(preds));
}

EnvironmentRule parse_rule(std::string_view text) {
  auto arrow = text.find("->");
  if (arrow == std::string_view::npos) throw NotationError("rule without '->': " + std::string(text));
  auto lhs = trim(text.substr(0, arrow));
  auto comma = lhs.rfind(',');
  if (comma == std::string_view::npos) throw NotationError("rule without action: " + std::string(text));
  auto action = trim(lhs.substr(comma + 1));
  try {
    return EnvironmentRule(parse_state(lhs.substr(0, comma)), Predicate::action(std::string(action)).name(),
                           parse_state(text.substr(arrow + 2)));
  } catch (const std::invalid_argument& e) {
    throw NotationError(e.what());
  }
}

Policy parse_policy(std::string_view text) {
  std::vector<PolicyStep> steps;
  std::size_t pos = 0;
  while (true) {
    auto open = text.find('{', pos);
    if (open == std::string_view::npos) break;
    auto close = text.find('}', open);
    if (close == std::string_view::npos) throw NotationError("unbalanced brace in policy");
    auto action = trim(text.substr(open + 1, close - open - 1));
    try {
      steps.push_back({parse_state(text.substr(pos, open - pos)), Predicate::action(std::string(action)).name()});
    } catch (const std::invalid_argument& e) {
      throw NotationError(e.what());
    }
    pos = close + 1;
  }
  try {
    return Policy(std::move(steps), parse_state(text.substr(pos)));
  } catch (const std::invalid_argument& e) {
    throw NotationError(e.what());
  }
}

std::string format_value(std::optional<double> v) {
  return v ? fmt::format("{:.4f}", *v) : std::string("undefined");
}

std::string format_law(const EnvironmentRule& r, const Frequency& f) {
  return fmt::format("{}\t{}\t{}\t{}", r.text(), format_value(f.maybe()), f.trials, f.hits);
}

std::string format_policy(const Policy& p, std::optional<double> fitness) {
  return fmt::format("{}\t{}", p.text(), format_value(fitness));
}

LawLine parse_law_line(std::string_view line) {
  auto fields = split(line, '\t');
  if (fields.size() != 4) throw NotationError("law line needs 4 tab separated fields");
  return LawLine{parse_rule(fields[0]), parse_value(fields[1]), parse_count(fields[2]), parse_count(fields[3])};
}

std::pair<Policy, std::optional<double>> parse_policy_line(std::string_view line) {
  auto fields = split(line, '\t');
  if (fields.size() != 2) throw NotationError("policy line needs 2 tab separated fields");
  return {parse_policy(fields[0]), parse_value(fields[1])};
}

}  // namespace rulegoal

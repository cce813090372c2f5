#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <span>

#include "rulegoal/core/evaluator.hpp"

namespace rulegoal {

using Rational = boost::multiprecision::cpp_rational;

// Snapshot-level entry points. Each builds a throwaway Evaluator; learners that
// query repeatedly should hold one Evaluator instead.

bool predicate_true_on(const ReplayBuffer& buffer, const GoalHierarchy& goals, std::size_t index,
                       const Predicate& p);
/// τ ⊨ s for a set of sensor, goal and action predicates; the empty set holds everywhere.
bool holds_on(const ReplayBuffer& buffer, const GoalHierarchy& goals, std::size_t index,
              std::span<const Predicate> s);

std::optional<double> rule_probability(const EnvironmentRule& r, const ReplayBuffer& buffer,
                                       const GoalHierarchy& goals);
std::optional<double> fitness(const Policy& p, const ReplayBuffer& buffer, const GoalHierarchy& goals);
std::optional<Rational> exact_fitness(const Policy& p, const ReplayBuffer& buffer,
                                      const GoalHierarchy& goals);
std::optional<double> frequency_fitness(const Policy& p, const ReplayBuffer& buffer,
                                        const GoalHierarchy& goals);

// Evaluator-level versions.

std::optional<double> rule_probability(const EnvironmentRule& r, Evaluator& eval);
/// Product of the transition probabilities, or nullopt if one is undefined.
std::optional<double> fitness(const Policy& p, Evaluator& eval);
std::optional<Rational> exact_fitness(const Policy& p, Evaluator& eval);
/// E / S over starting and ending points, or nullopt when S = 0.
std::optional<double> frequency_fitness(const Policy& p, Evaluator& eval);

enum class FitnessKind { standard, frequency };

std::optional<double> policy_fitness(const Policy& p, Evaluator& eval, FitnessKind kind);

}  // namespace rulegoal

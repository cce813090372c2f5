#include "rulegoal/core/semantics.hpp"

#include <stdexcept>

namespace rulegoal {

bool predicate_true_on(const ReplayBuffer& buffer, const GoalHierarchy& goals, std::size_t index,
                       const Predicate& p) {
  if (index >= buffer.size()) throw std::out_of_range("tuple index out of range");
  Evaluator eval(buffer, goals);
  return eval.truth(p).test(index);
}

bool holds_on(const ReplayBuffer& buffer, const GoalHierarchy& goals, std::size_t index,
              std::span<const Predicate> s) {
  if (index >= buffer.size()) throw std::out_of_range("tuple index out of range");
  Evaluator eval(buffer, goals);
  for (const auto& p : s) {
    if (!eval.truth(p).test(index)) return false;
  }
  return true;
}

std::optional<double> rule_probability(const EnvironmentRule& r, const ReplayBuffer& buffer,
                                       const GoalHierarchy& goals) {
  Evaluator eval(buffer, goals);
  return rule_probability(r, eval);
}

std::optional<double> fitness(const Policy& p, const ReplayBuffer& buffer, const GoalHierarchy& goals) {
  Evaluator eval(buffer, goals);
  return fitness(p, eval);
}

std::optional<Rational> exact_fitness(const Policy& p, const ReplayBuffer& buffer,
                                      const GoalHierarchy& goals) {
  Evaluator eval(buffer, goals);
  return exact_fitness(p, eval);
}

std::optional<double> frequency_fitness(const Policy& p, const ReplayBuffer& buffer,
                                        const GoalHierarchy& goals) {
  Evaluator eval(buffer, goals);
  return frequency_fitness(p, eval);
}

std::optional<double> rule_probability(const EnvironmentRule& r, Evaluator& eval) {
  return eval.count(r).maybe();
}

std::optional<double> fitness(const Policy& p, Evaluator& eval) {
  double product = 1.0;
  for (std::size_t i = 0; i < p.length(); ++i) {
    const Frequency f = eval.count(p.transition(i));
    if (!f.defined()) return std::nullopt;
    product *= f.value();
  }
  return product;
}

std::optional<Rational> exact_fitness(const Policy& p, Evaluator& eval) {
  Rational product = 1;
  for (std::size_t i = 0; i < p.length(); ++i) {
    const Frequency f = eval.count(p.transition(i));
    if (!f.defined()) return std::nullopt;
    product *= Rational(f.hits, f.trials);
  }
  return product;
}

std::optional<double> frequency_fitness(const Policy& p, Evaluator& eval) {
  return eval.chain_counts(p).frequency().maybe();
}

std::optional<double> policy_fitness(const Policy& p, Evaluator& eval, FitnessKind kind) {
  return kind == FitnessKind::standard ? fitness(p, eval) : frequency_fitness(p, eval);
}

}  // namespace rulegoal

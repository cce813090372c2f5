#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace rulegoal {

/// Seeded random stream with a pinned algorithm.
///
/// The engine is std::mt19937_64, whose output sequence the standard fixes.
/// Bounded integers use rejection sampling on raw engine output rather than
/// std::uniform_int_distribution, whose algorithm is implementation-defined.
/// Child streams are derived by name: seed' = splitmix64(seed ^ fnv1a64(name)).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

  Rng split(std::string_view name) const { return Rng(splitmix64(seed_ ^ fnv1a64(name))); }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next() { return engine_(); }
  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  static std::uint64_t splitmix64(std::uint64_t x);
  static std::uint64_t fnv1a64(std::string_view s);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace rulegoal

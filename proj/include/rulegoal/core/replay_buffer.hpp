#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rulegoal/core/state.hpp"

namespace rulegoal {

/// One recorded transition ⟨S_pre, A, S_post⟩ over sensor predicates.
struct Transition {
  State pre;
  std::string action;
  State post;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Linearly ordered transition history, split into segments.
///
/// Within a segment consecutive transitions chain (S_post of one equals S_pre of
/// the next). A new segment starts after an environment reset; chains and goal
/// achievements never cross segment boundaries.
class ReplayBuffer {
 public:
  ReplayBuffer() = default;
  /// `capacity`: optional cap on stored transitions; whole oldest segments are dropped.
  explicit ReplayBuffer(std::optional<std::size_t> capacity) : capacity_(capacity) {}

  /// The next append opens a new segment.
  void begin_segment() { open_segment_ = true; }

  /// Appends a transition. Throws std::invalid_argument for empty or non-sensor
  /// states and when the chain condition with the previous transition fails.
  void append(Transition t);

  std::size_t size() const { return tuples_.size(); }
  bool empty() const { return tuples_.empty(); }
  const Transition& operator[](std::size_t i) const { return tuples_[i]; }
  const Transition& back() const { return tuples_.back(); }
  const std::vector<Transition>& tuples() const { return tuples_; }

  /// True if tuple `i` is the first of its segment.
  bool segment_start(std::size_t i) const { return starts_[i]; }
  std::size_t segment_count() const;

 private:
  void enforce_capacity();

  std::vector<Transition> tuples_;
  std::vector<bool> starts_;
  bool open_segment_ = true;
  std::optional<std::size_t> capacity_;
};

}  // namespace rulegoal

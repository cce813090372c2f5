#include "rulegoal/core/replay_buffer.hpp"

#include <algorithm>
#include <stdexcept>

namespace rulegoal {

void ReplayBuffer::append(Transition t) {
  if (t.pre.empty() || t.post.empty()) throw std::invalid_argument("transition states must be non-empty");
  if (!t.pre.goals().empty() || !t.post.goals().empty()) {
    throw std::invalid_argument("transition states hold sensor predicates only");
  }
  if (t.action.empty()) throw std::invalid_argument("transition without action");
  if (!open_segment_ && !tuples_.empty() && !(tuples_.back().post == t.pre)) {
    throw std::invalid_argument("chain condition violated: '" + tuples_.back().post.text() +
                                "' then '" + t.pre.text() + "'");
  }
  starts_.push_back(open_segment_ || tuples_.empty());
  tuples_.push_back(std::move(t));
  open_segment_ = false;
  enforce_capacity();
}

std::size_t ReplayBuffer::segment_count() const {
  return static_cast<std::size_t>(std::count(starts_.begin(), starts_.end(), true));
}

void ReplayBuffer::enforce_capacity() {
  if (!capacity_ || tuples_.size() <= *capacity_) return;
  std::size_t drop = 0;
  // Drop whole segments from the front, never the segment being written.
  for (std::size_t i = 1; i < tuples_.size(); ++i) {
    if (!starts_[i]) continue;
    drop = i;
    if (tuples_.size() - i <= *capacity_) break;
  }
  if (drop == 0) return;
  tuples_.erase(tuples_.begin(), tuples_.begin() + static_cast<std::ptrdiff_t>(drop));
  starts_.erase(starts_.begin(), starts_.begin() + static_cast<std::ptrdiff_t>(drop));
}

}  // namespace rulegoal

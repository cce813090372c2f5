#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "rulegoal/core/goals.hpp"
#include "rulegoal/core/replay_buffer.hpp"

namespace rulegoal::harness {

class BufferFileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A recorded buffer with its goal hierarchy.
///
/// Text format, one item per line:
///
///   # comment
///   @goal G_prime = Center(type1), PickedUp
///   @goal G_1 = Center(type1) < G_prime
///   @segment
///   Center(empty), Front(type1) | move | Center(type1), PickedUp
///
/// The primary goal comes first; every other goal names a parent declared
/// before it. `@segment` opens a new segment.
struct RecordedBuffer {
  ReplayBuffer buffer;
  GoalHierarchy goals;
};

RecordedBuffer read_buffer(std::istream& in);
RecordedBuffer load_buffer(const std::filesystem::path& path);
void write_buffer(std::ostream& out, const ReplayBuffer& buffer, const GoalHierarchy& goals);

}  // namespace rulegoal::harness

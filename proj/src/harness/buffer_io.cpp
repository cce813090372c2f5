#include "rulegoal/harness/buffer_io.hpp"

#include <boost/algorithm/string.hpp>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <vector>

#include "rulegoal/core/notation.hpp"

namespace rulegoal::harness {

namespace {

struct GoalLine {
  std::string name;
  State interpretation;
  std::optional<std::string> parent;
};

GoalLine parse_goal_line(const std::string& body) {
  const auto eq = body.find('=');
  if (eq == std::string::npos) throw BufferFileError("@goal line needs '='");
  GoalLine g;
  g.name = boost::trim_copy(body.substr(0, eq));
  std::string rest = body.substr(eq + 1);
  if (const auto lt = rest.find('<'); lt != std::string::npos) {
    g.parent = boost::trim_copy(rest.substr(lt + 1));
    rest = rest.substr(0, lt);
  }
  g.interpretation = parse_state(boost::trim_copy(rest));
  return g;
}

}  // namespace

RecordedBuffer read_buffer(std::istream& in) {
  std::optional<GoalHierarchy> goals;
  std::vector<GoalLine> pending;
  ReplayBuffer buffer;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    boost::trim(line);
    if (line.empty() || line.front() == '#') continue;
    try {
      if (boost::starts_with(line, "@goal ")) {
        GoalLine g = parse_goal_line(line.substr(6));
        if (!goals) {
          if (g.name != kPrimaryGoal || g.parent) throw BufferFileError("the first @goal must be G_prime");
          goals.emplace(g.interpretation);
        } else {
          if (!g.parent) throw BufferFileError("goal " + g.name + " needs a parent");
          goals->adopt_subgoal(g.name, g.interpretation, *g.parent);
        }
      } else if (line == "@segment") {
        buffer.begin_segment();
      } else if (line.front() == '@') {
        throw BufferFileError("unknown directive " + line);
      } else {
        std::vector<std::string> parts;
        boost::split(parts, line, boost::is_any_of("|"));
        if (parts.size() != 3) throw BufferFileError("transition needs 'pre | action | post'");
        for (auto& p : parts) boost::trim(p);
        buffer.append({parse_state(parts[0]), parts[1], parse_state(parts[2])});
      }
    } catch (const std::exception& e) {
      throw BufferFileError("line " + std::to_string(number) + ": " + e.what());
    }
  }
  if (!goals) throw BufferFileError("buffer file declares no goals");
  return {std::move(buffer), std::move(*goals)};
}

RecordedBuffer load_buffer(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw BufferFileError("cannot open buffer file " + path.string());
  return read_buffer(in);
}

void write_buffer(std::ostream& out, const ReplayBuffer& buffer, const GoalHierarchy& goals) {
  out << "@goal " << kPrimaryGoal << " = " << goals.interpretation(kPrimaryGoal).text() << '\n';
  // Parents before children: reverse of most-subordinate-first.
  auto order = goals.subordinate_order();
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (*it == kPrimaryGoal) continue;
    const auto& up = goals.poset().edges().at(*it);
    for (const auto& parent : up) {
      out << "@goal " << *it << " = " << goals.interpretation(*it).text() << " < " << parent << '\n';
      break;
    }
  }
  for (std::size_t i = 0; i < buffer.size(); ++i) {
    if (buffer.segment_start(i)) out << "@segment\n";
    const auto& t = buffer[i];
    out << t.pre.text() << " | " << t.action << " | " << t.post.text() << '\n';
  }
}

}  // namespace rulegoal::harness

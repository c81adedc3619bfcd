#include "bfsvec/validate.hpp"

#include <algorithm>
#include <sstream>

namespace bfsvec {

namespace {

bool valid_id(std::int64_t v, std::size_t n) { return v >= 0 && static_cast<std::size_t>(v) < n; }

void fail(CheckResult& r, std::int64_t vertex, std::optional<std::int64_t> parent, std::string detail) {
  if (!r.passed) return;
  r.passed = false;
  r.vertex = vertex;
  r.parent = parent;
  r.detail = std::move(detail);
}

enum class ChaseState : std::uint8_t { unknown, on_path, done, broken, cyclic };

}  // namespace

std::string_view check_name(TreeCheck check) noexcept {
  switch (check) {
    case TreeCheck::root_self_parent:
      return "root_self_parent";
    case TreeCheck::reachability_closure:
      return "reachability_closure";
    case TreeCheck::tree_edge_exists:
      return "tree_edge_exists";
    case TreeCheck::level_consistency:
      return "level_consistency";
    case TreeCheck::cycle_free:
      return "cycle_free";
  }
  return "unknown";
}

bool ValidationReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

// Memoized pointer chase. A path that revisits one of its own vertices is
// cyclic; one that hits an unreached or invalid parent is broken.
struct Chase {
  std::vector<std::int64_t> level;
  std::vector<ChaseState> state;
  std::vector<std::int64_t> first_cyclic;
};

Chase chase_levels(std::span<const std::int32_t> p, VertexId s) {
  const std::size_t n = p.size();
  Chase c{std::vector<std::int64_t>(n, -1), std::vector<ChaseState>(n, ChaseState::unknown), {}};
  if (!valid_id(s, n)) return c;
  c.level[s] = 0;
  c.state[s] = ChaseState::done;

  std::vector<std::size_t> path;
  for (std::size_t start = 0; start < n; ++start) {
    if (c.state[start] != ChaseState::unknown || p[start] == kUnreached) continue;
    path.clear();
    std::size_t v = start;
    ChaseState outcome = ChaseState::broken;
    std::int64_t base_level = -1;
    for (;;) {
      if (c.state[v] == ChaseState::done) {
        outcome = ChaseState::done;
        base_level = c.level[v];
        break;
      }
      if (c.state[v] == ChaseState::on_path || c.state[v] == ChaseState::cyclic) {
        outcome = ChaseState::cyclic;
        break;
      }
      if (c.state[v] == ChaseState::broken) break;
      const std::int64_t parent = p[v];
      if (parent == kUnreached || !valid_id(parent, n)) {
        c.state[v] = ChaseState::broken;
        break;
      }
      c.state[v] = ChaseState::on_path;
      path.push_back(v);
      v = static_cast<std::size_t>(parent);
    }
    if (outcome == ChaseState::cyclic && !path.empty()) c.first_cyclic.push_back(static_cast<std::int64_t>(start));
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
      if (outcome == ChaseState::done) {
        c.level[*it] = ++base_level;
        c.state[*it] = ChaseState::done;
      } else {
        c.state[*it] = outcome;
      }
    }
  }
  return c;
}

}  // namespace

std::vector<std::int64_t> tree_levels(std::span<const std::int32_t> p, VertexId s) { return chase_levels(p, s).level; }

ValidationReport validate_tree(const CsrGraph& g, VertexId s, std::span<const std::int32_t> p) {
  ValidationReport report;
  const std::size_t n = g.num_vertices();
  if (p.size() != n) {
    for (auto& c : report.checks) fail(c, -1, std::nullopt, "predecessor array size differs from vertex count");
    return report;
  }
  if (!valid_id(s, n)) {
    fail(report[TreeCheck::root_self_parent], s, std::nullopt, "root is not a vertex of the graph");
    return report;
  }

  if (p[s] != s) {
    std::ostringstream os;
    os << "root " << s << " has parent " << p[s];
    fail(report[TreeCheck::root_self_parent], s, p[s], os.str());
  }

  for (std::size_t v = 0; v < n; ++v) {
    const std::int64_t parent = p[v];
    if (parent == kUnreached) continue;
    ++report.reached_vertices;
    if (!valid_id(parent, n)) {
      std::ostringstream os;
      os << "vertex " << v << " has invalid parent value " << parent;
      fail(report[TreeCheck::reachability_closure], static_cast<std::int64_t>(v), parent, os.str());
      continue;
    }
    if (p[parent] == kUnreached) {
      std::ostringstream os;
      os << "vertex " << v << " has unreached parent " << parent;
      fail(report[TreeCheck::reachability_closure], static_cast<std::int64_t>(v), parent, os.str());
    }
    if (static_cast<VertexId>(v) == s) continue;
    const auto adj = g.neighbors(static_cast<VertexId>(parent));
    if (!std::binary_search(adj.begin(), adj.end(), static_cast<VertexId>(v)) &&
        std::find(adj.begin(), adj.end(), static_cast<VertexId>(v)) == adj.end()) {
      std::ostringstream os;
      os << "tree edge " << parent << " -> " << v << " is not in the graph";
      fail(report[TreeCheck::tree_edge_exists], static_cast<std::int64_t>(v), parent, os.str());
    }
  }

  const Chase chase = chase_levels(p, s);
  if (!chase.first_cyclic.empty()) {
    const std::int64_t v = chase.first_cyclic.front();
    std::ostringstream os;
    os << "parent chain from vertex " << v << " cycles without reaching root " << s;
    fail(report[TreeCheck::cycle_free], v, p[v], os.str());
  }

  for (std::size_t v = 0; v < n; ++v) {
    if (chase.state[v] != ChaseState::done || static_cast<VertexId>(v) == s) continue;
    const std::int64_t parent = p[v];
    if (chase.level[v] != chase.level[parent] + 1) {
      std::ostringstream os;
      os << "vertex " << v << " at level " << chase.level[v] << " but parent " << parent << " at level "
         << chase.level[parent];
      fail(report[TreeCheck::level_consistency], static_cast<std::int64_t>(v), parent, os.str());
      continue;
    }
    for (const VertexId w : g.neighbors(static_cast<VertexId>(v))) {
      if (chase.state[w] != ChaseState::done) continue;
      if (chase.level[w] + 1 < chase.level[v]) {
        std::ostringstream os;
        os << "vertex " << v << " at level " << chase.level[v] << " has neighbour " << w << " at level "
           << chase.level[w];
        fail(report[TreeCheck::level_consistency], static_cast<std::int64_t>(v), parent, os.str());
        break;
      }
    }
  }
  return report;
}

void to_json(nlohmann::json& j, const ValidationReport& report) {
  j = nlohmann::json::object();
  j["passed"] = report.passed();
  j["reached_vertices"] = report.reached_vertices;
  auto& checks = j["checks"];
  checks = nlohmann::json::array();
  for (std::size_t i = 0; i < kTreeCheckCount; ++i) {
    const CheckResult& c = report.checks[i];
    nlohmann::json entry = {{"name", check_name(static_cast<TreeCheck>(i))}, {"passed", c.passed}};
    if (!c.passed) {
      entry["detail"] = c.detail;
      if (c.vertex) entry["vertex"] = *c.vertex;
      if (c.parent) entry["parent"] = *c.parent;
    }
    checks.push_back(std::move(entry));
  }
}

}  // namespace bfsvec

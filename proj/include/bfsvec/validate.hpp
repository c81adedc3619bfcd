#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "bfsvec/graph.hpp"
#include "bfsvec/traversal.hpp"

namespace bfsvec {

/// The five spanning-tree checks. They follow the Graph500 reference
/// validator's properties; the enumeration is a reconstruction.
enum class TreeCheck : std::size_t {
  root_self_parent = 0,
  reachability_closure = 1,
  tree_edge_exists = 2,
  level_consistency = 3,
  cycle_free = 4,
};

inline constexpr std::size_t kTreeCheckCount = 5;

std::string_view check_name(TreeCheck check) noexcept;

struct CheckResult {
  bool passed = true;
  /// First offending vertex, and for edge checks its recorded parent.
  std::optional<std::int64_t> vertex;
  std::optional<std::int64_t> parent;
  std::string detail;
};

struct ValidationReport {
  std::array<CheckResult, kTreeCheckCount> checks;
  std::uint64_t reached_vertices = 0;

  bool passed() const noexcept;
  const CheckResult& operator[](TreeCheck c) const noexcept { return checks[static_cast<std::size_t>(c)]; }
  CheckResult& operator[](TreeCheck c) noexcept { return checks[static_cast<std::size_t>(c)]; }
};

/// Checks p against g with root s:
///  1. p[s] == s
///  2. a reached vertex's parent is itself reached (and a valid id)
///  3. every tree edge p[v] -> v is an edge of g
///  4. tree depth (from pointer chasing) of v is depth(p[v]) + 1, and no
///     neighbour of a reached vertex sits more than one level away
///  5. chasing parents from any reached vertex reaches s without repeating
/// Failures are reported, never thrown.
ValidationReport validate_tree(const CsrGraph& g, VertexId s, std::span<const std::int32_t> p);
inline ValidationReport validate_tree(const CsrGraph& g, VertexId s, const PredecessorArray& p) {
  return validate_tree(g, s, p.values());
}

/// Depth of every vertex in the parent forest, -1 where the chase from that
/// vertex does not end at s.
std::vector<std::int64_t> tree_levels(std::span<const std::int32_t> p, VertexId s);

void to_json(nlohmann::json& j, const ValidationReport& report);

}  // namespace bfsvec

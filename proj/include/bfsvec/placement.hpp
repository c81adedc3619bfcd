#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bfsvec/worker_pool.hpp"

namespace bfsvec {

enum class PlacementStrategy { none, compact, scatter, balanced, explicit_per_core };

/// How workers are laid out over logical processors. `explicit_per_core`
/// packs `threads_per_core` workers onto each physical core in turn.
struct ThreadPlacement {
  PlacementStrategy strategy = PlacementStrategy::none;
  std::optional<unsigned> threads_per_core;

  /// "none", "compact", "scatter", "balanced" or "explicit:<1..4>".
  static ThreadPlacement parse(std::string_view text);
  std::string label() const;
  bool operator==(const ThreadPlacement&) const = default;
};

/// Reads BFS_AFFINITY, falling back to the strategy keyword of KMP_AFFINITY.
std::optional<ThreadPlacement> placement_from_environment();

struct LogicalCpu {
  int cpu = 0;
  int core = 0;
  int package = 0;
};

/// Logical processors available to this process, ordered by (package, core, cpu).
struct CpuTopology {
  std::vector<LogicalCpu> cpus;

  std::size_t physical_cores() const;
  std::size_t max_threads_per_core() const;

  /// `cores` cores of `smt` hardware threads each, numbered core-major.
  static CpuTopology uniform(std::size_t cores, std::size_t smt);
};

/// From /sys on Linux; falls back to one core per hardware_concurrency() slot.
/// `warning` receives a note when discovery degraded.
CpuTopology discover_topology(std::string* warning = nullptr);

/// Logical CPU for each of `threads` workers; empty for `none`.
std::vector<int> plan_placement(const CpuTopology& topology, const ThreadPlacement& placement, std::size_t threads,
                                std::string* warning = nullptr);

struct PlacementOutcome {
  std::string strategy;
  bool pinned = false;
  std::vector<int> cpus;
  std::size_t distinct_cores = 0;
  std::string warning;
};

/// Distinct physical cores touched by a plan.
std::size_t distinct_cores(const CpuTopology& topology, const std::vector<int>& cpus);

/// Best-effort: pins the pool's workers per the plan and reports what held.
/// Never throws for topology or pinning failures.
PlacementOutcome apply_placement(WorkerPool& pool, const ThreadPlacement& placement,
                                 const CpuTopology& topology = discover_topology());

}  // namespace bfsvec

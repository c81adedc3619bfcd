#include "bfsvec/placement.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>
#include <tuple>

#ifdef __linux__
#include <sched.h>
#endif

namespace bfsvec {

ThreadPlacement ThreadPlacement::parse(std::string_view text) {
  ThreadPlacement p;
  if (text == "none" || text.empty()) return p;
  if (text == "compact") {
    p.strategy = PlacementStrategy::compact;
  } else if (text == "scatter") {
    p.strategy = PlacementStrategy::scatter;
  } else if (text == "balanced") {
    p.strategy = PlacementStrategy::balanced;
  } else if (text.starts_with("explicit:") && text.size() == 10 && text[9] >= '1' && text[9] <= '4') {
    p.strategy = PlacementStrategy::explicit_per_core;
    p.threads_per_core = static_cast<unsigned>(text[9] - '0');
  } else {
    throw std::invalid_argument("unknown placement '" + std::string(text) +
                                "' (expected none, compact, scatter, balanced, explicit:1..4)");
  }
  return p;
}

std::string ThreadPlacement::label() const {
  switch (strategy) {
    case PlacementStrategy::none:
      return "none";
    case PlacementStrategy::compact:
      return "compact";
    case PlacementStrategy::scatter:
      return "scatter";
    case PlacementStrategy::balanced:
      return "balanced";
    case PlacementStrategy::explicit_per_core:
      return "explicit:" + std::to_string(threads_per_core.value_or(1));
  }
  return "none";
}

std::optional<ThreadPlacement> placement_from_environment() {
  if (const char* v = std::getenv("BFS_AFFINITY"); v != nullptr && *v != '\0') return ThreadPlacement::parse(v);
  if (const char* v = std::getenv("KMP_AFFINITY"); v != nullptr) {
    const std::string_view s(v);
    for (const char* keyword : {"compact", "scatter", "balanced"}) {
      if (s.find(keyword) != std::string_view::npos) return ThreadPlacement::parse(keyword);
    }
  }
  return std::nullopt;
}

std::size_t CpuTopology::physical_cores() const {
  std::set<std::pair<int, int>> cores;
  for (const auto& c : cpus) cores.emplace(c.package, c.core);
  return cores.size();
}

std::size_t CpuTopology::max_threads_per_core() const {
  std::map<std::pair<int, int>, std::size_t> per_core;
  std::size_t best = 0;
  for (const auto& c : cpus) best = std::max(best, ++per_core[{c.package, c.core}]);
  return best;
}

CpuTopology CpuTopology::uniform(std::size_t cores, std::size_t smt) {
  CpuTopology t;
  for (std::size_t core = 0; core < cores; ++core) {
    for (std::size_t s = 0; s < smt; ++s) {
      t.cpus.push_back({static_cast<int>(core * smt + s), static_cast<int>(core), 0});
    }
  }
  return t;
}

namespace {

std::optional<int> read_int(const std::filesystem::path& path) {
  std::ifstream in(path);
  int value = 0;
  if (in >> value) return value;
  return std::nullopt;
}

std::vector<int> allowed_cpus() {
  std::vector<int> cpus;
#ifdef __linux__
  cpu_set_t set;
  if (sched_getaffinity(0, sizeof(set), &set) == 0) {
    for (int c = 0; c < CPU_SETSIZE; ++c) {
      if (CPU_ISSET(c, &set)) cpus.push_back(c);
    }
  }
#endif
  return cpus;
}

// Cores in topology order, each listing its logical CPUs.
std::vector<std::vector<int>> group_by_core(const CpuTopology& topology) {
  std::vector<std::vector<int>> cores;
  std::pair<int, int> current{-1, -1};
  for (const auto& c : topology.cpus) {
    if (cores.empty() || std::pair{c.package, c.core} != current) {
      cores.emplace_back();
      current = {c.package, c.core};
    }
    cores.back().push_back(c.cpu);
  }
  return cores;
}

}  // namespace

CpuTopology discover_topology(std::string* warning) {
  CpuTopology t;
  const std::filesystem::path root = "/sys/devices/system/cpu";
  bool degraded = false;
  for (const int cpu : allowed_cpus()) {
    const auto dir = root / ("cpu" + std::to_string(cpu)) / "topology";
    const auto core = read_int(dir / "core_id");
    const auto package = read_int(dir / "physical_package_id");
    if (!core || !package) degraded = true;
    t.cpus.push_back({cpu, core.value_or(cpu), package.value_or(0)});
  }
  if (t.cpus.empty()) {
    degraded = true;
    const unsigned n = std::max(1U, std::thread::hardware_concurrency());
    t = CpuTopology::uniform(n, 1);
  }
  std::sort(t.cpus.begin(), t.cpus.end(), [](const LogicalCpu& a, const LogicalCpu& b) {
    return std::tie(a.package, a.core, a.cpu) < std::tie(b.package, b.core, b.cpu);
  });
  if (degraded && warning != nullptr) *warning = "cpu topology incomplete; assuming one logical cpu per core";
  return t;
}

std::vector<int> plan_placement(const CpuTopology& topology, const ThreadPlacement& placement, std::size_t threads,
                                std::string* warning) {
  std::vector<int> plan;
  if (placement.strategy == PlacementStrategy::none || topology.cpus.empty()) return plan;
  const auto cores = group_by_core(topology);
  const std::size_t ncores = cores.size();
  const std::size_t logical = topology.cpus.size();
  auto note = [&](const std::string& text) {
    if (warning != nullptr && warning->empty()) *warning = text;
  };
  if (threads > logical) note("more workers than logical cpus; placement wraps around");

  plan.reserve(threads);
  switch (placement.strategy) {
    case PlacementStrategy::compact:
      for (std::size_t i = 0; i < threads; ++i) plan.push_back(topology.cpus[i % logical].cpu);
      break;
    case PlacementStrategy::scatter:
      for (std::size_t i = 0; i < threads; ++i) {
        const auto& core = cores[i % ncores];
        plan.push_back(core[(i / ncores) % core.size()]);
      }
      break;
    case PlacementStrategy::balanced: {
      // Spread over as many cores as scatter would, but give adjacent worker
      // ids neighbouring slots on the same core.
      const std::size_t used = std::min(threads, ncores);
      for (std::size_t c = 0, next = 0; c < used; ++c) {
        const std::size_t share = threads / used + (c < threads % used ? 1 : 0);
        for (std::size_t k = 0; k < share; ++k, ++next) plan.push_back(cores[c][k % cores[c].size()]);
      }
      break;
    }
    case PlacementStrategy::explicit_per_core: {
      const std::size_t per_core = placement.threads_per_core.value_or(1);
      if (per_core > topology.max_threads_per_core()) {
        note("requested threads per core exceeds hardware threads per core");
      }
      if ((threads + per_core - 1) / per_core > ncores) note("not enough physical cores for the requested packing");
      for (std::size_t i = 0; i < threads; ++i) {
        const auto& core = cores[(i / per_core) % ncores];
        plan.push_back(core[(i % per_core) % core.size()]);
      }
      break;
    }
    case PlacementStrategy::none:
      break;
  }
  return plan;
}

std::size_t distinct_cores(const CpuTopology& topology, const std::vector<int>& cpus) {
  std::set<std::pair<int, int>> used;
  for (const int cpu : cpus) {
    const auto it = std::find_if(topology.cpus.begin(), topology.cpus.end(),
                                 [cpu](const LogicalCpu& c) { return c.cpu == cpu; });
    if (it != topology.cpus.end()) used.emplace(it->package, it->core);
  }
  return used.size();
}

PlacementOutcome apply_placement(WorkerPool& pool, const ThreadPlacement& placement, const CpuTopology& topology) {
  PlacementOutcome outcome;
  outcome.strategy = placement.label();
  if (placement.strategy == PlacementStrategy::none) {
    pool.unpin();
    outcome.warning = "unpinned";
    return outcome;
  }
  outcome.cpus = plan_placement(topology, placement, pool.size(), &outcome.warning);
  const std::vector<bool> pinned = pool.pin(outcome.cpus);
  outcome.pinned = !pinned.empty() && std::all_of(pinned.begin(), pinned.end(), [](bool b) { return b; });
  if (!outcome.pinned) {
    if (!outcome.warning.empty()) outcome.warning += "; ";
    outcome.warning += "unpinned";
  }
  outcome.distinct_cores = distinct_cores(topology, outcome.cpus);
  return outcome;
}

}  // namespace bfsvec

#include "bfsvec/harness.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <sstream>

#include "bfsvec/rng.hpp"

namespace bfsvec {

void ExperimentConfig::check() const {
  rmat.check();
  if (num_roots < 1) throw std::invalid_argument("num_roots must be at least 1");
  if (thread_counts.empty()) throw std::invalid_argument("thread_counts must not be empty");
  if (std::any_of(thread_counts.begin(), thread_counts.end(), [](std::size_t t) { return t < 1; })) {
    throw std::invalid_argument("thread counts must be at least 1");
  }
  if (modes.empty()) throw std::invalid_argument("at least one mode is required");
  if (placement.strategy == PlacementStrategy::explicit_per_core && !placement.threads_per_core) {
    throw std::invalid_argument("explicit placement requires threads_per_core");
  }
  if (backend == lane::Backend::avx512 && !lane::accelerated_available()) {
    throw std::invalid_argument("avx512 lane backend unavailable on this machine");
  }
}

HarmonicMean harmonic_mean_teps(std::span<const double> values, bool include_zeros) {
  BFSVEC_EXPECTS(!values.empty(), "harmonic mean of an empty list");
  HarmonicMean hm;
  double largest = 0.0;
  for (const double x : values) {
    BFSVEC_EXPECTS(x >= 0.0, "TEPS values must be non-negative");
    if (x == 0.0) ++hm.zero_count;
    largest = std::max(largest, x);
  }
  const std::size_t nonzero = values.size() - hm.zero_count;
  if (nonzero == 0 || (include_zeros && hm.zero_count > 0)) {
    hm.degenerate = true;
    hm.value = 0.0;
    return hm;
  }
  // Summing largest / x keeps equal inputs exact and avoids overflow.
  double ratio_sum = 0.0;
  for (const double x : values) {
    if (x != 0.0) ratio_sum += largest / x;
  }
  hm.value = largest * (static_cast<double>(nonzero) / ratio_sum);
  return hm;
}

std::vector<VertexId> pick_roots(const CsrGraph& g, std::size_t n, std::uint64_t seed, bool connected_only) {
  std::vector<VertexId> candidates;
  candidates.reserve(g.num_vertices());
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    if (!connected_only || g.degree(static_cast<VertexId>(v)) > 0) candidates.push_back(static_cast<VertexId>(v));
  }
  if (n > candidates.size()) {
    throw std::invalid_argument("cannot pick " + std::to_string(n) + " distinct roots from " +
                                std::to_string(candidates.size()) + " candidates");
  }
  // Partial Fisher-Yates.
  SplitMix64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(candidates.size() - i));
    std::swap(candidates[i], candidates[j]);
  }
  candidates.resize(n);
  return candidates;
}

void summarize(RunStats& stats) {
  std::vector<double> teps;
  teps.reserve(stats.runs.size());
  for (const RootRun& r : stats.runs) teps.push_back(r.teps);
  if (stats.runs.empty()) {
    stats.hmean = HarmonicMean{0.0, 0, true};
    stats.min_time_s = stats.max_time_s = stats.mean_time_s = 0.0;
    return;
  }
  stats.hmean = harmonic_mean_teps(teps, false);
  const auto [lo, hi] = std::minmax_element(stats.runs.begin(), stats.runs.end(),
                                            [](const RootRun& a, const RootRun& b) { return a.time_s < b.time_s; });
  stats.min_time_s = lo->time_s;
  stats.max_time_s = hi->time_s;
  double total = 0.0;
  for (const RootRun& r : stats.runs) total += r.time_s;
  stats.mean_time_s = total / static_cast<double>(stats.runs.size());
}

ExperimentResult run_experiment(const ExperimentConfig& config, const CsrGraph& g) {
  config.check();
  ExperimentResult result;
  result.rmat = config.rmat;
  result.root_seed = config.effective_root_seed();
  result.vectorized_layers = config.vectorized_layers;
  result.filter_unconnected = config.filter_unconnected;
  result.lane_backend = lane::backend_name(config.backend);
  result.num_vertices = g.num_vertices();
  result.num_adjacencies = g.num_adjacencies();

  const std::vector<VertexId> roots =
      pick_roots(g, config.num_roots, config.effective_root_seed(), config.filter_unconnected);
  BfsOptions options;
  options.backend = config.backend;

  for (const Mode mode : config.modes) {
    const LayerPolicy policy{mode, config.vectorized_layers};
    for (const std::size_t threads : config.thread_counts) {
      WorkerPool pool(threads);
      const PlacementOutcome placed = apply_placement(pool, config.placement);

      RunStats stats;
      stats.mode = mode;
      stats.threads = threads;
      stats.placement = config.placement.label();
      stats.pinned = placed.pinned;
      stats.runs.reserve(roots.size());
      for (const VertexId root : roots) {
        const auto start = std::chrono::steady_clock::now();
        const BfsResult bfs = run_bfs(g, root, pool, policy, options);
        const auto stop = std::chrono::steady_clock::now();

        const ValidationReport report = validate_tree(g, root, bfs.predecessors);
        if (!report.passed()) {
          std::ostringstream os;
          os << "BFS tree from root " << root << " (" << mode_name(mode) << ", " << threads
             << " threads) failed validation: " << nlohmann::json(report).dump();
          throw ValidationFailure(os.str(), report, root);
        }

        RootRun run;
        run.root = root;
        run.time_s = std::max(std::chrono::duration<double>(stop - start).count(), 1e-9);
        run.edges = bfs.traversed_edge_count;
        run.teps = run.edges == 0 ? 0.0 : static_cast<double>(run.edges) / run.time_s;
        stats.runs.push_back(run);
      }
      summarize(stats);
      result.stats.push_back(std::move(stats));
    }
  }
  return result;
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  config.check();
  const CsrGraph g = build_csr(generate_rmat(config.rmat));
  return run_experiment(config, g);
}

ExperimentResult run_sweep(const ExperimentConfig& config, const CsrGraph& g,
                           const std::vector<ThreadPlacement>& placements) {
  BFSVEC_EXPECTS(!placements.empty(), "sweep needs at least one placement");
  ExperimentResult merged;
  for (std::size_t i = 0; i < placements.size(); ++i) {
    ExperimentConfig point = config;
    point.placement = placements[i];
    ExperimentResult part = run_experiment(point, g);
    if (i == 0) {
      merged = std::move(part);
    } else {
      std::move(part.stats.begin(), part.stats.end(), std::back_inserter(merged.stats));
    }
  }
  return merged;
}

}  // namespace bfsvec

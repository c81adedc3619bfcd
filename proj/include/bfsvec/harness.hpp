#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bfsvec/graph.hpp"
#include "bfsvec/placement.hpp"
#include "bfsvec/traversal.hpp"
#include "bfsvec/validate.hpp"

namespace bfsvec {

struct ExperimentConfig {
  RmatParams rmat;
  std::vector<Mode> modes{Mode::vectorized};
  std::size_t vectorized_layers = 2;
  std::vector<std::size_t> thread_counts{1};
  ThreadPlacement placement;
  std::size_t num_roots = 64;
  bool filter_unconnected = false;
  /// Seed for root selection; defaults to the generator seed when unset.
  std::optional<std::uint64_t> root_seed;
  lane::Backend backend = lane::best_backend();

  /// Throws std::invalid_argument.
  void check() const;
  std::uint64_t effective_root_seed() const { return root_seed.value_or(rmat.seed); }
};

struct HarmonicMean {
  double value = 0.0;
  std::size_t zero_count = 0;
  /// Set when the mean is undefined (all zero) or forced to 0 by a zero
  /// value with include_zeros.
  bool degenerate = false;
  bool operator==(const HarmonicMean&) const = default;
};

/// include_zeros = false: n' / sum(1 / x) over the n' nonzero values, zeros
/// counted separately. include_zeros = true: any zero makes the result 0.
HarmonicMean harmonic_mean_teps(std::span<const double> values, bool include_zeros = false);

struct RootRun {
  VertexId root = 0;
  double time_s = 0.0;
  std::uint64_t edges = 0;
  double teps = 0.0;
  bool operator==(const RootRun&) const = default;
};

struct RunStats {
  Mode mode = Mode::vectorized;
  std::size_t threads = 1;
  std::string placement = "none";
  bool pinned = false;
  std::vector<RootRun> runs;
  HarmonicMean hmean;
  double min_time_s = 0.0;
  double max_time_s = 0.0;
  double mean_time_s = 0.0;

  bool operator==(const RunStats&) const = default;
};

struct ExperimentResult {
  RmatParams rmat;
  std::uint64_t root_seed = 0;
  std::size_t vectorized_layers = 2;
  bool filter_unconnected = false;
  std::string lane_backend;
  std::size_t num_vertices = 0;
  std::size_t num_adjacencies = 0;
  std::vector<RunStats> stats;

  bool operator==(const ExperimentResult&) const = default;
};

/// Raised when a produced tree fails validation; carries the report.
class ValidationFailure : public std::runtime_error {
 public:
  ValidationFailure(std::string what, ValidationReport report, VertexId root)
      : std::runtime_error(std::move(what)), report_(std::move(report)), root_(root) {}
  const ValidationReport& report() const noexcept { return report_; }
  VertexId root() const noexcept { return root_; }

 private:
  ValidationReport report_;
  VertexId root_;
};

/// n distinct vertices sampled uniformly without replacement; with
/// `connected_only`, only vertices of nonzero degree are candidates.
std::vector<VertexId> pick_roots(const CsrGraph& g, std::size_t n, std::uint64_t seed, bool connected_only = false);

/// Aggregates per-root runs into min/max/mean time and the harmonic mean TEPS.
void summarize(RunStats& stats);

/// For every (mode, thread count): runs each root, validates the tree and
/// records traversal wall time and TEPS. Throws ValidationFailure on a bad tree.
ExperimentResult run_experiment(const ExperimentConfig& config, const CsrGraph& g);
ExperimentResult run_experiment(const ExperimentConfig& config);

/// run_experiment once per placement on one graph, results concatenated.
ExperimentResult run_sweep(const ExperimentConfig& config, const CsrGraph& g,
                           const std::vector<ThreadPlacement>& placements);

enum class ResultFormat { csv, json };

/// CSV columns: scale,edgefactor,seed,mode,threads,placement,root,time_s,edges,teps.
/// After the per-root rows of each (mode, threads, placement) group comes one
/// aggregate row with root "hmean": mean time, total edges, harmonic mean TEPS.
std::string format_csv(const ExperimentResult& result);
nlohmann::ordered_json format_json(const ExperimentResult& result);
ExperimentResult parse_json(const nlohmann::ordered_json& j);

/// Throws std::runtime_error when the path cannot be written.
void emit_results(const ExperimentResult& result, ResultFormat format, const std::filesystem::path& path);

}  // namespace bfsvec

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "bfsvec/edge_io.hpp"
#include "bfsvec/harness.hpp"

namespace {

using namespace bfsvec;

struct GraphOptions {
  RmatParams rmat;
  std::string input;
};

struct RunOptions {
  std::vector<std::string> modes{"vectorized"};
  std::vector<std::size_t> threads{1};
  std::size_t vectorized_layers = 2;
  std::vector<std::string> placements;
  std::size_t roots = 64;
  std::optional<std::uint64_t> root_seed;
  bool filter_unconnected = false;
  std::string backend = "auto";
  std::string out;
  std::string format = "csv";
};

void add_graph_options(CLI::App* cmd, GraphOptions& g, bool with_input) {
  cmd->add_option("--scale", g.rmat.scale, "log2 of the vertex count")->capture_default_str();
  cmd->add_option("--edgefactor", g.rmat.edgefactor, "generated edges per vertex")->capture_default_str();
  cmd->add_option("--seed", g.rmat.seed, "generator seed")->capture_default_str();
  cmd->add_option("-a", g.rmat.a, "initiator probability A")->capture_default_str();
  cmd->add_option("-b", g.rmat.b, "initiator probability B")->capture_default_str();
  cmd->add_option("-c", g.rmat.c, "initiator probability C")->capture_default_str();
  cmd->add_option("-d", g.rmat.d, "initiator probability D")->capture_default_str();
  if (with_input) cmd->add_option("--input", g.input, "edge list written by `generate` (overrides generator flags)");
}

void add_run_options(CLI::App* cmd, RunOptions& r, bool sweep) {
  cmd->add_option("--mode", r.modes, "serial, parallel_naive, parallel_restored, vectorized or all")
      ->delimiter(',')
      ->capture_default_str();
  auto* threads = cmd->add_option("--threads", r.threads, "comma-separated worker counts")->delimiter(',');
  if (!sweep) threads->capture_default_str();
  cmd->add_option("--vectorized-layers", r.vectorized_layers, "leading layers run with the lane kernels")
      ->capture_default_str();
  cmd->add_option("--placement", r.placements,
                  sweep ? "placements to sweep (default: all strategies)"
                        : "none, compact, scatter, balanced or explicit:<1..4> (default: BFS_AFFINITY / KMP_AFFINITY)")
      ->delimiter(',');
  cmd->add_option("--roots", r.roots, "BFS executions per configuration")->capture_default_str();
  cmd->add_option("--root-seed", r.root_seed, "seed for root selection (default: the graph seed)");
  cmd->add_flag("--filter-unconnected", r.filter_unconnected, "only pick roots with at least one edge");
  cmd->add_option("--backend", r.backend, "lane backend: auto, scalar or avx512")
      ->check(CLI::IsMember({"auto", "scalar", "avx512"}))
      ->capture_default_str();
  cmd->add_option("--out", r.out, "output file (default: stdout)");
  cmd->add_option("--format", r.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
}

std::vector<Mode> parse_modes(const std::vector<std::string>& names) {
  std::vector<Mode> modes;
  for (const std::string& name : names) {
    if (name == "all") {
      modes = {Mode::serial, Mode::parallel_naive, Mode::parallel_restored, Mode::vectorized};
      continue;
    }
    const auto m = parse_mode(name);
    if (!m) throw std::invalid_argument("unknown mode '" + name + "'");
    modes.push_back(*m);
  }
  return modes;
}

lane::Backend parse_backend(const std::string& name) {
  if (name == "scalar") return lane::Backend::scalar;
  if (name == "avx512") return lane::Backend::avx512;
  return lane::best_backend();
}

// Generates the graph, or loads it and takes its parameters from the sidecar.
CsrGraph load_graph(GraphOptions& g) {
  if (!g.input.empty()) {
    LoadedEdgeList loaded = read_edge_list(g.input);
    g.rmat = loaded.params;
    return build_csr(loaded.edges);
  }
  g.rmat.check();
  return build_csr(generate_rmat(g.rmat));
}

ExperimentConfig make_config(const GraphOptions& g, const RunOptions& r) {
  ExperimentConfig cfg;
  cfg.rmat = g.rmat;
  cfg.modes = parse_modes(r.modes);
  cfg.thread_counts = r.threads;
  cfg.vectorized_layers = r.vectorized_layers;
  cfg.num_roots = r.roots;
  cfg.root_seed = r.root_seed;
  cfg.filter_unconnected = r.filter_unconnected;
  cfg.backend = parse_backend(r.backend);
  return cfg;
}

void write_results(const ExperimentResult& result, const RunOptions& r) {
  const ResultFormat format = r.format == "json" ? ResultFormat::json : ResultFormat::csv;
  if (!r.out.empty()) {
    emit_results(result, format, r.out);
    return;
  }
  if (format == ResultFormat::csv) {
    std::cout << format_csv(result);
  } else {
    std::cout << format_json(result).dump(2) << "\n";
  }
}

std::vector<std::size_t> default_sweep_threads() {
  const std::size_t hw = std::max(1U, std::thread::hardware_concurrency());
  std::vector<std::size_t> counts;
  for (std::size_t t = 1; t < hw; t *= 2) counts.push_back(t);
  counts.push_back(hw);
  return counts;
}

int cmd_generate(GraphOptions& g, const std::string& out) {
  g.rmat.check();
  const EdgeList edges = generate_rmat(g.rmat);
  write_edge_list(out, edges, g.rmat);
  std::fprintf(stderr, "wrote %zu edges over %zu vertices to %s\n", edges.edges.size(), edges.num_vertices,
               out.c_str());
  return 0;
}

int cmd_run(GraphOptions& g, RunOptions& r) {
  const CsrGraph graph = load_graph(g);
  ExperimentConfig cfg = make_config(g, r);
  if (r.placements.size() > 1) throw std::invalid_argument("run takes one placement; use sweep for several");
  if (!r.placements.empty()) {
    cfg.placement = ThreadPlacement::parse(r.placements.front());
  } else if (const auto env = placement_from_environment()) {
    cfg.placement = *env;
  }
  write_results(run_experiment(cfg, graph), r);
  return 0;
}

int cmd_sweep(GraphOptions& g, RunOptions& r, bool threads_given) {
  const CsrGraph graph = load_graph(g);
  ExperimentConfig cfg = make_config(g, r);
  if (!threads_given) cfg.thread_counts = default_sweep_threads();
  std::vector<ThreadPlacement> placements;
  for (const std::string& p : r.placements) placements.push_back(ThreadPlacement::parse(p));
  if (placements.empty()) {
    for (const char* p : {"none", "compact", "scatter", "balanced"}) placements.push_back(ThreadPlacement::parse(p));
    for (unsigned k = 1; k <= 4; ++k) placements.push_back(ThreadPlacement::parse("explicit:" + std::to_string(k)));
  }
  write_results(run_sweep(cfg, graph, placements), r);
  return 0;
}

int cmd_validate(GraphOptions& g, RunOptions& r) {
  const CsrGraph graph = load_graph(g);
  const ExperimentConfig cfg = make_config(g, r);
  cfg.check();
  BfsOptions options;
  options.backend = cfg.backend;
  const auto roots = pick_roots(graph, cfg.num_roots, cfg.effective_root_seed(), cfg.filter_unconnected);
  nlohmann::json reports = nlohmann::json::array();
  bool all_passed = true;
  for (const Mode mode : cfg.modes) {
    for (const std::size_t threads : cfg.thread_counts) {
      WorkerPool pool(threads);
      std::size_t passed = 0;
      nlohmann::json failures = nlohmann::json::array();
      for (const VertexId root : roots) {
        const BfsResult bfs = run_bfs(graph, root, pool, {mode, cfg.vectorized_layers}, options);
        const ValidationReport report = validate_tree(graph, root, bfs.predecessors);
        if (report.passed()) {
          ++passed;
        } else {
          nlohmann::json entry = report;
          entry["root"] = root;
          failures.push_back(std::move(entry));
        }
      }
      all_passed = all_passed && failures.empty();
      reports.push_back({{"mode", mode_name(mode)},
                         {"threads", threads},
                         {"roots", roots.size()},
                         {"passed", passed},
                         {"failures", std::move(failures)}});
    }
  }
  const nlohmann::json doc = {{"scale", g.rmat.scale},
                                {"edgefactor", g.rmat.edgefactor},
                                {"seed", g.rmat.seed},
                                {"passed", all_passed},
                                {"runs", std::move(reports)}};
  if (!r.out.empty()) {
    std::ofstream out(r.out);
    if (!out) throw std::runtime_error("cannot open " + r.out + " for writing");
    out << doc.dump(2) << "\n";
  } else {
    std::cout << doc.dump(2) << "\n";
  }
  return all_passed ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bitmap and SIMD breadth-first search benchmark"};
  app.require_subcommand(1);

  GraphOptions gen_graph;
  std::string gen_out;
  auto* gen = app.add_subcommand("generate", "write an RMAT edge list and its JSON sidecar");
  add_graph_options(gen, gen_graph, false);
  gen->add_option("--out", gen_out, "edge list path")->required();

  GraphOptions run_graph;
  RunOptions run_opts;
  auto* run = app.add_subcommand("run", "time BFS from random roots and emit TEPS results");
  add_graph_options(run, run_graph, true);
  add_run_options(run, run_opts, false);

  GraphOptions sweep_graph;
  RunOptions sweep_opts;
  auto* sweep = app.add_subcommand("sweep", "run over several thread counts and placements");
  add_graph_options(sweep, sweep_graph, true);
  add_run_options(sweep, sweep_opts, true);

  GraphOptions val_graph;
  RunOptions val_opts;
  val_opts.modes = {"all"};
  auto* val = app.add_subcommand("validate", "check BFS trees from random roots and report per-check results");
  add_graph_options(val, val_graph, true);
  add_run_options(val, val_opts, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_generate(gen_graph, gen_out);
    if (run->parsed()) return cmd_run(run_graph, run_opts);
    if (sweep->parsed()) return cmd_sweep(sweep_graph, sweep_opts, sweep->count("--threads") > 0);
    if (val->parsed()) return cmd_validate(val_graph, val_opts);
  } catch (const ValidationFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

#include <charconv>
#include <fstream>
#include <system_error>

#include "bfsvec/harness.hpp"

namespace bfsvec {

namespace {

std::string shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

Mode mode_from_json(const nlohmann::ordered_json& j) {
  const auto name = j.get<std::string>();
  const auto mode = parse_mode(name);
  if (!mode) throw std::runtime_error("unknown mode '" + name + "' in results");
  return *mode;
}

}  // namespace

std::string format_csv(const ExperimentResult& result) {
  std::string out = "scale,edgefactor,seed,mode,threads,placement,root,time_s,edges,teps\n";
  const std::string prefix = std::to_string(result.rmat.scale) + "," + std::to_string(result.rmat.edgefactor) + "," +
                             std::to_string(result.rmat.seed) + ",";
  for (const RunStats& s : result.stats) {
    const std::string group =
        prefix + std::string(mode_name(s.mode)) + "," + std::to_string(s.threads) + "," + s.placement + ",";
    std::uint64_t total_edges = 0;
    for (const RootRun& r : s.runs) {
      out += group + std::to_string(r.root) + "," + shortest(r.time_s) + "," + std::to_string(r.edges) + "," +
             shortest(r.teps) + "\n";
      total_edges += r.edges;
    }
    out += group + "hmean," + shortest(s.mean_time_s) + "," + std::to_string(total_edges) + "," +
           shortest(s.hmean.value) + "\n";
  }
  return out;
}

nlohmann::ordered_json format_json(const ExperimentResult& result) {
  nlohmann::ordered_json config = {
      {"scale", result.rmat.scale},
      {"edgefactor", result.rmat.edgefactor},
      {"a", result.rmat.a},
      {"b", result.rmat.b},
      {"c", result.rmat.c},
      {"d", result.rmat.d},
      {"seed", result.rmat.seed},
      {"root_seed", result.root_seed},
      {"vectorized_layers", result.vectorized_layers},
      {"filter_unconnected", result.filter_unconnected},
      {"lane_backend", result.lane_backend},
      {"num_vertices", result.num_vertices},
      {"num_adjacencies", result.num_adjacencies},
      {"teps_numerator", "adjacency entries examined per traversal, filtered entries included"},
      {"harmonic_mean", "over nonzero TEPS values; zero_teps_count reported separately"},
  };
  nlohmann::ordered_json groups = nlohmann::ordered_json::array();
  for (const RunStats& s : result.stats) {
    nlohmann::ordered_json runs = nlohmann::ordered_json::array();
    for (const RootRun& r : s.runs) {
      runs.push_back({{"root", r.root}, {"time_s", r.time_s}, {"edges", r.edges}, {"teps", r.teps}});
    }
    groups.push_back({{"mode", mode_name(s.mode)},
                      {"threads", s.threads},
                      {"placement", s.placement},
                      {"pinned", s.pinned},
                      {"runs", std::move(runs)},
                      {"aggregate",
                       {{"harmonic_mean_teps", s.hmean.value},
                        {"zero_teps_count", s.hmean.zero_count},
                        {"degenerate", s.hmean.degenerate},
                        {"min_time_s", s.min_time_s},
                        {"max_time_s", s.max_time_s},
                        {"mean_time_s", s.mean_time_s}}}});
  }
  nlohmann::ordered_json doc = {{"config", std::move(config)}, {"results", std::move(groups)}};
  return doc;
}

ExperimentResult parse_json(const nlohmann::ordered_json& j) {
  ExperimentResult r;
  const auto& c = j.at("config");
  r.rmat.scale = c.at("scale").get<unsigned>();
  r.rmat.edgefactor = c.at("edgefactor").get<unsigned>();
  r.rmat.a = c.at("a").get<double>();
  r.rmat.b = c.at("b").get<double>();
  r.rmat.c = c.at("c").get<double>();
  r.rmat.d = c.at("d").get<double>();
  r.rmat.seed = c.at("seed").get<std::uint64_t>();
  r.root_seed = c.at("root_seed").get<std::uint64_t>();
  r.vectorized_layers = c.at("vectorized_layers").get<std::size_t>();
  r.filter_unconnected = c.at("filter_unconnected").get<bool>();
  r.lane_backend = c.at("lane_backend").get<std::string>();
  r.num_vertices = c.at("num_vertices").get<std::size_t>();
  r.num_adjacencies = c.at("num_adjacencies").get<std::size_t>();
  for (const auto& g : j.at("results")) {
    RunStats s;
    s.mode = mode_from_json(g.at("mode"));
    s.threads = g.at("threads").get<std::size_t>();
    s.placement = g.at("placement").get<std::string>();
    s.pinned = g.at("pinned").get<bool>();
    for (const auto& run : g.at("runs")) {
      s.runs.push_back(RootRun{run.at("root").get<VertexId>(), run.at("time_s").get<double>(),
                               run.at("edges").get<std::uint64_t>(), run.at("teps").get<double>()});
    }
    const auto& agg = g.at("aggregate");
    s.hmean.value = agg.at("harmonic_mean_teps").get<double>();
    s.hmean.zero_count = agg.at("zero_teps_count").get<std::size_t>();
    s.hmean.degenerate = agg.at("degenerate").get<bool>();
    s.min_time_s = agg.at("min_time_s").get<double>();
    s.max_time_s = agg.at("max_time_s").get<double>();
    s.mean_time_s = agg.at("mean_time_s").get<double>();
    r.stats.push_back(std::move(s));
  }
  return r;
}

void emit_results(const ExperimentResult& result, ResultFormat format, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  if (format == ResultFormat::csv) {
    out << format_csv(result);
  } else {
    out << format_json(result).dump(2) << "\n";
  }
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace bfsvec

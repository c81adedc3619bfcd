#include "bfsvec/edge_io.hpp"

#include <array>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace bfsvec {

namespace {

void put_u32(std::array<char, 8>& buf, std::size_t at, std::uint32_t x) {
  for (int i = 0; i < 4; ++i) buf[at + i] = static_cast<char>((x >> (8 * i)) & 0xFF);
}

std::uint32_t get_u32(const unsigned char* p) {
  return std::uint32_t{p[0]} | std::uint32_t{p[1]} << 8 | std::uint32_t{p[2]} << 16 | std::uint32_t{p[3]} << 24;
}

}  // namespace

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
  std::filesystem::path side = path;
  side += ".json";
  return side;
}

void write_edge_list(const std::filesystem::path& path, const EdgeList& edges, const RmatParams& params) {
  std::ofstream bin(path, std::ios::binary | std::ios::trunc);
  if (!bin) throw std::runtime_error("cannot open " + path.string() + " for writing");
  std::array<char, 8> rec{};
  for (const Edge& e : edges.edges) {
    put_u32(rec, 0, static_cast<std::uint32_t>(e.source));
    put_u32(rec, 4, static_cast<std::uint32_t>(e.target));
    bin.write(rec.data(), rec.size());
  }
  if (!bin) throw std::runtime_error("failed writing " + path.string());

  nlohmann::ordered_json meta = {{"scale", params.scale}, {"edgefactor", params.edgefactor},
                                 {"a", params.a},         {"b", params.b},
                                 {"c", params.c},         {"d", params.d},
                                 {"seed", params.seed}};
  std::ofstream side(sidecar_path(path), std::ios::trunc);
  if (!side) throw std::runtime_error("cannot open " + sidecar_path(path).string() + " for writing");
  side << meta.dump() << "\n";
  if (!side) throw std::runtime_error("failed writing " + sidecar_path(path).string());
}

LoadedEdgeList read_edge_list(const std::filesystem::path& path) {
  LoadedEdgeList out;
  std::ifstream side(sidecar_path(path));
  if (!side) throw std::runtime_error("missing sidecar " + sidecar_path(path).string());
  try {
    const auto meta = nlohmann::json::parse(side);
    out.params.scale = meta.at("scale").get<unsigned>();
    out.params.edgefactor = meta.at("edgefactor").get<unsigned>();
    out.params.a = meta.at("a").get<double>();
    out.params.b = meta.at("b").get<double>();
    out.params.c = meta.at("c").get<double>();
    out.params.d = meta.at("d").get<double>();
    out.params.seed = meta.at("seed").get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("malformed sidecar " + sidecar_path(path).string() + ": " + e.what());
  }
  try {
    out.params.check();
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error("invalid sidecar parameters: " + std::string(e.what()));
  }
  out.edges.num_vertices = out.params.num_vertices();

  std::ifstream bin(path, std::ios::binary);
  if (!bin) throw std::runtime_error("cannot open " + path.string());
  const auto bytes = std::filesystem::file_size(path);
  if (bytes % 8 != 0) throw std::runtime_error(path.string() + ": size is not a multiple of 8 bytes");
  out.edges.edges.reserve(bytes / 8);
  std::array<unsigned char, 8> rec{};
  while (bin.read(reinterpret_cast<char*>(rec.data()), rec.size())) {
    const std::uint32_t u = get_u32(rec.data());
    const std::uint32_t v = get_u32(rec.data() + 4);
    if (u >= out.edges.num_vertices || v >= out.edges.num_vertices) {
      throw std::runtime_error(path.string() + ": vertex id beyond 2^scale");
    }
    out.edges.edges.push_back(Edge{static_cast<VertexId>(u), static_cast<VertexId>(v)});
  }
  return out;
}

}  // namespace bfsvec

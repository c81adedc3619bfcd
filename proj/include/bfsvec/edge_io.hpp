#pragma once

#include <filesystem>

#include "bfsvec/graph.hpp"

namespace bfsvec {

/// Edge list file pairs: little-endian (uint32 source, uint32 target) records
/// in `path`, plus a one-line JSON sidecar at `path` + ".json" holding the
/// generator parameters.
void write_edge_list(const std::filesystem::path& path, const EdgeList& edges, const RmatParams& params);

struct LoadedEdgeList {
  EdgeList edges;
  RmatParams params;
};

/// Throws std::runtime_error on unreadable or malformed files.
LoadedEdgeList read_edge_list(const std::filesystem::path& path);

std::filesystem::path sidecar_path(const std::filesystem::path& path);

}  // namespace bfsvec

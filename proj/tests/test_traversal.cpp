#include <doctest.h>

#include <random>
#include <set>
#include <vector>

#include "bfsvec/traversal.hpp"
#include "support.hpp"

using namespace bfsvec;
using namespace bfsvec::testing;

namespace {

std::vector<lane::Backend> backends() {
  std::vector<lane::Backend> list{lane::Backend::scalar};
  if (lane::accelerated_available()) list.push_back(lane::Backend::avx512);
  return list;
}

std::vector<std::int32_t> values_of(const PredecessorArray& p) { return {p.values().begin(), p.values().end()}; }

// Runs every parallel variant and checks it against the queue oracle.
void check_all_variants(const CsrGraph& g, VertexId root, std::size_t threads) {
  const auto expected = oracle_distances(g, root);
  const BfsResult serial = bfs_serial(g, root);
  REQUIRE(induced_levels(serial.predecessors, root) == expected);
  REQUIRE(parents_valid(g, serial.predecessors, root));

  std::vector<BfsResult> runs;
  runs.push_back(bfs_parallel_naive(g, root, threads));
  runs.push_back(bfs_parallel_restored(g, root, threads));
  for (lane::Backend b : backends()) {
    BfsOptions opt;
    opt.backend = b;
    runs.push_back(bfs_vectorized(g, root, threads, {Mode::vectorized, 2}, opt));
    runs.push_back(bfs_vectorized(g, root, threads, {Mode::vectorized, 1000}, opt));
  }
  BfsOptions tiny;
  tiny.chunk_words = 1;
  runs.push_back(bfs_parallel_naive(g, root, threads, tiny));
  runs.push_back(bfs_parallel_restored(g, root, threads, tiny));

  for (const BfsResult& r : runs) {
    REQUIRE(induced_levels(r.predecessors, root) == expected);
    REQUIRE(parents_valid(g, r.predecessors, root));
    REQUIRE(r.layers == serial.layers);
    REQUIRE(r.traversed_edge_count == serial.traversed_edge_count);
  }
}

std::vector<VertexId> some_roots(const CsrGraph& g, std::size_t count, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::vector<VertexId> roots;
  for (std::size_t i = 0; i < count; ++i) roots.push_back(static_cast<VertexId>(rng() % g.num_vertices()));
  return roots;
}

}  // namespace

TEST_CASE("path 0-1-2 from 0") {
  const CsrGraph g = path_graph(3);
  const BfsResult r = bfs_serial(g, 0);
  CHECK(values_of(r.predecessors) == std::vector<std::int32_t>{0, 0, 1});
  CHECK(r.layers.size() == 3);
  CHECK(r.traversed_edge_count == 4);
  for (std::size_t threads : {1U, 2U}) {
    CHECK(values_of(bfs_parallel_naive(g, 0, threads).predecessors) == std::vector<std::int32_t>{0, 0, 1});
    CHECK(values_of(bfs_parallel_restored(g, 0, threads).predecessors) == std::vector<std::int32_t>{0, 0, 1});
    CHECK(values_of(bfs_vectorized(g, 0, threads).predecessors) == std::vector<std::int32_t>{0, 0, 1});
  }
}

TEST_CASE("single vertex graph") {
  const CsrGraph g = empty_graph(1);
  const BfsResult r = bfs_serial(g, 0);
  CHECK(values_of(r.predecessors) == std::vector<std::int32_t>{0});
  REQUIRE(r.layers.size() == 1);
  CHECK(r.layers[0].discovered == 0);
  CHECK(r.traversed_edge_count == 0);
  CHECK(bfs_vectorized(g, 0, 2).layers == r.layers);
}

TEST_CASE("diamond: either parent of the sink is accepted") {
  const CsrGraph g = build_csr(edges_of(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}}));
  for (std::size_t threads : {1U, 2U, 4U}) {
    for (const BfsResult& r : {bfs_serial(g, 0), bfs_parallel_naive(g, 0, threads), bfs_parallel_restored(g, 0, threads),
                               bfs_vectorized(g, 0, threads)}) {
      const std::int32_t p3 = r.predecessors[3];
      CHECK((p3 == 1 || p3 == 2));
      CHECK(r.predecessors[1] == 0);
      CHECK(r.predecessors[2] == 0);
    }
  }
}

TEST_CASE("star K1,100 with 8 threads") {
  const CsrGraph g = star_graph(100);
  const auto dist = oracle_distances(g, 0);
  for (const BfsResult& r : {bfs_parallel_naive(g, 0, 8), bfs_parallel_restored(g, 0, 8), bfs_vectorized(g, 0, 8)}) {
    const auto levels = induced_levels(r.predecessors, 0);
    for (int v = 1; v <= 100; ++v) {
      CHECK(dist[v] == 1);
      CHECK(levels[v] == 1);
    }
  }
  // From a leaf the hub is at 1 and the other leaves at 2.
  check_all_variants(g, 17, 8);
}

TEST_CASE("root out of range is rejected") {
  const CsrGraph g = path_graph(4);
  CHECK_THROWS_AS(bfs_serial(g, 4), ContractViolation);
  CHECK_THROWS_AS(bfs_serial(g, -1), ContractViolation);
  CHECK_THROWS_AS(bfs_parallel_naive(g, 4, 2), ContractViolation);
  CHECK_THROWS_AS(bfs_parallel_restored(g, 9, 2), ContractViolation);
  CHECK_THROWS_AS(bfs_vectorized(g, 9, 2), ContractViolation);
}

TEST_CASE("mode names round-trip") {
  for (Mode m : {Mode::serial, Mode::parallel_naive, Mode::parallel_restored, Mode::vectorized})
    CHECK(parse_mode(mode_name(m)) == m);
  CHECK_FALSE(parse_mode("hybrid").has_value());
}

TEST_CASE("level agreement on adversarial graphs") {
  const std::vector<CsrGraph> graphs{path_graph(200), star_graph(300), clique_graph(40), disconnected_union(),
                                     empty_graph(70)};
  for (const CsrGraph& g : graphs) {
    for (VertexId root : some_roots(g, 6, static_cast<std::uint32_t>(g.num_vertices()))) {
      for (std::size_t threads : {1U, 2U, 4U}) check_all_variants(g, root, threads);
    }
  }
}

TEST_CASE("level agreement on RMAT graphs") {
  for (unsigned scale : {8U, 10U, 12U}) {
    const CsrGraph g = rmat_graph(scale, 16, scale);
    for (VertexId root : some_roots(g, 4, scale)) {
      for (std::size_t threads : {1U, 3U}) check_all_variants(g, root, threads);
    }
  }
}

TEST_CASE("layer accounting") {
  const CsrGraph g = rmat_graph(11);
  for (VertexId root : some_roots(g, 8, 5)) {
    const BfsResult r = bfs_vectorized(g, root, 2);
    const auto dist = oracle_distances(g, root);
    std::uint64_t reachable = 0;
    std::uint64_t degree_sum = 0;
    for (std::size_t v = 0; v < dist.size(); ++v) {
      if (dist[v] < 0) continue;
      ++reachable;
      degree_sum += g.degree(static_cast<VertexId>(v));
    }
    std::uint64_t discovered = 0;
    std::uint64_t edges = 0;
    for (const LayerStats& s : r.layers) {
      discovered += s.discovered;
      edges += s.edges_examined;
    }
    CHECK(discovered == reachable - 1);
    CHECK(edges == r.traversed_edge_count);
    CHECK(edges == degree_sum);
    CHECK(r.layers.front().input_vertices == 1);
    CHECK(r.layers.back().discovered == 0);
    for (std::size_t i = 1; i < r.layers.size(); ++i) CHECK(r.layers[i].input_vertices == r.layers[i - 1].discovered);
  }
}

TEST_CASE("vectorized_layers = 0 matches the restored variant") {
  const CsrGraph g = rmat_graph(10);
  WorkerPool pool(2);
  const BfsResult a = bfs_vectorized(g, 3, pool, {Mode::vectorized, 0});
  const BfsResult b = bfs_parallel_restored(g, 3, pool);
  CHECK(a.layers == b.layers);
  CHECK(induced_levels(a.predecessors, 3) == induced_levels(b.predecessors, 3));
  std::vector<bool> probed;
  BfsOptions opt;
  opt.before_restore = [&](LayerProbe& probe) { probed.push_back(probe.vectorized); };
  bfs_vectorized(g, 3, pool, {Mode::vectorized, 0}, opt);
  CHECK(std::find(probed.begin(), probed.end(), true) == probed.end());
  probed.clear();
  bfs_vectorized(g, 3, pool, {Mode::vectorized, 2}, opt);
  REQUIRE(probed.size() > 2);
  CHECK(probed[0]);
  CHECK(probed[1]);
  CHECK_FALSE(probed[2]);
}

TEST_CASE("run_bfs dispatches on mode") {
  const CsrGraph g = rmat_graph(9);
  WorkerPool pool(2);
  const BfsResult serial = bfs_serial(g, 1);
  for (Mode m : {Mode::serial, Mode::parallel_naive, Mode::parallel_restored, Mode::vectorized}) {
    const BfsResult r = run_bfs(g, 1, pool, {m, 2});
    CHECK(r.layers == serial.layers);
  }
}

TEST_CASE("no negative parents survive a layer and lossy words stay nonzero") {
  const CsrGraph g = rmat_graph(12);
  for (lane::Backend b : backends()) {
    for (std::size_t layers : {0U, 2U, 100U}) {
      std::size_t pending_checked = 0;
      std::size_t lost_words = 0;
      BfsOptions opt;
      opt.backend = b;
      opt.before_restore = [&](LayerProbe& probe) {
        for (std::size_t v = 0; v < probe.predecessors.size(); ++v) {
          if (probe.predecessors[v] >= 0) continue;
          ++pending_checked;
          REQUIRE(probe.out.word_at(v / 32) != 0);
          if (!probe.out.test_bit(v)) ++lost_words;
          REQUIRE_FALSE(probe.vis.test_bit(v));
        }
      };
      WorkerPool pool(4);
      const BfsResult r = bfs_vectorized(g, 0, pool, {Mode::vectorized, layers}, opt);
      for (std::size_t v = 0; v < r.predecessors.size(); ++v) REQUIRE(r.predecessors[v] >= 0);
      CHECK(pending_checked > 0);
      MESSAGE("pending marks checked: " << pending_checked << ", bits lost before restore: " << lost_words);
    }
  }
}

TEST_CASE("restoration recovers vertices 5 and 9 sharing word 0") {
  for (int variant = 0; variant < 3; ++variant) {
    if (variant == 2 && !lane::accelerated_available()) continue;
    const std::size_t n = 64;
    Bitmap out(n), vis(n);
    PredecessorArray p(n);
    p.set(0, 0);
    vis.set_bit(0);
    out.set_bit(5);
    p.set(5, 2 - static_cast<std::int32_t>(n));
    p.set(9, 3 - static_cast<std::int32_t>(n));
    std::size_t restored = 0;
    if (variant == 0) restored = restore_layer(out, vis, p, n);
    if (variant == 1) restored = restore_layer_vectorized(out, vis, p, n, lane::Backend::scalar);
    if (variant == 2) restored = restore_layer_vectorized(out, vis, p, n, lane::Backend::avx512);
    CHECK(restored == 2);
    CHECK(out.word_at(0) == ((1U << 5) | (1U << 9)));
    CHECK(vis.word_at(0) == ((1U << 0) | (1U << 5) | (1U << 9)));
    CHECK(p[5] == 2);
    CHECK(p[9] == 3);
    CHECK(out.word_at(1) == 0);
  }
}

TEST_CASE("restoration of high-half-only and fully pending words") {
  for (int variant = 0; variant < 3; ++variant) {
    if (variant == 2 && !lane::accelerated_available()) continue;
    auto restore = [&](Bitmap& out, Bitmap& vis, PredecessorArray& p) {
      if (variant == 0) return restore_layer(out, vis, p, p.size());
      return restore_layer_vectorized(out, vis, p, p.size(),
                                      variant == 1 ? lane::Backend::scalar : lane::Backend::avx512);
    };
    {
      Bitmap out(96), vis(96);
      PredecessorArray p(96);
      out.set_bit(32 + 20);
      p.set(32 + 20, 1 - 96);
      p.set(32 + 25, 1 - 96);
      CHECK(restore(out, vis, p) == 2);
      CHECK(out.word_at(1) == ((1U << 20) | (1U << 25)));
      CHECK(vis.word_at(1) == out.word_at(1));
      CHECK(vis.word_at(0) == 0);
    }
    {
      Bitmap out(64), vis(64);
      PredecessorArray p(64);
      out.set_bit(0);
      for (int v = 0; v < 32; ++v) p.set(v, v + 32 - 64);
      CHECK(restore(out, vis, p) == 32);
      CHECK(out.word_at(0) == 0xFFFFFFFFU);
      CHECK(vis.word_at(0) == 0xFFFFFFFFU);
      for (int v = 0; v < 32; ++v) CHECK(p[v] == v + 32);
    }
    {
      // A negative mark in an all-zero word is outside the scan.
      Bitmap out(64), vis(64);
      PredecessorArray p(64);
      p.set(40, -3);
      CHECK(restore(out, vis, p) == 0);
      CHECK(p[40] == -3);
    }
  }
}

TEST_CASE("restoration handles a partial last word") {
  for (lane::Backend b : backends()) {
    Bitmap out(37), vis(37);
    PredecessorArray p(37);
    out.set_bit(33);
    p.set(33, 0 - 37);
    p.set(36, 4 - 37);
    CHECK(restore_layer_vectorized(out, vis, p, 37, b) == 2);
    CHECK(out.word_at(1) == 0b10010);
    CHECK(p[36] == 4);
  }
}

TEST_CASE("vectorized and scalar restoration agree on random corruption") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = 1 + rng() % 300;
    Bitmap out(n), vis(n);
    PredecessorArray p(n);
    for (std::size_t v = 0; v < n; ++v) {
      const unsigned r = rng() % 4;
      if (r == 0) {
        p.set(v, static_cast<std::int32_t>(rng() % n) - static_cast<std::int32_t>(n));
        if (rng() % 3 == 0) out.set_bit(v);
      } else if (r == 1) {
        p.set(v, static_cast<std::int32_t>(rng() % n));
        vis.set_bit(v);
      }
    }
    // Every word owning a pending vertex keeps some bit, as after a real layer.
    for (std::size_t v = 0; v < n; ++v)
      if (p[v] < 0 && out.word_at(v / 32) == 0) out.set_bit(v);

    for (lane::Backend b : backends()) {
      Bitmap out1 = out, vis1 = vis, out2 = out, vis2 = vis;
      PredecessorArray p1 = p, p2 = p;
      const std::size_t c1 = restore_layer(out1, vis1, p1, n);
      const std::size_t c2 = restore_layer_vectorized(out2, vis2, p2, n, b);
      REQUIRE(c1 == c2);
      REQUIRE(p1 == p2);
      REQUIRE(std::equal(out1.words().begin(), out1.words().end(), out2.words().begin()));
      REQUIRE(std::equal(vis1.words().begin(), vis1.words().end(), vis2.words().begin()));
      for (std::size_t v = 0; v < n; ++v) REQUIRE(p1[v] >= 0);
    }
  }
}

TEST_CASE("vectorized exploration matches the scalar loop on an 8-neighbour toy") {
  // Vertex 0 touches eight neighbours spread over two words.
  const std::vector<VertexId> nbrs{3, 7, 8, 30, 31, 33, 40, 63};
  EdgeList list;
  list.num_vertices = 64;
  for (VertexId v : nbrs) list.edges.push_back({0, v});
  const CsrGraph g = build_csr(list);
  std::mt19937 rng(8);
  for (unsigned pattern = 0; pattern < 256; ++pattern) {
    for (int out_case = 0; out_case < 4; ++out_case) {
      Bitmap vis(64), out(64);
      vis.set_bit(0);
      for (std::size_t i = 0; i < nbrs.size(); ++i)
        if ((pattern >> i) & 1U) vis.set_bit(nbrs[i]);
      for (std::size_t i = 0; i < nbrs.size() && out_case > 0; ++i)
        if (rng() % 3 == 0) out.set_bit(nbrs[i]);

      Bitmap out_s = out;
      PredecessorArray p_s(64);
      const std::size_t marked_s = explore_adjacency_scalar(g, 0, vis, out_s, p_s);
      REQUIRE(marked_s == static_cast<std::size_t>(std::count_if(nbrs.begin(), nbrs.end(), [&](VertexId v) {
                return !vis.test_bit(v) && !out.test_bit(v);
              })));

      for (lane::Backend b : backends()) {
        Bitmap out_v = out;
        PredecessorArray p_v(64);
        explore_adjacency_vectorized(g, 0, vis, out_v, p_v, b);
        for (std::size_t v = 0; v < 64; ++v) {
          REQUIRE((p_v[v] < 0) == (p_s[v] < 0));
          if (p_v[v] < 0) REQUIRE(p_v[v] == 0 - 64);
          REQUIRE((!out_v.test_bit(v) || out_s.test_bit(v)));
        }
        Bitmap vis_s = vis, vis_v = vis, out_s2 = out_s;
        PredecessorArray p_s2 = p_s;
        restore_layer(out_s2, vis_s, p_s2, 64);
        restore_layer(out_v, vis_v, p_v, 64);
        REQUIRE(std::equal(out_s2.words().begin(), out_s2.words().end(), out_v.words().begin()));
        REQUIRE(std::equal(vis_s.words().begin(), vis_s.words().end(), vis_v.words().begin()));
        REQUIRE(p_s2 == p_v);
      }
    }
  }
}

TEST_CASE("vectorized exploration matches the scalar loop on random large cases") {
  const CsrGraph g = rmat_graph(12, 16, 21);
  const std::size_t n = g.num_vertices();
  std::mt19937 rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    Bitmap vis(n), out(n);
    for (std::size_t v = 0; v < n; ++v) {
      const unsigned r = rng() % 10;
      if (r < 3) vis.set_bit(v);
      else if (r == 3) out.set_bit(v);
    }
    // Hubs give long adjacency runs with peel, body and remainder parts.
    VertexId u = static_cast<VertexId>(rng() % n);
    if (trial % 3 == 0) u = trial % 6 == 0 ? 0 : static_cast<VertexId>(rng() % 32);
    Bitmap out_s = out;
    PredecessorArray p_s(n);
    explore_adjacency_scalar(g, u, vis, out_s, p_s);
    for (lane::Backend b : backends()) {
      Bitmap out_v = out;
      PredecessorArray p_v(n);
      explore_adjacency_vectorized(g, u, vis, out_v, p_v, b);
      for (VertexId v : g.neighbors(u)) REQUIRE((p_v[v] < 0) == (p_s[v] < 0));
      REQUIRE(p_v == p_s);
      for (std::size_t w = 0; w < out.word_count(); ++w) REQUIRE((out_v.word_at(w) & ~out_s.word_at(w)) == 0);
      Bitmap vis_v = vis, vis_s = vis, out_s2 = out_s;
      PredecessorArray p_s2 = p_s;
      restore_layer(out_v, vis_v, p_v, n);
      restore_layer(out_s2, vis_s, p_s2, n);
      REQUIRE(std::equal(out_s2.words().begin(), out_s2.words().end(), out_v.words().begin()));
      REQUIRE(std::equal(vis_s.words().begin(), vis_s.words().end(), vis_v.words().begin()));
    }
  }
}

TEST_CASE("worker pool runs every index and propagates exceptions") {
  WorkerPool pool(3);
  CHECK(pool.size() == 3);
  std::vector<int> hits(3, 0);
  pool.run([&](std::size_t w) { hits[w]++; });
  CHECK(hits == std::vector<int>{1, 1, 1});
  CHECK_THROWS_AS(pool.run([](std::size_t w) {
    if (w == 2) throw std::runtime_error("boom");
  }),
                  std::runtime_error);
  pool.run([&](std::size_t w) { hits[w]++; });
  CHECK(hits == std::vector<int>{2, 2, 2});
}

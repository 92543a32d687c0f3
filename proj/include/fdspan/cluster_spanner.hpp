#pragma once

// Fault-degree tolerant 3-spanner by clustering around sampled centers.
//
//   (i)   every edge at a node of degree <= f*sqrt(n)
//   (ii)  each high-degree node joins f+1 of its neighboring centers
//   (iii) for each high-degree v and center c, edges from v to 3f common
//         neighbors x of v and c with (x,c) already in H
//
// For a surviving edge (u,v) between high-degree nodes, some edge (u,c) with
// c a center survives; of the 3f nodes x chosen for (v,c), at most 2f lose
// (x,c) or (x,v), so u - c - x - v survives.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <vector>

#include "fdspan/graph.hpp"
#include "fdspan/rng.hpp"

namespace fdspan {

struct ThreeSpannerResult {
  std::vector<EdgeId> edges;    // sorted g edge ids
  std::vector<NodeId> centers;  // sorted
  double degree_threshold = 0;  // f * sqrt(n)
  double size_cap = 0;          // (f sqrt n) n + (f+1) n + 3 f n |centers|
  int attempts = 1;             // center samples drawn
  std::uint64_t center_seed = 0;
};

inline double three_spanner_degree_threshold(const Graph& g, int f) {
  return f * std::sqrt(static_cast<double>(g.num_nodes()));
}

/// ceil(c_sample * sqrt(n) * ln n) distinct nodes (all nodes when that is >= n).
inline std::vector<NodeId> sample_centers(const Graph& g, double c_sample, std::uint64_t seed) {
  if (!(c_sample > 0.0)) throw Error("sample_centers: c_sample must be positive");
  const int n = g.num_nodes();
  const double want = std::ceil(c_sample * std::sqrt(static_cast<double>(n)) * std::log(std::max(2, n)));
  const int count = static_cast<int>(std::min<double>(n, want));
  std::vector<NodeId> nodes(static_cast<std::size_t>(n));
  for (NodeId x = 0; x < n; ++x) nodes[static_cast<std::size_t>(x)] = x;
  Rng rng(seed);
  rng.shuffle(nodes);
  nodes.resize(static_cast<std::size_t>(count));
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

/// True iff every node of degree above f*sqrt(n) has at least f+1 neighbors
/// among `centers`.
inline bool check_center_coverage(const Graph& g, std::span<const NodeId> centers, int f) {
  std::vector<char> is_center(static_cast<std::size_t>(g.num_nodes()), 0);
  for (NodeId c : centers) is_center[static_cast<std::size_t>(c)] = 1;
  const double threshold = three_spanner_degree_threshold(g, f);
  for (NodeId x = 0; x < g.num_nodes(); ++x) {
    if (g.degree(x) <= threshold) continue;
    int seen = 0;
    for (EdgeId e : g.incident(x))
      if (is_center[static_cast<std::size_t>(g.edge(e).other(x))]) ++seen;
    if (seen < f + 1) return false;
  }
  return true;
}

/// The construction for a fixed center set. Choices among equals go to the
/// lowest node ids.
inline ThreeSpannerResult fd_three_spanner_with_centers(const Graph& g, int f, std::vector<NodeId> centers) {
  if (f < 1) throw Error("fd_three_spanner: f must be at least 1 (use the greedy construction with f = 0)");
  if (g.weighted()) throw Error("fd_three_spanner: graph must be unweighted");
  const int n = g.num_nodes();
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
  ThreeSpannerResult out;
  out.degree_threshold = three_spanner_degree_threshold(g, f);
  out.size_cap = out.degree_threshold * n + static_cast<double>(f + 1) * n +
                 3.0 * f * n * static_cast<double>(centers.size());

  std::vector<char> in_h(static_cast<std::size_t>(g.num_edges()), 0);
  std::vector<char> high(static_cast<std::size_t>(n), 0), is_center(static_cast<std::size_t>(n), 0);
  for (NodeId c : centers) is_center[static_cast<std::size_t>(c)] = 1;
  for (NodeId x = 0; x < n; ++x) {
    high[static_cast<std::size_t>(x)] = g.degree(x) > out.degree_threshold;
    if (!high[static_cast<std::size_t>(x)])
      for (EdgeId e : g.incident(x)) in_h[static_cast<std::size_t>(e)] = 1;
  }
  // (ii) lowest-id f+1 neighboring centers.
  for (NodeId v = 0; v < n; ++v) {
    if (!high[static_cast<std::size_t>(v)]) continue;
    std::vector<std::pair<NodeId, EdgeId>> nbr;
    for (EdgeId e : g.incident(v)) {
      NodeId c = g.edge(e).other(v);
      if (is_center[static_cast<std::size_t>(c)]) nbr.emplace_back(c, e);
    }
    std::sort(nbr.begin(), nbr.end());
    for (std::size_t i = 0; i < nbr.size() && i < static_cast<std::size_t>(f + 1); ++i)
      in_h[static_cast<std::size_t>(nbr[i].second)] = 1;
  }
  // (iii) on bitsets: rows of g's adjacency and of each center's cluster.
  const int words = (n + 63) / 64;
  auto bit_rows = [&](auto keep) {
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(n) * static_cast<std::size_t>(words), 0);
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (!keep(e)) continue;
      const Edge& ed = g.edge(e);
      rows[static_cast<std::size_t>(ed.u) * words + static_cast<std::size_t>(ed.v / 64)] |= std::uint64_t{1} << (ed.v % 64);
      rows[static_cast<std::size_t>(ed.v) * words + static_cast<std::size_t>(ed.u / 64)] |= std::uint64_t{1} << (ed.u % 64);
    }
    return rows;
  };
  auto adj = bit_rows([](EdgeId) { return true; });
  auto cluster = bit_rows([&](EdgeId e) { return in_h[static_cast<std::size_t>(e)] != 0; });
  std::vector<EdgeId> added;
  for (NodeId v = 0; v < n; ++v) {
    if (!high[static_cast<std::size_t>(v)]) continue;
    const std::uint64_t* av = adj.data() + static_cast<std::size_t>(v) * words;
    for (NodeId c : centers) {
      if (c == v) continue;
      const std::uint64_t* ac = adj.data() + static_cast<std::size_t>(c) * words;
      const std::uint64_t* hc = cluster.data() + static_cast<std::size_t>(c) * words;
      int need = 3 * f;
      for (int w = 0; w < words && need > 0; ++w) {
        std::uint64_t bits = av[w] & ac[w] & hc[w];
        while (bits && need > 0) {
          NodeId x = w * 64 + std::countr_zero(bits);
          bits &= bits - 1;
          added.push_back(*g.find_edge(v, x));
          --need;
        }
      }
    }
  }
  for (EdgeId e : added) in_h[static_cast<std::size_t>(e)] = 1;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (in_h[static_cast<std::size_t>(e)]) out.edges.push_back(e);
  out.centers = std::move(centers);
  return out;
}

/// Seed of the a-th center sample drawn for a root seed.
inline std::uint64_t center_sample_seed(std::uint64_t seed, int attempt) {
  return Rng::stream(seed, "centers", static_cast<std::uint64_t>(attempt)).next();
}

/// Samples centers (resampling up to `max_attempts` times until every
/// high-degree node sees f+1 of them) and builds the spanner.
inline ThreeSpannerResult fd_three_spanner(const Graph& g, int f, double c_sample, std::uint64_t seed,
                                           int max_attempts = 10) {
  if (f < 1) throw Error("fd_three_spanner: f must be at least 1 (use the greedy construction with f = 0)");
  for (int a = 0; a < max_attempts; ++a) {
    std::uint64_t s = center_sample_seed(seed, a);
    auto centers = sample_centers(g, c_sample, s);
    if (!check_center_coverage(g, centers, f)) continue;
    ThreeSpannerResult out = fd_three_spanner_with_centers(g, f, std::move(centers));
    out.attempts = a + 1;
    out.center_seed = s;
    return out;
  }
  throw Error("fd_three_spanner: center coverage failed for " + std::to_string(max_attempts) +
              " samples (seed " + std::to_string(seed) + ", c_sample " + std::to_string(c_sample) + ")");
}

}  // namespace fdspan

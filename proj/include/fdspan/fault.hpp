#pragma once

// Bounded-degree fault sets and the verifiers for fault-tolerant spanners and
// connectivity certificates.
//
// Spanner checks are edge-level: H \ F is a t-spanner of G \ F iff every
// surviving edge (u,v) of G has dist_{H\F}(u,v) <= t * w(u,v).

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fdspan/generators.hpp"
#include "fdspan/graph.hpp"
#include "fdspan/paths.hpp"
#include "fdspan/rng.hpp"

namespace fdspan {

/// Random f-valid fault set: scan a seeded permutation of the edges and add
/// each with probability `density` while both endpoint degrees stay <= f.
inline FaultSet sample_fault_set(const Graph& g, int f, double density, std::uint64_t seed) {
  if (f < 0) throw Error("sample_fault_set: f must be nonnegative");
  FaultSet out(g);
  if (f == 0) return out;
  Rng rng = Rng::stream(seed, "fault-sample");
  std::vector<EdgeId> order(static_cast<std::size_t>(g.num_edges()));
  for (EdgeId e = 0; e < g.num_edges(); ++e) order[static_cast<std::size_t>(e)] = e;
  rng.shuffle(order);
  for (EdgeId e : order) {
    if (!rng.bernoulli(density)) continue;
    const Edge& ed = g.edge(e);
    if (out.degree(ed.u) < f && out.degree(ed.v) < f) out.insert(g, e);
  }
  return out;
}

/// For a blow-up of `base` with parameter f: every biclique edge of base edge
/// (bu, bv) except (bu_i, bv_j).
inline FaultSet adversarial_blowup_fault(const Graph& g, const Graph& base, int f, NodeId bu, NodeId bv, int i, int j) {
  if (!base.has_edge(bu, bv)) throw Error("adversarial_blowup_fault: base edge not in base graph");
  if (g.num_nodes() != base.num_nodes() * f) throw Error("adversarial_blowup_fault: graph is not a blow-up of base with this f");
  if (i < 0 || j < 0 || i >= f || j >= f) throw Error("adversarial_blowup_fault: copy index out of range");
  FaultSet out(g);
  for (int a = 0; a < f; ++a)
    for (int b = 0; b < f; ++b) {
      if (a == i && b == j) continue;
      auto e = g.find_edge(bu * f + a, bv * f + b);
      if (!e) throw Error("adversarial_blowup_fault: missing biclique edge");
      out.insert(g, *e);
    }
  return out;
}

/// Fault set forcing edge e of a blow-up: all other edges of e's biclique.
inline FaultSet adversarial_blowup_fault_for_edge(const Graph& g, const Graph& base, int f, EdgeId e) {
  const Edge& ed = g.edge(e);
  NodeId bu = ed.u / f, bv = ed.v / f;
  return adversarial_blowup_fault(g, base, f, bu, bv, ed.u % f, ed.v % f);
}

/// Every coordinate-`coord` edge of the generalized hypercube except `kept`.
inline FaultSet adversarial_hypercube_fault(const Graph& g, const gen::HypercubeShape& shape, int coord, EdgeId kept) {
  if (shape.num_nodes() != g.num_nodes()) throw Error("adversarial_hypercube_fault: shape does not match graph");
  if (coord < 0 || coord >= shape.d) throw Error("adversarial_hypercube_fault: coordinate out of range");
  if (kept < 0 || kept >= g.num_edges()) throw Error("adversarial_hypercube_fault: kept edge out of range");
  if (shape.differing_coordinate(g.edge(kept).u, g.edge(kept).v) != coord)
    throw Error("adversarial_hypercube_fault: kept edge is not a coordinate-" + std::to_string(coord) + " edge");
  FaultSet out(g);
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (e != kept && shape.differing_coordinate(g.edge(e).u, g.edge(e).v) == coord) out.insert(g, e);
  return out;
}

struct Violation {
  std::size_t fault_index = 0;
  EdgeId edge = -1;
  double ratio = 0.0;  // dist_{H\F}(u,v) / w(u,v); kInfinity when disconnected
};

struct SpannerCheck {
  std::vector<Violation> violations;
  double worst_ratio = 0.0;
  std::size_t edges_checked = 0;
};

struct CertificateCheck {
  std::vector<Violation> violations;  // ratio is kInfinity for every entry
  std::size_t fault_sets = 0;
};

namespace detail {

inline std::vector<char> membership(const Graph& g, std::span<const EdgeId> h) {
  std::vector<char> in(static_cast<std::size_t>(g.num_edges()), 0);
  for (EdgeId e : h) {
    if (e < 0 || e >= g.num_edges()) throw Error("verifier: subgraph edge id out of range");
    in[static_cast<std::size_t>(e)] = 1;
  }
  return in;
}

// Packed adjacency rows of H \ F for bitset BFS on unit-weight graphs.
class BitAdjacency {
 public:
  BitAdjacency(int n) : n_(n), words_((n + 63) / 64), rows_(static_cast<std::size_t>(n) * words_, 0) {}
  void add(NodeId a, NodeId b) {
    row(a)[b / 64] |= std::uint64_t{1} << (b % 64);
    row(b)[a / 64] |= std::uint64_t{1} << (a % 64);
  }
  std::uint64_t* row(NodeId x) { return rows_.data() + static_cast<std::size_t>(x) * words_; }
  const std::uint64_t* row(NodeId x) const { return rows_.data() + static_cast<std::size_t>(x) * words_; }
  int words() const { return words_; }
  int n() const { return n_; }

  /// Hop distances from src, -1 when unreachable.
  void bfs(NodeId src, std::vector<int>& dist) const {
    dist.assign(static_cast<std::size_t>(n_), -1);
    std::vector<std::uint64_t> visited(static_cast<std::size_t>(words_), 0), frontier(visited), next(visited);
    visited[src / 64] |= std::uint64_t{1} << (src % 64);
    frontier = visited;
    dist[static_cast<std::size_t>(src)] = 0;
    for (int level = 1;; ++level) {
      std::fill(next.begin(), next.end(), 0);
      for (int w = 0; w < words_; ++w) {
        std::uint64_t bits = frontier[static_cast<std::size_t>(w)];
        while (bits) {
          int x = w * 64 + std::countr_zero(bits);
          bits &= bits - 1;
          const std::uint64_t* r = row(x);
          for (int k = 0; k < words_; ++k) next[static_cast<std::size_t>(k)] |= r[k];
        }
      }
      bool any = false;
      for (int w = 0; w < words_; ++w) {
        std::uint64_t fresh = next[static_cast<std::size_t>(w)] & ~visited[static_cast<std::size_t>(w)];
        frontier[static_cast<std::size_t>(w)] = fresh;
        visited[static_cast<std::size_t>(w)] |= fresh;
        while (fresh) {
          int x = w * 64 + std::countr_zero(fresh);
          fresh &= fresh - 1;
          dist[static_cast<std::size_t>(x)] = level;
          any = true;
        }
      }
      if (!any) break;
    }
  }

 private:
  int n_;
  int words_;
  std::vector<std::uint64_t> rows_;
};

// Checks one fault set; appends violations and returns the worst ratio.
inline double check_spanner_one(const Graph& g, const std::vector<char>& in_h, double t, const FaultSet& faults,
                                std::size_t fault_index, std::vector<Violation>& out, std::size_t& checked,
                                bool stop_at_first = false) {
  const int n = g.num_nodes();
  double worst = 0.0;
  auto record = [&](EdgeId e, double dist) {
    const double w = g.edge(e).w;
    double ratio = w > 0 ? dist / w : (dist > 0 ? kInfinity : 1.0);
    worst = std::max(worst, ratio);
    // Relative slack for floating-point path sums.
    if (dist > t * w * (1.0 + 1e-12) + 1e-12) out.push_back({fault_index, e, ratio});
  };
  if (!g.weighted()) {
    BitAdjacency adj(n);
    for (EdgeId e = 0; e < g.num_edges(); ++e)
      if (in_h[static_cast<std::size_t>(e)] && !faults.contains(e)) adj.add(g.edge(e).u, g.edge(e).v);
    std::vector<std::vector<EdgeId>> pending(static_cast<std::size_t>(n));
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (faults.contains(e)) continue;
      ++checked;
      if (in_h[static_cast<std::size_t>(e)]) {
        worst = std::max(worst, 1.0);
        continue;
      }
      pending[static_cast<std::size_t>(g.edge(e).lo())].push_back(e);
    }
    std::vector<int> dist;
    for (NodeId u = 0; u < n; ++u) {
      if (pending[static_cast<std::size_t>(u)].empty()) continue;
      adj.bfs(u, dist);
      for (EdgeId e : pending[static_cast<std::size_t>(u)]) {
        int d = dist[static_cast<std::size_t>(g.edge(e).hi())];
        record(e, d < 0 ? kInfinity : static_cast<double>(d));
        if (stop_at_first && !out.empty()) return worst;
      }
    }
    return worst;
  }
  // Weighted: Dijkstra in H \ F from every lower endpoint.
  std::vector<EdgeId> h_ids;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (in_h[static_cast<std::size_t>(e)] && !faults.contains(e)) h_ids.push_back(e);
  Graph h = edge_subgraph(g, h_ids);
  std::vector<std::vector<EdgeId>> pending(static_cast<std::size_t>(n));
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (faults.contains(e)) continue;
    ++checked;
    pending[static_cast<std::size_t>(g.edge(e).lo())].push_back(e);
  }
  FaultSet none;
  for (NodeId u = 0; u < n; ++u) {
    if (pending[static_cast<std::size_t>(u)].empty()) continue;
    auto dist = distances_from(h, none, u);
    for (EdgeId e : pending[static_cast<std::size_t>(u)]) {
      record(e, dist[static_cast<std::size_t>(g.edge(e).hi())]);
      if (stop_at_first && !out.empty()) return worst;
    }
  }
  return worst;
}

}  // namespace detail

/// Checks H (edge ids of g) as a t-spanner of G under each fault set.
inline SpannerCheck verify_spanner(const Graph& g, std::span<const EdgeId> h, double t,
                                   std::span<const FaultSet> faults) {
  auto in_h = detail::membership(g, h);
  SpannerCheck report;
  for (std::size_t i = 0; i < faults.size(); ++i) {
    double w = detail::check_spanner_one(g, in_h, t, faults[i], i, report.violations, report.edges_checked);
    report.worst_ratio = std::max(report.worst_ratio, w);
  }
  return report;
}

/// Checks that H \ F and G \ F have identical component partitions.
inline CertificateCheck verify_certificate(const Graph& g, std::span<const EdgeId> h,
                                           std::span<const FaultSet> faults) {
  auto in_h = detail::membership(g, h);
  CertificateCheck report;
  report.fault_sets = faults.size();
  for (std::size_t i = 0; i < faults.size(); ++i) {
    const FaultSet& f = faults[i];
    UnionFind uf(g.num_nodes());
    for (EdgeId e = 0; e < g.num_edges(); ++e)
      if (in_h[static_cast<std::size_t>(e)] && !f.contains(e)) uf.unite(g.edge(e).u, g.edge(e).v);
    // H is a subgraph, so the partitions agree iff every surviving G edge
    // joins nodes already connected in H \ F.
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (f.contains(e) || in_h[static_cast<std::size_t>(e)]) continue;
      if (uf.find(g.edge(e).u) != uf.find(g.edge(e).v)) {
        report.violations.push_back({i, e, kInfinity});
        break;  // one witness edge per fault set
      }
    }
  }
  return report;
}

inline constexpr int kMaxExhaustiveEdges = 20;

struct ExhaustiveResult {
  bool ok = true;
  std::size_t fault_sets_checked = 0;
  std::vector<EdgeId> witness_faults;  // set only when !ok
  EdgeId witness_edge = -1;
};

/// Enumerates every f-valid fault set of g (m <= 20) by backtracking with
/// fault-degree pruning, checking the stretch-t condition for each.
inline ExhaustiveResult exhaustive_verify_spanner(const Graph& g, std::span<const EdgeId> h, double t, int f) {
  if (g.num_edges() > kMaxExhaustiveEdges)
    throw Error("exhaustive verification: m = " + std::to_string(g.num_edges()) + " exceeds 20");
  if (f < 0) throw Error("exhaustive verification: f must be nonnegative");
  auto in_h = detail::membership(g, h);
  ExhaustiveResult result;
  FaultSet current(g);
  std::vector<Violation> scratch;
  const int m = g.num_edges();
  auto recurse = [&](auto&& self, EdgeId next) -> bool {
    if (next == m) {
      ++result.fault_sets_checked;
      std::size_t checked = 0;
      scratch.clear();
      detail::check_spanner_one(g, in_h, t, current, 0, scratch, checked, true);
      if (!scratch.empty()) {
        result.ok = false;
        result.witness_faults = current.sorted_ids();
        result.witness_edge = scratch.front().edge;
        return false;
      }
      return true;
    }
    if (!self(self, next + 1)) return false;
    const Edge& ed = g.edge(next);
    if (current.degree(ed.u) < f && current.degree(ed.v) < f) {
      current.insert(g, next);
      bool keep_going = self(self, next + 1);
      current.erase(g, next);
      if (!keep_going) return false;
    }
    return true;
  };
  recurse(recurse, 0);
  return result;
}

inline bool bruteforce_verify_spanner_small(const Graph& g, std::span<const EdgeId> h, double t, int f) {
  return exhaustive_verify_spanner(g, h, t, f).ok;
}

}  // namespace fdspan

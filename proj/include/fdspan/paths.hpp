#pragma once

// Distances, hop-bounded reachability and connected components, all computed
// in g with an excluded edge set removed.

#include <cstdint>
#include <deque>
#include <functional>
#include <numeric>
#include <optional>
#include <queue>
#include <vector>

#include "fdspan/graph.hpp"

namespace fdspan {

/// Single-source weighted distances in g minus `excluded`.
inline std::vector<double> distances_from(const Graph& g, const FaultSet& excluded, NodeId src) {
  std::vector<double> dist(static_cast<std::size_t>(g.num_nodes()), kInfinity);
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[static_cast<std::size_t>(src)] = 0.0;
  pq.emplace(0.0, src);
  while (!pq.empty()) {
    auto [d, x] = pq.top();
    pq.pop();
    if (d > dist[static_cast<std::size_t>(x)]) continue;
    for (EdgeId e : g.incident(x)) {
      if (excluded.contains(e)) continue;
      const Edge& ed = g.edge(e);
      NodeId y = ed.other(x);
      double nd = d + ed.w;
      if (nd < dist[static_cast<std::size_t>(y)]) {
        dist[static_cast<std::size_t>(y)] = nd;
        pq.emplace(nd, y);
      }
    }
  }
  return dist;
}

/// Exact weighted distance between u and v avoiding `excluded`; kInfinity when
/// they are disconnected.
inline double shortest_dist(const Graph& g, const FaultSet& excluded, NodeId u, NodeId v) {
  if (u < 0 || v < 0 || u >= g.num_nodes() || v >= g.num_nodes()) throw Error("shortest_dist: node out of range");
  if (u == v) return 0.0;
  std::vector<double> dist(static_cast<std::size_t>(g.num_nodes()), kInfinity);
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[static_cast<std::size_t>(u)] = 0.0;
  pq.emplace(0.0, u);
  while (!pq.empty()) {
    auto [d, x] = pq.top();
    pq.pop();
    if (x == v) return d;
    if (d > dist[static_cast<std::size_t>(x)]) continue;
    for (EdgeId e : g.incident(x)) {
      if (excluded.contains(e)) continue;
      const Edge& ed = g.edge(e);
      NodeId y = ed.other(x);
      double nd = d + ed.w;
      if (nd < dist[static_cast<std::size_t>(y)]) {
        dist[static_cast<std::size_t>(y)] = nd;
        pq.emplace(nd, y);
      }
    }
  }
  return kInfinity;
}

/// BFS hop distances from src, -1 for unreachable nodes. Search stops
/// expanding past `max_hops`.
inline std::vector<int> hop_distances(const Graph& g, const FaultSet& excluded, NodeId src,
                                      int max_hops = std::numeric_limits<int>::max()) {
  std::vector<int> dist(static_cast<std::size_t>(g.num_nodes()), -1);
  std::vector<NodeId> frontier{src};
  dist[static_cast<std::size_t>(src)] = 0;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    NodeId x = frontier[head];
    int dx = dist[static_cast<std::size_t>(x)];
    if (dx >= max_hops) continue;
    for (EdgeId e : g.incident(x)) {
      if (excluded.contains(e)) continue;
      NodeId y = g.edge(e).other(x);
      if (dist[static_cast<std::size_t>(y)] < 0) {
        dist[static_cast<std::size_t>(y)] = dx + 1;
        frontier.push_back(y);
      }
    }
  }
  return dist;
}

/// True iff some u-v path with at most `hops` edges avoids `excluded`.
inline bool hop_limited_reachable(const Graph& g, const FaultSet& excluded, NodeId u, NodeId v, int hops) {
  if (hops < 0) throw Error("hop_limited_reachable: negative hop bound");
  if (u == v) return true;
  auto dist = hop_distances(g, excluded, u, hops);
  return dist[static_cast<std::size_t>(v)] >= 0;
}

/// A fewest-hop u-v path (as edge ids, from u) with at most `hops` edges,
/// avoiding `excluded`; nullopt if none exists.
inline std::optional<std::vector<EdgeId>> shortest_hop_path(const Graph& g, const FaultSet& excluded, NodeId u,
                                                            NodeId v, int hops) {
  std::vector<EdgeId> via(static_cast<std::size_t>(g.num_nodes()), -1);
  std::vector<int> dist(static_cast<std::size_t>(g.num_nodes()), -1);
  std::vector<NodeId> frontier{u};
  dist[static_cast<std::size_t>(u)] = 0;
  for (std::size_t head = 0; head < frontier.size(); ++head) {
    NodeId x = frontier[head];
    int dx = dist[static_cast<std::size_t>(x)];
    if (x == v) break;
    if (dx >= hops) continue;
    for (EdgeId e : g.incident(x)) {
      if (excluded.contains(e)) continue;
      NodeId y = g.edge(e).other(x);
      if (dist[static_cast<std::size_t>(y)] < 0) {
        dist[static_cast<std::size_t>(y)] = dx + 1;
        via[static_cast<std::size_t>(y)] = e;
        frontier.push_back(y);
      }
    }
  }
  if (dist[static_cast<std::size_t>(v)] < 0) return std::nullopt;
  std::vector<EdgeId> path;
  for (NodeId x = v; x != u;) {
    EdgeId e = via[static_cast<std::size_t>(x)];
    path.push_back(e);
    x = g.edge(e).other(x);
  }
  std::reverse(path.begin(), path.end());
  return path;
}

class UnionFind {
 public:
  explicit UnionFind(int n) : parent_(static_cast<std::size_t>(n)), size_(static_cast<std::size_t>(n), 1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int x) {
    while (parent_[static_cast<std::size_t>(x)] != x) {
      parent_[static_cast<std::size_t>(x)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(x)])];
      x = parent_[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[static_cast<std::size_t>(a)] < size_[static_cast<std::size_t>(b)]) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    size_[static_cast<std::size_t>(a)] += size_[static_cast<std::size_t>(b)];
    return true;
  }

 private:
  std::vector<int> parent_;
  std::vector<int> size_;
};

/// Component label per node. Labels are canonical: the label of a component
/// is the smallest node id it contains, so equal partitions give equal vectors.
inline std::vector<NodeId> component_labels(const Graph& g, const FaultSet& excluded) {
  UnionFind uf(g.num_nodes());
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (excluded.contains(e)) continue;
    uf.unite(g.edge(e).u, g.edge(e).v);
  }
  std::vector<NodeId> root_min(static_cast<std::size_t>(g.num_nodes()), -1);
  std::vector<NodeId> label(static_cast<std::size_t>(g.num_nodes()));
  for (NodeId x = 0; x < g.num_nodes(); ++x) {
    int r = uf.find(x);
    if (root_min[static_cast<std::size_t>(r)] < 0) root_min[static_cast<std::size_t>(r)] = x;
    label[static_cast<std::size_t>(x)] = root_min[static_cast<std::size_t>(r)];
  }
  return label;
}

/// Connected components of g minus `excluded`, each sorted, ordered by
/// smallest member.
inline std::vector<std::vector<NodeId>> components(const Graph& g, const FaultSet& excluded) {
  auto label = component_labels(g, excluded);
  std::vector<int> slot(static_cast<std::size_t>(g.num_nodes()), -1);
  std::vector<std::vector<NodeId>> out;
  for (NodeId x = 0; x < g.num_nodes(); ++x) {
    NodeId l = label[static_cast<std::size_t>(x)];
    if (slot[static_cast<std::size_t>(l)] < 0) {
      slot[static_cast<std::size_t>(l)] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[static_cast<std::size_t>(slot[static_cast<std::size_t>(l)])].push_back(x);
  }
  return out;
}

inline bool is_connected(const Graph& g, const FaultSet& excluded = {}) {
  if (g.num_nodes() <= 1) return true;
  auto label = component_labels(g, excluded);
  for (NodeId l : label)
    if (l != 0) return false;
  return true;
}

/// Length of the shortest cycle, or 0 for a forest. Exact BFS-per-node method.
inline int girth(const Graph& g) {
  int best = std::numeric_limits<int>::max();
  const int n = g.num_nodes();
  std::vector<int> dist(static_cast<std::size_t>(n));
  std::vector<EdgeId> via(static_cast<std::size_t>(n));
  for (NodeId s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    std::vector<NodeId> q{s};
    dist[static_cast<std::size_t>(s)] = 0;
    via[static_cast<std::size_t>(s)] = -1;
    for (std::size_t head = 0; head < q.size(); ++head) {
      NodeId x = q[head];
      if (2 * dist[static_cast<std::size_t>(x)] + 1 >= best) break;
      for (EdgeId e : g.incident(x)) {
        if (e == via[static_cast<std::size_t>(x)]) continue;
        NodeId y = g.edge(e).other(x);
        if (dist[static_cast<std::size_t>(y)] < 0) {
          dist[static_cast<std::size_t>(y)] = dist[static_cast<std::size_t>(x)] + 1;
          via[static_cast<std::size_t>(y)] = e;
          q.push_back(y);
        } else {
          best = std::min(best, dist[static_cast<std::size_t>(x)] + dist[static_cast<std::size_t>(y)] + 1);
        }
      }
    }
  }
  return best == std::numeric_limits<int>::max() ? 0 : best;
}

}  // namespace fdspan

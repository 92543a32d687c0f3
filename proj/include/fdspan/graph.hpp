#pragma once

// Core graph types: an undirected simple graph with stable edge ids, a fault
// set with per-node fault degrees, and the deterministic edge order used by
// every greedy construction.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

namespace fdspan {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Library error type. Every precondition violation surfaces as one of these.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  double w = 1.0;

  NodeId other(NodeId x) const { return x == u ? v : u; }
  NodeId lo() const { return std::min(u, v); }
  NodeId hi() const { return std::max(u, v); }
};

class Graph {
 public:
  Graph() = default;
  explicit Graph(int n) : adjacency_(static_cast<std::size_t>(n)), ext_degree_(static_cast<std::size_t>(n), 0) {
    if (n < 0) throw Error("graph: negative node count");
  }

  /// Adds an undirected edge and returns its id. Rejects loops, duplicates,
  /// out-of-range endpoints and negative weights.
  EdgeId add_edge(NodeId u, NodeId v, double w = 1.0) {
    if (u < 0 || v < 0 || u >= num_nodes() || v >= num_nodes())
      throw Error("graph: endpoint out of range (" + std::to_string(u) + "," + std::to_string(v) + ")");
    if (u == v) throw Error("graph: self-loop at node " + std::to_string(u));
    if (!(w >= 0.0)) throw Error("graph: negative or NaN weight");
    auto key = pair_key(u, v);
    if (index_.count(key)) throw Error("graph: duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    const auto id = static_cast<EdgeId>(edges_.size());
    edges_.push_back({u, v, w});
    adjacency_[u].push_back(id);
    adjacency_[v].push_back(id);
    index_.emplace(key, id);
    if (w != 1.0) weighted_ = true;
    return id;
  }

  int num_nodes() const { return static_cast<int>(adjacency_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const Edge& edge(EdgeId e) const { return edges_[static_cast<std::size_t>(e)]; }
  std::span<const Edge> edges() const { return edges_; }
  std::span<const EdgeId> incident(NodeId x) const { return adjacency_[static_cast<std::size_t>(x)]; }
  int degree(NodeId x) const { return static_cast<int>(adjacency_[static_cast<std::size_t>(x)].size()); }

  int ext_degree(NodeId x) const { return ext_degree_[static_cast<std::size_t>(x)]; }
  void set_ext_degree(NodeId x, int d) {
    if (d < 0) throw Error("graph: negative external degree");
    ext_degree_[static_cast<std::size_t>(x)] = d;
  }
  /// Volume of a single node: incident edges plus boundary self-loops.
  int volume(NodeId x) const { return degree(x) + ext_degree(x); }

  std::optional<EdgeId> find_edge(NodeId u, NodeId v) const {
    auto it = index_.find(pair_key(u, v));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  bool has_edge(NodeId u, NodeId v) const { return find_edge(u, v).has_value(); }

  /// True when some edge weight differs from 1.
  bool weighted() const { return weighted_; }

  int min_degree() const {
    int best = std::numeric_limits<int>::max();
    for (NodeId x = 0; x < num_nodes(); ++x) best = std::min(best, degree(x));
    return num_nodes() == 0 ? 0 : best;
  }
  int max_degree() const {
    int best = 0;
    for (NodeId x = 0; x < num_nodes(); ++x) best = std::max(best, degree(x));
    return best;
  }

 private:
  static std::uint64_t pair_key(NodeId u, NodeId v) {
    auto a = static_cast<std::uint64_t>(static_cast<std::uint32_t>(std::min(u, v)));
    auto b = static_cast<std::uint64_t>(static_cast<std::uint32_t>(std::max(u, v)));
    return (a << 32) | b;
  }

  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> adjacency_;
  std::vector<int> ext_degree_;
  std::unordered_map<std::uint64_t, EdgeId> index_;
  bool weighted_ = false;
};

/// Graph on the same node set holding only the listed edges of `g`.
/// Edge i of the result is edge ids[i] of `g`; ext_degree is copied.
inline Graph edge_subgraph(const Graph& g, std::span<const EdgeId> ids) {
  Graph h(g.num_nodes());
  for (EdgeId e : ids) {
    const Edge& ed = g.edge(e);
    h.add_edge(ed.u, ed.v, ed.w);
  }
  for (NodeId x = 0; x < g.num_nodes(); ++x) h.set_ext_degree(x, g.ext_degree(x));
  return h;
}

/// Graph with the given edges removed. Returned ids are renumbered; `kept`
/// receives the original id of every surviving edge when non-null.
inline Graph remove_edges(const Graph& g, std::span<const EdgeId> removed, std::vector<EdgeId>* kept = nullptr) {
  std::vector<char> drop(static_cast<std::size_t>(g.num_edges()), 0);
  for (EdgeId e : removed) drop[static_cast<std::size_t>(e)] = 1;
  std::vector<EdgeId> keep;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (!drop[static_cast<std::size_t>(e)]) keep.push_back(e);
  Graph h = edge_subgraph(g, keep);
  if (kept) *kept = std::move(keep);
  return h;
}

/// Set of faulty edges together with the per-node count of incident faults.
class FaultSet {
 public:
  FaultSet() = default;
  explicit FaultSet(const Graph& g)
      : member_(static_cast<std::size_t>(g.num_edges()), 0), degree_(static_cast<std::size_t>(g.num_nodes()), 0) {}

  FaultSet(const Graph& g, std::span<const EdgeId> ids) : FaultSet(g) {
    for (EdgeId e : ids) insert(g, e);
  }

  /// Returns false when the edge was already present.
  bool insert(const Graph& g, EdgeId e) {
    if (e < 0 || e >= static_cast<EdgeId>(member_.size())) throw Error("fault set: edge id out of range");
    if (member_[static_cast<std::size_t>(e)]) return false;
    member_[static_cast<std::size_t>(e)] = 1;
    ids_.push_back(e);
    const Edge& ed = g.edge(e);
    ++degree_[static_cast<std::size_t>(ed.u)];
    ++degree_[static_cast<std::size_t>(ed.v)];
    return true;
  }

  bool erase(const Graph& g, EdgeId e) {
    if (!contains(e)) return false;
    member_[static_cast<std::size_t>(e)] = 0;
    ids_.erase(std::find(ids_.begin(), ids_.end(), e));
    const Edge& ed = g.edge(e);
    --degree_[static_cast<std::size_t>(ed.u)];
    --degree_[static_cast<std::size_t>(ed.v)];
    return true;
  }

  bool contains(EdgeId e) const {
    return e >= 0 && e < static_cast<EdgeId>(member_.size()) && member_[static_cast<std::size_t>(e)];
  }
  int degree(NodeId x) const { return degree_.empty() ? 0 : degree_[static_cast<std::size_t>(x)]; }
  int max_degree() const {
    int best = 0;
    for (int d : degree_) best = std::max(best, d);
    return best;
  }
  bool valid_for(int f) const { return max_degree() <= f; }

  std::size_t size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }
  /// Edge ids in insertion order.
  std::span<const EdgeId> ids() const { return ids_; }
  std::vector<EdgeId> sorted_ids() const {
    std::vector<EdgeId> out = ids_;
    std::sort(out.begin(), out.end());
    return out;
  }
  /// Number of edges of the graph this set was built for.
  std::size_t universe_size() const { return member_.size(); }

 private:
  std::vector<char> member_;
  std::vector<int> degree_;
  std::vector<EdgeId> ids_;
};

using EdgeOrder = std::vector<EdgeId>;

/// Total order on edges by (weight, min endpoint, max endpoint, edge id).
inline EdgeOrder order_edges(const Graph& g) {
  EdgeOrder order(static_cast<std::size_t>(g.num_edges()));
  for (EdgeId e = 0; e < g.num_edges(); ++e) order[static_cast<std::size_t>(e)] = e;
  std::sort(order.begin(), order.end(), [&](EdgeId a, EdgeId b) {
    const Edge& x = g.edge(a);
    const Edge& y = g.edge(b);
    return std::make_tuple(x.w, x.lo(), x.hi(), a) < std::make_tuple(y.w, y.lo(), y.hi(), b);
  });
  return order;
}

}  // namespace fdspan

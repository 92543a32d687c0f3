#pragma once

// Seeded graph generators, including the two lower-bound families whose only
// valid fault-tolerant subgraph is the whole graph.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "fdspan/graph.hpp"
#include "fdspan/rng.hpp"

namespace fdspan::gen {

/// Erdos-Renyi G(n, p): each unordered pair independently with probability p.
inline Graph gnp(int n, double p, std::uint64_t seed) {
  if (n < 0) throw Error("gnp: negative n");
  if (!(p >= 0.0 && p <= 1.0)) throw Error("gnp: p must lie in [0,1]");
  Rng rng = Rng::stream(seed, "gnp");
  Graph g(n);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) g.add_edge(u, v);
  return g;
}

inline Graph complete(int n) {
  Graph g(n);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

inline Graph cycle(int n) {
  if (n < 3) throw Error("cycle: need n >= 3");
  Graph g(n);
  for (NodeId u = 0; u < n; ++u) g.add_edge(u, (u + 1) % n);
  return g;
}

inline Graph path(int n) {
  if (n < 1) throw Error("path: need n >= 1");
  Graph g(n);
  for (NodeId u = 0; u + 1 < n; ++u) g.add_edge(u, u + 1);
  return g;
}

namespace detail {

// Steger-Wormald pairing: repeatedly match two random free points whose
// nodes are distinct and not yet adjacent; restart when stuck.
inline bool try_pairing(int n, int d, Rng& rng, std::vector<std::pair<NodeId, NodeId>>& out) {
  std::vector<NodeId> points;
  points.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(d));
  for (NodeId x = 0; x < n; ++x)
    for (int i = 0; i < d; ++i) points.push_back(x);
  std::vector<std::vector<NodeId>> adj(static_cast<std::size_t>(n));
  auto adjacent = [&](NodeId a, NodeId b) {
    const auto& row = adj[static_cast<std::size_t>(a)];
    return std::find(row.begin(), row.end(), b) != row.end();
  };
  out.clear();
  while (!points.empty()) {
    bool placed = false;
    const std::size_t attempts = 50 + 4 * points.size();
    for (std::size_t t = 0; t < attempts; ++t) {
      std::size_t i = static_cast<std::size_t>(rng.below(points.size()));
      std::size_t j = static_cast<std::size_t>(rng.below(points.size()));
      if (i == j) continue;
      NodeId a = points[i], b = points[j];
      if (a == b || adjacent(a, b)) continue;
      adj[static_cast<std::size_t>(a)].push_back(b);
      adj[static_cast<std::size_t>(b)].push_back(a);
      out.emplace_back(std::min(a, b), std::max(a, b));
      if (i < j) std::swap(i, j);
      std::swap(points[i], points.back());
      points.pop_back();
      std::swap(points[j], points.back());
      points.pop_back();
      placed = true;
      break;
    }
    if (!placed) {
      // Exhaustive check: does any suitable pair remain?
      bool any = false;
      for (std::size_t i = 0; i < points.size() && !any; ++i)
        for (std::size_t j = i + 1; j < points.size() && !any; ++j)
          any = points[i] != points[j] && !adjacent(points[i], points[j]);
      if (!any) return false;
    }
  }
  return true;
}

}  // namespace detail

/// Simple d-regular graph on n nodes. d > (n-1)/2 is produced as the
/// complement of an (n-1-d)-regular graph; d = n-1 is K_n.
inline Graph random_regular(int n, int d, std::uint64_t seed, int max_restarts = 200) {
  if (n <= 0 || d < 0 || d >= n) throw Error("random_regular: need 0 <= d < n");
  if ((static_cast<long long>(n) * d) % 2 != 0) throw Error("random_regular: n*d must be even");
  if (d == n - 1) return complete(n);
  if (d == 0) return Graph(n);
  if (2 * d > n - 1) {
    Graph sparse = random_regular(n, n - 1 - d, seed, max_restarts);
    Graph g(n);
    for (NodeId u = 0; u < n; ++u)
      for (NodeId v = u + 1; v < n; ++v)
        if (!sparse.has_edge(u, v)) g.add_edge(u, v);
    return g;
  }
  Rng rng = Rng::stream(seed, "random-regular");
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (int attempt = 0; attempt < max_restarts; ++attempt) {
    if (!detail::try_pairing(n, d, rng, pairs)) continue;
    std::sort(pairs.begin(), pairs.end());
    Graph g(n);
    for (auto [a, b] : pairs) g.add_edge(a, b);
    return g;
  }
  throw Error("random_regular: pairing failed after " + std::to_string(max_restarts) + " restarts (n=" +
              std::to_string(n) + ", d=" + std::to_string(d) + ", seed=" + std::to_string(seed) + ")");
}

/// Replaces every node x by f copies (ids x*f .. x*f+f-1) and every edge by
/// the f x f biclique between the copy sets.
inline Graph girth_blowup(const Graph& base, int f) {
  if (f < 1) throw Error("girth_blowup: f must be positive");
  if (base.weighted()) throw Error("girth_blowup: base must be unweighted");
  Graph g(base.num_nodes() * f);
  for (const Edge& e : base.edges())
    for (int a = 0; a < f; ++a)
      for (int b = 0; b < f; ++b) g.add_edge(e.u * f + a, e.v * f + b);
  return g;
}

struct HypercubeShape {
  int f = 2;  // alphabet size
  int d = 1;  // number of coordinates

  long long num_nodes() const {
    long long n = 1;
    for (int i = 0; i < d; ++i) n *= f;
    return n;
  }
  int coordinate(NodeId x, int i) const {
    for (int j = 0; j < i; ++j) x /= f;
    return static_cast<int>(x % f);
  }
  /// Index of the single coordinate in which x and y differ, or -1.
  int differing_coordinate(NodeId x, NodeId y) const {
    int found = -1;
    for (int i = 0; i < d; ++i, x /= f, y /= f) {
      if (x % f != y % f) {
        if (found >= 0) return -1;
        found = i;
      }
    }
    return found;
  }
};

inline constexpr long long kMaxHypercubeNodes = 1'000'000;

/// Generalized hypercube [f]^d: tuples adjacent iff they differ in exactly one
/// coordinate. Node id is the mixed-radix value sum t_i f^i.
inline Graph generalized_hypercube(int f, int d) {
  if (f < 2 || d < 1) throw Error("generalized_hypercube: need f >= 2 and d >= 1");
  HypercubeShape shape{f, d};
  long long n = 1;
  for (int i = 0; i < d; ++i) {
    n *= f;
    if (n > kMaxHypercubeNodes) throw Error("generalized_hypercube: f^d exceeds 10^6");
  }
  Graph g(static_cast<int>(n));
  for (NodeId x = 0; x < n; ++x) {
    long long stride = 1;
    for (int i = 0; i < d; ++i, stride *= f) {
      int t = shape.coordinate(x, i);
      for (int c = t + 1; c < f; ++c) g.add_edge(x, static_cast<NodeId>(x + (c - t) * stride));
    }
  }
  return g;
}

inline Graph petersen() {
  Graph g(10);
  for (NodeId i = 0; i < 5; ++i) {
    g.add_edge(i, (i + 1) % 5);
    g.add_edge(i, i + 5);
    g.add_edge(i + 5, 5 + (i + 2) % 5);
  }
  return g;
}

/// Heawood graph, LCF notation [5,-5]^7: the (3,6)-cage.
inline Graph heawood() {
  Graph g(14);
  for (NodeId i = 0; i < 14; ++i) g.add_edge(i, (i + 1) % 14);
  for (NodeId i = 0; i < 14; i += 2) g.add_edge(i, (i + 5) % 14);
  return g;
}

/// Named small graphs: petersen, heawood, cycle-N, complete-N, path-N.
inline Graph named(const std::string& name) {
  auto numeric_suffix = [&](const std::string& prefix) -> int {
    std::string rest = name.substr(prefix.size());
    if (rest.empty() || rest.find_first_not_of("0123456789") != std::string::npos)
      throw Error("named graph: bad size in '" + name + "'");
    return std::stoi(rest);
  };
  if (name == "petersen") return petersen();
  if (name == "heawood") return heawood();
  if (name.rfind("cycle-", 0) == 0) return cycle(numeric_suffix("cycle-"));
  if (name.rfind("complete-", 0) == 0) return complete(numeric_suffix("complete-"));
  if (name.rfind("path-", 0) == 0) return path(numeric_suffix("path-"));
  throw Error("named graph: unknown name '" + name + "'");
}

}  // namespace fdspan::gen

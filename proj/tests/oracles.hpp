#pragma once

// Slow reference implementations used as test oracles. They share no code
// with the library beyond the Graph type.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "fdspan/graph.hpp"

namespace oracle {

using fdspan::EdgeId;
using fdspan::Graph;
using fdspan::NodeId;

// All simple u-v paths with at most k edges, as edge-id lists.
inline std::vector<std::vector<EdgeId>> enumerate_paths(const Graph& g, NodeId u, NodeId v, int k) {
  std::vector<std::vector<EdgeId>> out;
  std::vector<char> on(static_cast<std::size_t>(g.num_nodes()), 0);
  std::vector<EdgeId> stack;
  std::function<void(NodeId)> walk = [&](NodeId x) {
    if (x == v) {
      out.push_back(stack);
      return;
    }
    if (static_cast<int>(stack.size()) == k) return;
    for (EdgeId e : g.incident(x)) {
      NodeId y = g.edge(e).other(x);
      if (on[static_cast<std::size_t>(y)]) continue;
      on[static_cast<std::size_t>(y)] = 1;
      stack.push_back(e);
      walk(y);
      stack.pop_back();
      on[static_cast<std::size_t>(y)] = 0;
    }
  };
  on[static_cast<std::size_t>(u)] = 1;
  walk(u);
  return out;
}

// Reference f*: every subset of the edges lying on short paths, checked
// against the explicit path list.
inline int naive_min_max_cut(const Graph& g, NodeId u, NodeId v, int k) {
  auto paths = enumerate_paths(g, u, v, k);
  if (paths.empty()) return 0;
  std::vector<EdgeId> universe;
  for (auto& p : paths) universe.insert(universe.end(), p.begin(), p.end());
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  const int m = static_cast<int>(universe.size());
  if (m > 20) throw std::runtime_error("reference universe too large");
  int best = 1 << 30;
  for (std::uint32_t s = 0; s < (1u << m); ++s) {
    std::vector<char> cut(static_cast<std::size_t>(g.num_edges()), 0);
    std::vector<int> deg(static_cast<std::size_t>(g.num_nodes()), 0);
    for (int i = 0; i < m; ++i)
      if (s >> i & 1) {
        EdgeId e = universe[static_cast<std::size_t>(i)];
        cut[static_cast<std::size_t>(e)] = 1;
        ++deg[static_cast<std::size_t>(g.edge(e).u)];
        ++deg[static_cast<std::size_t>(g.edge(e).v)];
      }
    int value = *std::max_element(deg.begin(), deg.end());
    if (value >= best) continue;
    bool blocks = std::all_of(paths.begin(), paths.end(), [&](const std::vector<EdgeId>& p) {
      return std::any_of(p.begin(), p.end(), [&](EdgeId e) { return cut[static_cast<std::size_t>(e)] != 0; });
    });
    if (blocks) best = value;
  }
  return best;
}

}  // namespace oracle

#pragma once

// Min-Max Length-Bounded Cut: given u, v and a hop bound k, find an edge set F
// minimizing the maximum number of F-edges at any node such that no u-v path
// with at most k edges survives in G \ F.
//
//   exact:  branch and bound over the edges of short u-v paths
//   LP:     min f  s.t.  sum_{e at x} c_e <= f        for every node x
//                        sum_{e in P} c_e >= 1        for every u-v path P, |P| <= k
//                        0 <= c_e <= 1
//           solved by a cutting-plane loop whose separation oracle is a
//           shortest path in the (k+1)-layer graph
//   round:  keep e with probability min(A * c_e * k * ln n, 1)

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fdspan/graph.hpp"
#include "fdspan/lp.hpp"
#include "fdspan/paths.hpp"
#include "fdspan/rng.hpp"

namespace fdspan {

struct LbcInstance {
  const Graph* graph = nullptr;
  NodeId u = 0;
  NodeId v = 0;
  int k = 1;

  const Graph& g() const { return *graph; }
  void validate() const {
    if (!graph) throw Error("lbc: missing graph");
    if (u < 0 || v < 0 || u >= graph->num_nodes() || v >= graph->num_nodes()) throw Error("lbc: node out of range");
    if (u == v) throw Error("lbc: u and v must differ");
    if (k < 1) throw Error("lbc: hop bound must be at least 1");
  }
};

struct FractionalCut {
  std::vector<double> c;     // per edge of the instance graph, in [0,1]
  double f_lp = 0.0;         // max over nodes of the incident c-mass
  double lower_bound = 0.0;  // certified lower bound on the LP optimum (and on f*)
  bool converged = true;     // false when the solve stopped early above a threshold
  int path_constraints = 0;
  long long pivots = 0;
};

struct RoundingMeta {
  double initial_A = 0.0;
  double final_A = 0.0;
  int doublings = 0;
  int attempts = 0;
  int successes = 0;
};

struct CutSolution {
  std::vector<EdgeId> edges;  // sorted edge ids of the instance graph
  int value = 0;              // max fault degree of `edges`
  std::optional<FractionalCut> fractional;
  std::optional<RoundingMeta> rounding;
};

inline constexpr int kMaxExactUniverse = 24;

/// Edges lying on some u-v walk with at most k edges, i.e. every edge that
/// can appear on a short u-v path. Empty when dist(u,v) > k.
inline std::vector<EdgeId> lbc_relevant_edges(const Graph& g, NodeId u, NodeId v, int k,
                                              const FaultSet& excluded = {}) {
  auto du = hop_distances(g, excluded, u, k);
  auto dv = hop_distances(g, excluded, v, k);
  std::vector<EdgeId> out;
  if (du[static_cast<std::size_t>(v)] < 0) return out;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (excluded.contains(e)) continue;
    const Edge& ed = g.edge(e);
    auto fits = [&](NodeId a, NodeId b) {
      int x = du[static_cast<std::size_t>(a)], y = dv[static_cast<std::size_t>(b)];
      return x >= 0 && y >= 0 && x + 1 + y <= k;
    };
    if (fits(ed.u, ed.v) || fits(ed.v, ed.u)) out.push_back(e);
  }
  return out;
}

/// Max fault degree of an edge set.
inline int cut_degree(const Graph& g, std::span<const EdgeId> edges) {
  return FaultSet(g, edges).max_degree();
}

/// True iff removing `edges` leaves no u-v path of at most k edges.
inline bool is_length_bounded_cut(const Graph& g, std::span<const EdgeId> edges, NodeId u, NodeId v, int k) {
  return !hop_limited_reachable(g, FaultSet(g, edges), u, v, k);
}

namespace detail {

// Search state for the exact solver, run on the relevant-edge subgraph.
struct ExactSearch {
  const Graph& local;
  NodeId u, v;
  int k;
  FaultSet chosen;
  std::vector<char> forbidden;
  int best_value;
  std::vector<EdgeId> best_edges;
  long long nodes = 0;
  long long node_limit = -1;  // negative: unlimited
  bool first_hit = false;     // stop at the first cut beating the incumbent
  bool found = false;

  void run(int current_max) {
    if (found && first_hit) return;
    if (node_limit >= 0 && nodes >= node_limit)
      throw Error("lbc search exceeded " + std::to_string(node_limit) + " nodes");
    ++nodes;
    auto path = shortest_hop_path(local, chosen, u, v, k);
    if (!path) {
      if (current_max < best_value) {
        best_value = current_max;
        best_edges = chosen.sorted_ids();
        found = true;
      }
      return;
    }
    // Any valid cut hits this path. Branch i takes path[i] and forbids
    // path[0..i-1], so the branches partition the solution space.
    std::vector<EdgeId> newly_forbidden;
    for (EdgeId e : *path) {
      if (forbidden[static_cast<std::size_t>(e)]) continue;
      const Edge& ed = local.edge(e);
      int next_max = std::max({current_max, chosen.degree(ed.u) + 1, chosen.degree(ed.v) + 1});
      if (next_max < best_value) {
        chosen.insert(local, e);
        run(next_max);
        chosen.erase(local, e);
      }
      forbidden[static_cast<std::size_t>(e)] = 1;
      newly_forbidden.push_back(e);
    }
    for (EdgeId e : newly_forbidden) forbidden[static_cast<std::size_t>(e)] = 0;
  }
};

}  // namespace detail

/// Exact Min-Max LBC. The relevant edge universe must have at most
/// `max_universe` edges.
inline CutSolution lbc_bruteforce(const LbcInstance& inst, int max_universe = kMaxExactUniverse) {
  inst.validate();
  const Graph& g = inst.g();
  auto universe = lbc_relevant_edges(g, inst.u, inst.v, inst.k);
  CutSolution sol;
  if (universe.empty()) return sol;
  if (static_cast<int>(universe.size()) > max_universe)
    throw Error("lbc_bruteforce: relevant edge universe has " + std::to_string(universe.size()) +
                " edges, above the limit of " + std::to_string(max_universe));
  Graph local = edge_subgraph(g, universe);
  // Incumbent: all universe edges at whichever endpoint has fewer.
  std::vector<EdgeId> star_u, star_v;
  for (EdgeId e : local.incident(inst.u)) star_u.push_back(e);
  for (EdgeId e : local.incident(inst.v)) star_v.push_back(e);
  auto& star = star_u.size() <= star_v.size() ? star_u : star_v;
  std::sort(star.begin(), star.end());
  detail::ExactSearch search{local, inst.u, inst.v, inst.k, FaultSet(local),
                             std::vector<char>(static_cast<std::size_t>(local.num_edges()), 0),
                             static_cast<int>(star.size()), star};
  search.run(0);
  for (EdgeId e : search.best_edges) sol.edges.push_back(universe[static_cast<std::size_t>(e)]);
  std::sort(sol.edges.begin(), sol.edges.end());
  sol.value = search.best_value;
  return sol;
}

/// Decides whether some length-bounded cut has max fault degree <= budget,
/// returning one such cut (not necessarily a minimum one) or nullopt. The
/// search is bounded by `node_limit` branch nodes instead of a universe cap.
inline std::optional<CutSolution> lbc_decide(const LbcInstance& inst, int budget, long long node_limit) {
  inst.validate();
  if (budget < 0) throw Error("lbc_decide: budget must be nonnegative");
  const Graph& g = inst.g();
  auto universe = lbc_relevant_edges(g, inst.u, inst.v, inst.k);
  CutSolution sol;
  if (universe.empty()) return sol;
  Graph local = edge_subgraph(g, universe);
  const int star = std::min(local.degree(inst.u), local.degree(inst.v));
  if (star <= budget) {
    NodeId end = local.degree(inst.u) <= local.degree(inst.v) ? inst.u : inst.v;
    for (EdgeId e : local.incident(end)) sol.edges.push_back(universe[static_cast<std::size_t>(e)]);
    std::sort(sol.edges.begin(), sol.edges.end());
    sol.value = star;
    return sol;
  }
  detail::ExactSearch search{local, inst.u, inst.v, inst.k, FaultSet(local),
                             std::vector<char>(static_cast<std::size_t>(local.num_edges()), 0), budget + 1, {}};
  search.node_limit = node_limit;
  search.first_hit = true;
  search.run(0);
  if (!search.found) return std::nullopt;
  for (EdgeId e : search.best_edges) sol.edges.push_back(universe[static_cast<std::size_t>(e)]);
  std::sort(sol.edges.begin(), sol.edges.end());
  sol.value = cut_degree(g, sol.edges);
  return sol;
}

/// Separation oracle: a u-v path with at most k edges whose c-weight is below
/// 1 - 1e-9, found as a shortest u_0 -> v_k path in the layered graph with
/// zero-weight "stay" arcs. Returns the path as edge ids, or nullopt.
inline std::optional<std::vector<EdgeId>> lbc_separation_oracle(const Graph& g, std::span<const double> c, NodeId u,
                                                                NodeId v, int k, double* weight_out = nullptr) {
  const int n = g.num_nodes();
  const auto layers = static_cast<std::size_t>(k) + 1;
  std::vector<double> dist(layers * static_cast<std::size_t>(n), kInfinity);
  // pred < 0: stayed at the node from the previous layer; else the edge used.
  std::vector<EdgeId> pred(layers * static_cast<std::size_t>(n), -1);
  auto at = [n](int layer, NodeId x) { return static_cast<std::size_t>(layer) * static_cast<std::size_t>(n) + static_cast<std::size_t>(x); };
  dist[at(0, u)] = 0.0;
  for (int i = 0; i < k; ++i) {
    for (NodeId x = 0; x < n; ++x) dist[at(i + 1, x)] = dist[at(i, x)];
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const Edge& ed = g.edge(e);
      double w = std::max(0.0, c[static_cast<std::size_t>(e)]);
      if (dist[at(i, ed.u)] + w < dist[at(i + 1, ed.v)]) {
        dist[at(i + 1, ed.v)] = dist[at(i, ed.u)] + w;
        pred[at(i + 1, ed.v)] = e;
      }
      if (dist[at(i, ed.v)] + w < dist[at(i + 1, ed.u)]) {
        dist[at(i + 1, ed.u)] = dist[at(i, ed.v)] + w;
        pred[at(i + 1, ed.u)] = e;
      }
    }
  }
  const double best = dist[at(k, v)];
  if (weight_out) *weight_out = best;
  if (!(best < 1.0 - 1e-9)) return std::nullopt;
  // Walk back from v_k to u_0.
  std::vector<EdgeId> walk;
  NodeId x = v;
  for (int i = k; i > 0; --i) {
    EdgeId e = pred[at(i, x)];
    if (e < 0) continue;
    walk.push_back(e);
    x = g.edge(e).other(x);
  }
  std::reverse(walk.begin(), walk.end());
  // Shortcut repeated nodes: the result is a simple path of no larger weight.
  std::vector<NodeId> nodes{u};
  std::vector<EdgeId> edges;
  for (EdgeId e : walk) {
    NodeId next = g.edge(e).other(nodes.back());
    auto it = std::find(nodes.begin(), nodes.end(), next);
    if (it != nodes.end()) {
      auto keep = static_cast<std::size_t>(it - nodes.begin());
      nodes.resize(keep + 1);
      edges.resize(keep);
    } else {
      nodes.push_back(next);
      edges.push_back(e);
    }
  }
  return edges;
}

/// Solves the LBC linear program by cutting planes. When `stop_above` is
/// finite the solve may stop as soon as the certified lower bound exceeds it
/// (converged = false in that case).
inline FractionalCut lbc_lp_solve(const LbcInstance& inst,
                                  double stop_above = std::numeric_limits<double>::infinity()) {
  inst.validate();
  const Graph& g = inst.g();
  FractionalCut out;
  out.c.assign(static_cast<std::size_t>(g.num_edges()), 0.0);
  auto universe = lbc_relevant_edges(g, inst.u, inst.v, inst.k);
  if (universe.empty()) return out;
  Graph local = edge_subgraph(g, universe);
  const int le = local.num_edges();

  // The simplex works on the dual packing LP
  //   max sum_P z_P  s.t.  sum_x y_x <= 1,  sum_{P ni e} z_P - y_a - y_b <= 0,
  // whose row prices are exactly (f, c). Rows for edges and columns for
  // nodes are created on first use, so untouched edges keep c_e = 0.
  lp::PackingSimplex simplex;
  simplex.add_row(1.0, {});
  std::vector<int> edge_row(static_cast<std::size_t>(le), -1);
  std::vector<int> node_col(static_cast<std::size_t>(local.num_nodes()), -1);
  auto ensure_edge = [&](EdgeId e) {
    if (edge_row[static_cast<std::size_t>(e)] >= 0) return;
    const Edge& ed = local.edge(e);
    std::vector<std::pair<int, double>> entries;
    for (NodeId x : {ed.u, ed.v})
      if (node_col[static_cast<std::size_t>(x)] >= 0) entries.emplace_back(node_col[static_cast<std::size_t>(x)], -1.0);
    edge_row[static_cast<std::size_t>(e)] = simplex.add_row(0.0, entries);
    for (NodeId x : {ed.u, ed.v}) {
      if (node_col[static_cast<std::size_t>(x)] >= 0) continue;
      std::vector<std::pair<int, double>> col{{0, 1.0}};
      for (EdgeId f : local.incident(x))
        if (edge_row[static_cast<std::size_t>(f)] >= 0) col.emplace_back(edge_row[static_cast<std::size_t>(f)], -1.0);
      node_col[static_cast<std::size_t>(x)] = simplex.add_column(0.0, std::move(col));
    }
  };

  std::vector<double> c_local(static_cast<std::size_t>(le), 0.0);
  std::vector<std::vector<EdgeId>> seen_paths;
  while (true) {
    auto status = simplex.solve(stop_above);
    out.pivots = simplex.pivots();
    if (status == lp::PackingSimplex::Status::kStoppedAbove) {
      out.converged = false;
      out.lower_bound = simplex.objective();
      break;
    }
    if (status == lp::PackingSimplex::Status::kPivotLimit) throw Error("lbc_lp_solve: simplex pivot limit reached");
    Eigen::VectorXd y = simplex.duals();
    for (EdgeId e = 0; e < le; ++e) {
      int r = edge_row[static_cast<std::size_t>(e)];
      c_local[static_cast<std::size_t>(e)] = r >= 0 ? std::clamp(y(r), 0.0, 1.0) : 0.0;
    }
    out.lower_bound = simplex.objective();
    auto path = lbc_separation_oracle(local, c_local, inst.u, inst.v, inst.k);
    if (!path) break;
    std::vector<EdgeId> key = *path;
    std::sort(key.begin(), key.end());
    if (std::find(seen_paths.begin(), seen_paths.end(), key) != seen_paths.end()) {
      // The oracle returned a constraint already present: the remaining
      // violation is rounding noise of the basis, not a missing cut.
      break;
    }
    seen_paths.push_back(key);
    for (EdgeId e : *path) ensure_edge(e);
    std::vector<std::pair<int, double>> col;
    for (EdgeId e : *path) col.emplace_back(edge_row[static_cast<std::size_t>(e)], 1.0);
    simplex.add_column(1.0, std::move(col));
    ++out.path_constraints;
  }

  for (EdgeId e = 0; e < le; ++e) out.c[static_cast<std::size_t>(universe[static_cast<std::size_t>(e)])] = c_local[static_cast<std::size_t>(e)];
  std::vector<double> mass(static_cast<std::size_t>(g.num_nodes()), 0.0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    mass[static_cast<std::size_t>(g.edge(e).u)] += out.c[static_cast<std::size_t>(e)];
    mass[static_cast<std::size_t>(g.edge(e).v)] += out.c[static_cast<std::size_t>(e)];
  }
  out.f_lp = mass.empty() ? 0.0 : *std::max_element(mass.begin(), mass.end());
  if (!out.converged) out.f_lp = std::max(out.f_lp, out.lower_bound);
  return out;
}

struct RoundingOptions {
  double A = 0.25;
  int retries = 50;
  int max_doublings = 6;
  std::uint64_t seed = 0;
};

/// Randomized rounding of a fractional cut. Keeps the best valid cut over
/// `retries` attempts, doubling A whenever a whole batch fails.
inline CutSolution lbc_round(const LbcInstance& inst, const FractionalCut& frac, const RoundingOptions& opt) {
  inst.validate();
  const Graph& g = inst.g();
  if (frac.c.size() != static_cast<std::size_t>(g.num_edges())) throw Error("lbc_round: fractional vector size mismatch");
  if (!(opt.A > 0.0) || opt.retries < 1) throw Error("lbc_round: need A > 0 and retries >= 1");
  CutSolution best;
  best.fractional = frac;
  RoundingMeta meta;
  meta.initial_A = meta.final_A = opt.A;
  best.rounding = meta;
  if (!hop_limited_reachable(g, FaultSet{}, inst.u, inst.v, inst.k)) return best;

  const double scale = inst.k * std::log(static_cast<double>(std::max(2, g.num_nodes())));
  std::vector<EdgeId> support;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (frac.c[static_cast<std::size_t>(e)] > 0.0) support.push_back(e);

  double A = opt.A;
  bool found = false;
  for (int round = 0; round <= opt.max_doublings && !found; ++round) {
    if (round > 0) {
      A *= 2.0;
      ++meta.doublings;
    }
    for (int t = 0; t < opt.retries; ++t) {
      Rng rng = Rng::stream(opt.seed, "lbc-round", static_cast<std::uint64_t>(meta.attempts));
      ++meta.attempts;
      std::vector<EdgeId> picked;
      for (EdgeId e : support)
        if (rng.bernoulli(std::min(A * frac.c[static_cast<std::size_t>(e)] * scale, 1.0))) picked.push_back(e);
      if (!is_length_bounded_cut(g, picked, inst.u, inst.v, inst.k)) continue;
      ++meta.successes;
      int value = cut_degree(g, picked);
      if (!found || value < best.value || (value == best.value && picked < best.edges)) {
        best.value = value;
        best.edges = std::move(picked);
        found = true;
      }
    }
  }
  meta.final_A = A;
  best.rounding = meta;
  if (!found) {
    std::ostringstream msg;
    msg << "lbc_round: no valid cut after " << meta.attempts << " attempts (u=" << inst.u << ", v=" << inst.v
        << ", k=" << inst.k << ", A up to " << A << ", f_lp=" << frac.f_lp << ", seed=" << opt.seed << ")";
    throw Error(msg.str());
  }
  return best;
}

/// LP relaxation followed by randomized rounding; the returned value is the
/// max degree of a verified cut, so it is never below the optimum.
inline CutSolution approx_min_max_lbc(const LbcInstance& inst, const RoundingOptions& opt) {
  FractionalCut frac = lbc_lp_solve(inst);
  CutSolution sol = lbc_round(inst, frac, opt);
  if (!is_length_bounded_cut(inst.g(), sol.edges, inst.u, inst.v, inst.k))
    throw Error("approx_min_max_lbc: internal error, returned cut is not valid");
  return sol;
}

}  // namespace fdspan

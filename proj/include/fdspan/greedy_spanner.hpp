#pragma once

// Greedy fault-degree tolerant (2k-1)-spanners.
//
// Edges are scanned in order_edges order. An edge (u,v) is added when some
// fault set of max degree <= f leaves no u-v path of at most 2k-1 edges in
// the current spanner H. Every edge of H weighs at most w(u,v), so cutting all
// short paths of H is enough to break the weighted stretch bound as well.
//
// Each added edge records the fault set that justified it. Together they form
// a blocking set: every cycle of H with at most 2k edges contains an edge of
// the fault set recorded for its latest edge.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "fdspan/graph.hpp"
#include "fdspan/lbc.hpp"
#include "fdspan/paths.hpp"

namespace fdspan {

struct BlockingEntry {
  EdgeId edge = -1;
  std::vector<EdgeId> fault_edges;  // sorted g edge ids
};

using BlockingSet = std::vector<BlockingEntry>;

struct GreedyStats {
  long long lbc_calls = 0;
  long long star_keeps = 0;         // kept on the cheap star cut alone
  long long lp_discards = 0;        // discarded on a certified LP bound above f
  long long rounded_keeps = 0;      // kept after LP + rounding
  long long uncertified_keeps = 0;  // rounding exceeded the threshold, kept anyway
  int max_witness_degree = 0;
};

struct GreedyResult {
  std::vector<EdgeId> edges;  // g edge ids in addition order
  BlockingSet blocking;       // empty when storage was disabled
  GreedyStats stats;
  double threshold = 0.0;     // keep threshold on the witness degree
};

struct ExactGreedyOptions {
  long long max_search_nodes = 2'000'000;  // per decision
  bool store_blocking = true;
};

struct ApproxGreedyOptions {
  double B = 1.0;
  std::uint64_t seed = 0;
  double A = 0.25;
  int retries = 50;
  int max_doublings = 6;
  int store_blocking = -1;  // -1: store when m <= 10^4
};

namespace detail {

// The spanner under construction, as a graph on g's nodes.
struct GrowingSpanner {
  Graph h;
  std::vector<EdgeId> to_g;

  explicit GrowingSpanner(int n) : h(n) {}
  void add(const Graph& g, EdgeId e) {
    const Edge& ed = g.edge(e);
    h.add_edge(ed.u, ed.v, ed.w);
    to_g.push_back(e);
  }
  std::vector<EdgeId> map(std::span<const EdgeId> local) const {
    std::vector<EdgeId> out;
    for (EdgeId x : local) out.push_back(to_g[static_cast<std::size_t>(x)]);
    std::sort(out.begin(), out.end());
    return out;
  }
};

inline void check_params(int k, int f) {
  if (k < 1) throw Error("greedy spanner: k must be at least 1");
  if (f < 0) throw Error("greedy spanner: f must be nonnegative");
}

}  // namespace detail

/// Exact greedy: each decision searches for a length-bounded cut of max
/// degree <= f by branch and bound, within `max_search_nodes` per edge.
inline GreedyResult greedy_fd_spanner_exact(const Graph& g, int k, int f, const ExactGreedyOptions& opt = {}) {
  detail::check_params(k, f);
  const int hops = 2 * k - 1;
  detail::GrowingSpanner s(g.num_nodes());
  GreedyResult out;
  out.threshold = f;
  for (EdgeId e : order_edges(g)) {
    const Edge& ed = g.edge(e);
    ++out.stats.lbc_calls;
    std::optional<CutSolution> found;
    try {
      found = lbc_decide({&s.h, ed.u, ed.v, hops}, f, opt.max_search_nodes);
    } catch (const Error& err) {
      throw Error(std::string("greedy_fd_spanner_exact: instance too large for exact mode at edge (") +
                  std::to_string(ed.u) + "," + std::to_string(ed.v) + "): " + err.what());
    }
    if (!found) continue;
    const CutSolution& cut = *found;
    out.stats.max_witness_degree = std::max(out.stats.max_witness_degree, cut.value);
    if (opt.store_blocking) out.blocking.push_back({e, s.map(cut.edges)});
    s.add(g, e);
    out.edges.push_back(e);
  }
  return out;
}

/// Polynomial-time greedy. An edge is kept when a cut of max degree at most
/// B*f*k*ln(n) is found for it; it is discarded only when the LP relaxation
/// certifies that no cut of degree <= f exists. f = 0 is the classic greedy.
inline GreedyResult greedy_fd_spanner_approx(const Graph& g, int k, int f, const ApproxGreedyOptions& opt = {}) {
  detail::check_params(k, f);
  if (!(opt.B > 0.0)) throw Error("greedy_fd_spanner_approx: B must be positive");
  const int hops = 2 * k - 1;
  const bool store = opt.store_blocking < 0 ? g.num_edges() <= 10'000 : opt.store_blocking != 0;
  detail::GrowingSpanner s(g.num_nodes());
  GreedyResult out;
  out.threshold = opt.B * f * k * std::log(static_cast<double>(std::max(2, g.num_nodes())));

  auto keep = [&](EdgeId e, std::vector<EdgeId> witness_local) {
    out.stats.max_witness_degree = std::max(out.stats.max_witness_degree, cut_degree(s.h, witness_local));
    if (store) out.blocking.push_back({e, s.map(witness_local)});
    s.add(g, e);
    out.edges.push_back(e);
  };

  for (EdgeId e : order_edges(g)) {
    const Edge& ed = g.edge(e);
    if (f == 0) {
      if (!hop_limited_reachable(s.h, FaultSet{}, ed.u, ed.v, hops)) keep(e, {});
      continue;
    }
    auto universe = lbc_relevant_edges(s.h, ed.u, ed.v, hops);
    if (universe.empty()) {
      keep(e, {});
      continue;
    }
    // The relevant edges at u (or at v) always form a valid cut.
    std::vector<EdgeId> star_u, star_v;
    for (EdgeId x : universe) {
      const Edge& xe = s.h.edge(x);
      if (xe.u == ed.u || xe.v == ed.u) star_u.push_back(x);
      if (xe.u == ed.v || xe.v == ed.v) star_v.push_back(x);
    }
    auto& star = star_u.size() <= star_v.size() ? star_u : star_v;
    if (static_cast<double>(star.size()) <= out.threshold) {
      ++out.stats.star_keeps;
      keep(e, star);
      continue;
    }
    ++out.stats.lbc_calls;
    LbcInstance inst{&s.h, ed.u, ed.v, hops};
    FractionalCut frac = lbc_lp_solve(inst, f + 1e-6);
    if (frac.lower_bound > f + 1e-6) {
      ++out.stats.lp_discards;
      continue;
    }
    RoundingOptions ropt;
    ropt.A = opt.A;
    ropt.retries = opt.retries;
    ropt.max_doublings = opt.max_doublings;
    ropt.seed = splitmix64(opt.seed ^ splitmix64(static_cast<std::uint64_t>(e)));
    CutSolution cut = lbc_round(inst, frac, ropt);
    if (cut.value <= out.threshold)
      ++out.stats.rounded_keeps;
    else
      ++out.stats.uncertified_keeps;
    keep(e, std::move(cut.edges));
  }
  return out;
}

inline constexpr int kMaxBlockingSetEdges = 50;

struct BlockingCheck {
  bool ok = true;
  std::size_t cycles_checked = 0;
  std::string reason;
};

/// Checks both blocking-set conditions exhaustively: the per-entry degree and
/// order conditions, and that every cycle of at most 2k spanner edges meets the
/// fault set of its latest edge. `f` bounds the fault-set degree.
inline BlockingCheck check_blocking_set(const Graph& g, std::span<const EdgeId> spanner, const BlockingSet& bs, int k,
                                        int f) {
  if (static_cast<int>(spanner.size()) > kMaxBlockingSetEdges)
    throw Error("verify_blocking_set: spanner has " + std::to_string(spanner.size()) + " edges, above 50");
  BlockingCheck out;
  auto fail = [&](std::string why) {
    out.ok = false;
    out.reason = std::move(why);
    return out;
  };
  EdgeOrder order = order_edges(g);
  std::vector<int> rank(static_cast<std::size_t>(g.num_edges()));
  for (std::size_t i = 0; i < order.size(); ++i) rank[static_cast<std::size_t>(order[i])] = static_cast<int>(i);

  std::vector<int> entry_of(static_cast<std::size_t>(g.num_edges()), -1);
  for (std::size_t i = 0; i < bs.size(); ++i) {
    EdgeId e = bs[i].edge;
    if (e < 0 || e >= g.num_edges()) return fail("entry edge out of range");
    if (entry_of[static_cast<std::size_t>(e)] >= 0) return fail("edge " + std::to_string(e) + " has two entries");
    entry_of[static_cast<std::size_t>(e)] = static_cast<int>(i);
    FaultSet fs(g);
    for (EdgeId x : bs[i].fault_edges) {
      if (x < 0 || x >= g.num_edges()) return fail("fault edge out of range");
      if (rank[static_cast<std::size_t>(x)] >= rank[static_cast<std::size_t>(e)])
        return fail("fault edge " + std::to_string(x) + " does not precede " + std::to_string(e));
      fs.insert(g, x);
    }
    if (fs.max_degree() > f) return fail("fault set of edge " + std::to_string(e) + " exceeds degree bound");
  }
  std::vector<char> in_spanner(static_cast<std::size_t>(g.num_edges()), 0);
  for (EdgeId e : spanner) {
    if (entry_of[static_cast<std::size_t>(e)] < 0) return fail("spanner edge " + std::to_string(e) + " has no entry");
    in_spanner[static_cast<std::size_t>(e)] = 1;
  }
  for (const auto& entry : bs)
    if (!in_spanner[static_cast<std::size_t>(entry.edge)]) return fail("entry for non-spanner edge");

  // Simple cycles of length <= 2k, each rooted at its smallest node.
  Graph h = edge_subgraph(g, spanner);
  const int n = h.num_nodes();
  std::vector<char> on(static_cast<std::size_t>(n), 0);
  std::vector<EdgeId> stack;
  std::string problem;
  std::function<bool(NodeId, NodeId)> walk = [&](NodeId root, NodeId x) -> bool {
    for (EdgeId le : h.incident(x)) {
      NodeId y = h.edge(le).other(x);
      if (y == root && stack.size() >= 2) {
        stack.push_back(le);
        ++out.cycles_checked;
        EdgeId latest = -1;
        for (EdgeId c : stack) {
          EdgeId ge = spanner[static_cast<std::size_t>(c)];
          if (latest < 0 || rank[static_cast<std::size_t>(ge)] > rank[static_cast<std::size_t>(latest)]) latest = ge;
        }
        const auto& fe = bs[static_cast<std::size_t>(entry_of[static_cast<std::size_t>(latest)])].fault_edges;
        bool hit = std::any_of(stack.begin(), stack.end(), [&](EdgeId c) {
          return std::find(fe.begin(), fe.end(), spanner[static_cast<std::size_t>(c)]) != fe.end();
        });
        stack.pop_back();
        if (!hit) {
          problem = "cycle with latest edge " + std::to_string(latest) + " is not blocked";
          return false;
        }
        continue;
      }
      if (y <= root || on[static_cast<std::size_t>(y)] || static_cast<int>(stack.size()) + 1 >= 2 * k) continue;
      on[static_cast<std::size_t>(y)] = 1;
      stack.push_back(le);
      bool good = walk(root, y);
      stack.pop_back();
      on[static_cast<std::size_t>(y)] = 0;
      if (!good) return false;
    }
    return true;
  };
  for (NodeId r = 0; r < n; ++r) {
    on[static_cast<std::size_t>(r)] = 1;
    bool good = walk(r, r);
    on[static_cast<std::size_t>(r)] = 0;
    if (!good) return fail(problem);
  }
  return out;
}

inline bool verify_blocking_set(const Graph& g, std::span<const EdgeId> spanner, const BlockingSet& bs, int k, int f) {
  return check_blocking_set(g, spanner, bs, k, f).ok;
}

struct SizeReport {
  long long spanner_edges = 0;
  int n = 0;
  int k = 0;
  int f = 0;
  double bound_shape = 0.0;  // f^(1-1/k) n^(1+1/k), with f = 0 read as 1
  double ratio = 0.0;        // spanner_edges / bound_shape
};

inline SizeReport spanner_size_report(const Graph& g, std::span<const EdgeId> spanner, int k, int f) {
  SizeReport r;
  r.spanner_edges = static_cast<long long>(spanner.size());
  r.n = g.num_nodes();
  r.k = k;
  r.f = f;
  const double ff = std::max(1, f);
  r.bound_shape = std::pow(ff, 1.0 - 1.0 / k) * std::pow(static_cast<double>(r.n), 1.0 + 1.0 / k);
  r.ratio = r.bound_shape > 0 ? static_cast<double>(r.spanner_edges) / r.bound_shape : 0.0;
  return r;
}

}  // namespace fdspan

#pragma once

// Fault-degree connectivity certificates through expanders: peel low-degree
// nodes, split the rest into certified expanders, replace each dense expander
// by the routing image of a sparse regular virtual expander, recurse on the
// cut edges.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <queue>
#include <string>
#include <vector>

#include "fdspan/conductance.hpp"
#include "fdspan/fault.hpp"
#include "fdspan/generators.hpp"
#include "fdspan/graph.hpp"
#include "fdspan/paths.hpp"
#include "fdspan/rng.hpp"

namespace fdspan {

struct PeelResult {
  std::vector<EdgeId> core_edges;     // g ids
  std::vector<EdgeId> removed_edges;  // g ids, in removal order
  std::vector<NodeId> core_nodes;     // nodes of nonzero core degree
};

/// Repeatedly deletes a node of current degree < fprime.
inline PeelResult min_degree_peel(const Graph& g, int fprime) {
  if (fprime < 1) throw Error("min_degree_peel: fprime must be positive");
  const int n = g.num_nodes();
  std::vector<int> deg(static_cast<std::size_t>(n));
  std::vector<char> gone(static_cast<std::size_t>(n), 0), edge_gone(static_cast<std::size_t>(g.num_edges()), 0);
  std::vector<NodeId> queue;
  for (NodeId x = 0; x < n; ++x) {
    deg[static_cast<std::size_t>(x)] = g.degree(x);
    if (deg[static_cast<std::size_t>(x)] < fprime) {
      gone[static_cast<std::size_t>(x)] = 1;
      queue.push_back(x);
    }
  }
  PeelResult out;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    NodeId x = queue[head];
    for (EdgeId e : g.incident(x)) {
      if (edge_gone[static_cast<std::size_t>(e)]) continue;
      edge_gone[static_cast<std::size_t>(e)] = 1;
      out.removed_edges.push_back(e);
      NodeId y = g.edge(e).other(x);
      if (--deg[static_cast<std::size_t>(y)] < fprime && !gone[static_cast<std::size_t>(y)]) {
        gone[static_cast<std::size_t>(y)] = 1;
        queue.push_back(y);
      }
    }
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (!edge_gone[static_cast<std::size_t>(e)]) out.core_edges.push_back(e);
  for (NodeId x = 0; x < n; ++x)
    if (!gone[static_cast<std::size_t>(x)]) out.core_nodes.push_back(x);
  return out;
}

enum class CertMethod { Trivial, Exact, Spectral };

inline const char* to_string(CertMethod m) {
  switch (m) {
    case CertMethod::Trivial: return "trivial";
    case CertMethod::Exact: return "exact";
    case CertMethod::Spectral: return "spectral";
  }
  return "?";
}

struct Cluster {
  std::vector<NodeId> nodes;   // sorted g ids; view node i is nodes[i]
  Graph view{0};               // induced subgraph, ext_degree = volume lost to the boundary
  std::vector<EdgeId> edges;   // view edge i is g edge edges[i]
  double certified = 1.0;      // certified lower bound on the view's conductance
  CertMethod method = CertMethod::Trivial;
};

struct Decomposition {
  double phi_target = 0;
  std::vector<Cluster> clusters;
  std::vector<EdgeId> cut_edges;  // sorted g ids
  int forced_splits = 0;          // sweep splits taken without a certified violation
};

namespace detail {

// Induced subgraph on `nodes` keeping each node's volume in `g`.
inline Cluster induced_cluster(const Graph& g, std::vector<NodeId> nodes, std::vector<int>& local) {
  std::sort(nodes.begin(), nodes.end());
  Cluster c;
  c.view = Graph(static_cast<int>(nodes.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i) local[static_cast<std::size_t>(nodes[i])] = static_cast<int>(i);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    NodeId x = nodes[i];
    for (EdgeId e : g.incident(x)) {
      NodeId y = g.edge(e).other(x);
      int ly = local[static_cast<std::size_t>(y)];
      if (ly > static_cast<int>(i)) {
        c.view.add_edge(static_cast<NodeId>(i), ly);
        c.edges.push_back(e);
      }
    }
  }
  for (std::size_t i = 0; i < nodes.size(); ++i)
    c.view.set_ext_degree(static_cast<NodeId>(i), g.volume(nodes[i]) - c.view.degree(static_cast<NodeId>(i)));
  for (NodeId x : nodes) local[static_cast<std::size_t>(x)] = -1;
  c.nodes = std::move(nodes);
  return c;
}

}  // namespace detail

/// Recursive bipartitioning into certified phi-expanders. Pieces with at most
/// 24 nodes use the exact minimum-conductance cut; larger ones use the
/// spectral bound for certification and the Fiedler sweep for splitting. A
/// large piece whose sweep cut is not below phi but whose spectral bound is
/// also below phi is split along the sweep anyway (counted in forced_splits).
inline Decomposition expander_decompose(const Graph& g, double phi, std::uint64_t /*seed*/ = 0) {
  if (!(phi > 0.0 && phi < 1.0)) throw Error("expander_decompose: phi must be in (0, 1)");
  Decomposition out;
  out.phi_target = phi;
  std::vector<int> local(static_cast<std::size_t>(g.num_nodes()), -1);
  std::vector<std::vector<NodeId>> stack;
  {
    std::vector<NodeId> all(static_cast<std::size_t>(g.num_nodes()));
    for (NodeId x = 0; x < g.num_nodes(); ++x) all[static_cast<std::size_t>(x)] = x;
    if (!all.empty()) stack.push_back(std::move(all));
  }
  auto split = [&](const Cluster& c, const std::vector<NodeId>& side_local) {
    std::vector<char> in(c.nodes.size(), 0);
    for (NodeId x : side_local) in[static_cast<std::size_t>(x)] = 1;
    std::vector<NodeId> a, b;
    for (std::size_t i = 0; i < c.nodes.size(); ++i) (in[i] ? a : b).push_back(c.nodes[i]);
    stack.push_back(std::move(b));
    stack.push_back(std::move(a));
  };
  while (!stack.empty()) {
    std::vector<NodeId> piece = std::move(stack.back());
    stack.pop_back();
    Cluster c = detail::induced_cluster(g, std::move(piece), local);
    const int n = c.view.num_nodes();
    if (n < 2) {
      out.clusters.push_back(std::move(c));
      continue;
    }
    auto comps = components(c.view, FaultSet{});
    if (comps.size() > 1) {
      split(c, comps.front());
      continue;
    }
    if (n <= kMaxBruteforceConductanceNodes) {
      ConductanceCut cut = min_conductance_cut_exact(c.view);
      if (cut.value >= phi) {
        c.certified = cut.value;
        c.method = CertMethod::Exact;
        out.clusters.push_back(std::move(c));
      } else {
        split(c, cut.side);
      }
      continue;
    }
    SpectralInfo spec = normalized_laplacian_spectrum(c.view);
    if (spec.lambda2 / 2.0 >= phi) {
      c.certified = spec.lambda2 / 2.0;
      c.method = CertMethod::Spectral;
      out.clusters.push_back(std::move(c));
      continue;
    }
    ConductanceCut cut = sweep_cut(c.view, spec.fiedler);
    if (cut.value >= phi) ++out.forced_splits;
    split(c, cut.side);
  }
  std::vector<int> label(static_cast<std::size_t>(g.num_nodes()), -1);
  for (std::size_t i = 0; i < out.clusters.size(); ++i)
    for (NodeId x : out.clusters[i].nodes) label[static_cast<std::size_t>(x)] = static_cast<int>(i);
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (label[static_cast<std::size_t>(g.edge(e).u)] != label[static_cast<std::size_t>(g.edge(e).v)])
      out.cut_edges.push_back(e);
  std::sort(out.clusters.begin(), out.clusters.end(),
            [](const Cluster& a, const Cluster& b) { return a.nodes.front() < b.nodes.front(); });
  return out;
}

struct RoutingResult {
  std::vector<std::vector<EdgeId>> paths;  // per virtual edge, host edge ids
  int congestion = 0;
  int dilation = 0;
  int hop_cap = 0;
  bool uncapped = false;  // some demand exceeded hop_cap
  int virtual_degree = 0;
  int min_degree = 0;     // of the union of paths, over the host's nodes
};

struct SparsifyResult {
  std::vector<EdgeId> edges;  // sorted host edge ids
  RoutingResult routing;
};

inline int routing_hop_cap(int n, double phi) {
  return static_cast<int>(std::ceil(4.0 * std::log(std::max(2, n)) / phi));
}

/// Routes a random regular virtual graph of degree `fprime2` (rounded to the
/// nearest feasible degree at or above it, capped at n-1) through `host` by
/// sequential shortest paths under edge cost 1 + load. A path longer than the
/// hop cap is replaced by a fewest-hop path; if that too exceeds the cap, the
/// result is flagged uncapped.
inline SparsifyResult sparsify_expander(const Graph& host, int fprime2, double phi, std::uint64_t seed) {
  const int n = host.num_nodes();
  if (fprime2 < 1) throw Error("sparsify_expander: fprime2 must be positive");
  if (!(phi > 0.0 && phi <= 1.0)) throw Error("sparsify_expander: phi must be in (0, 1]");
  SparsifyResult out;
  RoutingResult& r = out.routing;
  r.hop_cap = routing_hop_cap(n, phi);
  if (n < 2) return out;
  if (!is_connected(host)) throw Error("sparsify_expander: host graph is disconnected");
  int d = std::min(fprime2, n - 1);
  if ((static_cast<long long>(n) * d) % 2 != 0) ++d;  // d < n-1 here since n(n-1) is even
  r.virtual_degree = d;
  Graph virt = gen::random_regular(n, d, Rng::stream(seed, "virtual").next());

  std::vector<int> load(static_cast<std::size_t>(host.num_edges()), 0);
  std::vector<double> dist(static_cast<std::size_t>(n));
  std::vector<int> hops(static_cast<std::size_t>(n));
  std::vector<EdgeId> via(static_cast<std::size_t>(n));
  using Item = std::pair<double, NodeId>;
  for (const Edge& ve : virt.edges()) {
    std::fill(dist.begin(), dist.end(), kInfinity);
    std::fill(via.begin(), via.end(), -1);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[static_cast<std::size_t>(ve.u)] = 0;
    hops[static_cast<std::size_t>(ve.u)] = 0;
    pq.emplace(0.0, ve.u);
    while (!pq.empty()) {
      auto [dx, x] = pq.top();
      pq.pop();
      if (dx > dist[static_cast<std::size_t>(x)]) continue;
      if (x == ve.v) break;
      for (EdgeId e : host.incident(x)) {
        NodeId y = host.edge(e).other(x);
        double nd = dx + 1.0 + load[static_cast<std::size_t>(e)];
        if (nd < dist[static_cast<std::size_t>(y)]) {
          dist[static_cast<std::size_t>(y)] = nd;
          hops[static_cast<std::size_t>(y)] = hops[static_cast<std::size_t>(x)] + 1;
          via[static_cast<std::size_t>(y)] = e;
          pq.emplace(nd, y);
        }
      }
    }
    std::vector<EdgeId> path;
    if (hops[static_cast<std::size_t>(ve.v)] > r.hop_cap) {
      path = *shortest_hop_path(host, FaultSet{}, ve.u, ve.v, n);
      if (static_cast<int>(path.size()) > r.hop_cap) r.uncapped = true;
    } else {
      for (NodeId x = ve.v; x != ve.u;) {
        EdgeId e = via[static_cast<std::size_t>(x)];
        path.push_back(e);
        x = host.edge(e).other(x);
      }
      std::reverse(path.begin(), path.end());
    }
    for (EdgeId e : path) r.congestion = std::max(r.congestion, ++load[static_cast<std::size_t>(e)]);
    r.dilation = std::max(r.dilation, static_cast<int>(path.size()));
    r.paths.push_back(std::move(path));
  }
  std::vector<int> deg(static_cast<std::size_t>(n), 0);
  for (EdgeId e = 0; e < host.num_edges(); ++e)
    if (load[static_cast<std::size_t>(e)] > 0) {
      out.edges.push_back(e);
      ++deg[static_cast<std::size_t>(host.edge(e).u)];
      ++deg[static_cast<std::size_t>(host.edge(e).v)];
    }
  r.min_degree = *std::min_element(deg.begin(), deg.end());
  return out;
}

struct CertificateOptions {
  double phi = 0.1;
  double c_deg = 8.0;
  bool asymptotic_constants = false;  // phi = 1/ln^2 n, f' = ceil(f / phi^5)
  std::uint64_t seed = 0;
};

struct ClusterReport {
  int nodes = 0;
  int edges = 0;
  bool sparsified = false;
  double certified = 0;
  std::string method;
  int congestion = 0;
  int dilation = 0;
  int min_degree = 0;
  bool uncapped = false;
  int kept_edges = 0;
};

struct IterationReport {
  int edges_in = 0;
  int peeled = 0;
  int clusters = 0;
  int cut_edges = 0;
  int forced_splits = 0;
  std::vector<ClusterReport> sparsified;  // only clusters that were routed
  int kept_whole = 0;
};

struct CertificateResult {
  std::vector<EdgeId> edges;  // sorted g ids
  double phi = 0;
  long long fprime = 0;
  long long fprime2 = 0;
  int max_iterations = 0;
  std::vector<IterationReport> iterations;
  int leftover_added = 0;  // remaining cut edges added after the final iteration
  bool stopped_early = false;
};

/// Connectivity certificate for fault sets of fault-degree <= f.
inline CertificateResult fd_certificate(const Graph& g, int f, const CertificateOptions& opt = {}) {
  if (f < 1) throw Error("fd_certificate: f must be at least 1");
  const int n = g.num_nodes();
  CertificateResult out;
  const double ln_n = std::log(std::max(3, n));
  if (opt.asymptotic_constants) {
    out.phi = 1.0 / (ln_n * ln_n);
    out.fprime = static_cast<long long>(std::ceil(f / std::pow(out.phi, 5)));
  } else {
    if (!(opt.phi > 0.0 && opt.phi < 1.0)) throw Error("fd_certificate: phi must be in (0, 1)");
    if (!(opt.c_deg > 0.0)) throw Error("fd_certificate: c_deg must be positive");
    out.phi = opt.phi;
    out.fprime = static_cast<long long>(std::ceil(opt.c_deg * f / opt.phi));
  }
  out.fprime2 = std::max<long long>(1, static_cast<long long>(std::floor(static_cast<double>(out.fprime) * out.phi)));
  out.max_iterations = static_cast<int>(std::ceil(2.0 * std::log2(std::max(2, n))));

  std::vector<char> in_h(static_cast<std::size_t>(g.num_edges()), 0);
  std::vector<EdgeId> current(static_cast<std::size_t>(g.num_edges()));
  for (EdgeId e = 0; e < g.num_edges(); ++e) current[static_cast<std::size_t>(e)] = e;
  const double stop_at = static_cast<double>(out.fprime) * n;
  for (int it = 0; it < out.max_iterations && !current.empty(); ++it) {
    if (static_cast<double>(current.size()) <= stop_at) {
      for (EdgeId e : current) in_h[static_cast<std::size_t>(e)] = 1;
      current.clear();
      out.stopped_early = true;
      break;
    }
    IterationReport rep;
    rep.edges_in = static_cast<int>(current.size());
    Graph gi = edge_subgraph(g, current);  // gi edge j is g edge current[j]
    PeelResult peel = min_degree_peel(gi, static_cast<int>(std::min<long long>(out.fprime, 1 << 30)));
    rep.peeled = static_cast<int>(peel.removed_edges.size());
    for (EdgeId e : peel.removed_edges) in_h[static_cast<std::size_t>(current[static_cast<std::size_t>(e)])] = 1;
    // Core graph on the core nodes only.
    std::vector<int> core_local(static_cast<std::size_t>(n), -1);
    for (std::size_t i = 0; i < peel.core_nodes.size(); ++i)
      core_local[static_cast<std::size_t>(peel.core_nodes[i])] = static_cast<int>(i);
    Graph core(static_cast<int>(peel.core_nodes.size()));
    std::vector<EdgeId> core_to_g;
    for (EdgeId e : peel.core_edges) {
      const Edge& ed = gi.edge(e);
      core.add_edge(core_local[static_cast<std::size_t>(ed.u)], core_local[static_cast<std::size_t>(ed.v)]);
      core_to_g.push_back(current[static_cast<std::size_t>(e)]);
    }
    Decomposition dec = expander_decompose(core, out.phi);
    rep.clusters = static_cast<int>(dec.clusters.size());
    rep.cut_edges = static_cast<int>(dec.cut_edges.size());
    rep.forced_splits = dec.forced_splits;
    for (std::size_t j = 0; j < dec.clusters.size(); ++j) {
      const Cluster& c = dec.clusters[j];
      const long long m_c = c.view.num_edges();
      if (static_cast<double>(m_c) <= 2.0 * static_cast<double>(out.fprime) * static_cast<double>(c.nodes.size())) {
        for (EdgeId e : c.edges) in_h[static_cast<std::size_t>(core_to_g[static_cast<std::size_t>(e)])] = 1;
        ++rep.kept_whole;
        continue;
      }
      Graph plain(c.view.num_nodes());  // routing ignores ext_degree
      for (const Edge& ed : c.view.edges()) plain.add_edge(ed.u, ed.v);
      std::uint64_t s = Rng::stream(opt.seed, "sparsify", static_cast<std::uint64_t>(it) * 1'000'003u + j).next();
      SparsifyResult sp = sparsify_expander(plain, static_cast<int>(out.fprime2), out.phi, s);
      for (EdgeId e : sp.edges) {
        EdgeId core_e = c.edges[static_cast<std::size_t>(e)];
        in_h[static_cast<std::size_t>(core_to_g[static_cast<std::size_t>(core_e)])] = 1;
      }
      ClusterReport cr;
      cr.nodes = c.view.num_nodes();
      cr.edges = c.view.num_edges();
      cr.sparsified = true;
      cr.certified = c.certified;
      cr.method = to_string(c.method);
      cr.congestion = sp.routing.congestion;
      cr.dilation = sp.routing.dilation;
      cr.min_degree = sp.routing.min_degree;
      cr.uncapped = sp.routing.uncapped;
      cr.kept_edges = static_cast<int>(sp.edges.size());
      rep.sparsified.push_back(cr);
    }
    std::vector<EdgeId> next;
    next.reserve(dec.cut_edges.size());
    for (EdgeId e : dec.cut_edges) next.push_back(core_to_g[static_cast<std::size_t>(e)]);
    std::sort(next.begin(), next.end());
    current = std::move(next);
    out.iterations.push_back(std::move(rep));
  }
  out.leftover_added = static_cast<int>(current.size());
  for (EdgeId e : current) in_h[static_cast<std::size_t>(e)] = 1;
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    if (in_h[static_cast<std::size_t>(e)]) out.edges.push_back(e);
  return out;
}

struct RobustnessReport {
  double phi = 0;            // certified conductance of g
  int trials = 0;
  double min_conductance = 1.0;
  int failures = 0;          // trials with conductance(g \ F) < phi / 2
};

/// Samples f-valid fault sets and measures the exact conductance of g \ F.
/// Requires n <= 24, conductance(g) >= phi and min degree >= 2f / phi.
inline RobustnessReport check_expander_robustness(const Graph& g, double phi, int f, int trials, std::uint64_t seed) {
  if (g.num_nodes() > kMaxBruteforceConductanceNodes)
    throw Error("check_expander_robustness: exact mode needs n <= 24");
  if (f < 0 || trials < 0) throw Error("check_expander_robustness: f and trials must be non-negative");
  const double phi_g = conductance_bruteforce(g);
  if (phi_g < phi) throw Error("check_expander_robustness: conductance " + std::to_string(phi_g) + " below phi");
  if (static_cast<double>(g.min_degree()) < 2.0 * f / phi)
    throw Error("check_expander_robustness: min degree below 2f/phi");
  RobustnessReport rep;
  rep.phi = phi;
  rep.trials = trials;
  Rng rng = Rng::stream(seed, "robustness");
  for (int t = 0; t < trials; ++t) {
    const double density = 0.3 + 0.7 * rng.uniform01();
    FaultSet faults = sample_fault_set(g, f, density, rng.next());
    std::vector<EdgeId> ids = faults.sorted_ids();
    double c = conductance_bruteforce(remove_edges(g, ids));
    rep.min_conductance = std::min(rep.min_conductance, c);
    if (c < phi / 2.0) ++rep.failures;
  }
  return rep;
}

}  // namespace fdspan

#pragma once

// JSON views of results, for the CLI and for anyone logging runs.

#include <cmath>
#include <string>

#include "json.hpp"

#include "fdspan/cluster_spanner.hpp"
#include "fdspan/expander_cert.hpp"
#include "fdspan/fault.hpp"
#include "fdspan/greedy_spanner.hpp"
#include "fdspan/lbc.hpp"

namespace fdspan::report {

using json = nlohmann::ordered_json;

// JSON has no infinity; disconnected ratios become the string "inf".
inline json number(double x) {
  if (std::isinf(x)) return "inf";
  return x;
}

inline json edge_pair(const Graph& g, EdgeId e) { return json::array({g.edge(e).u, g.edge(e).v}); }

inline json edge_pairs(const Graph& g, std::span<const EdgeId> ids) {
  json out = json::array();
  for (EdgeId e : ids) out.push_back(edge_pair(g, e));
  return out;
}

inline json to_json(const GreedyStats& s) {
  return {{"lbc_calls", s.lbc_calls},         {"star_keeps", s.star_keeps},
          {"lp_discards", s.lp_discards},     {"rounded_keeps", s.rounded_keeps},
          {"uncertified_keeps", s.uncertified_keeps}, {"max_witness_degree", s.max_witness_degree}};
}

/// [{edge: [u,v], fault_edges: [[u,v], ...]}] in addition order.
inline json to_json(const Graph& g, const BlockingSet& bs) {
  json out = json::array();
  for (const BlockingEntry& b : bs) out.push_back({{"edge", edge_pair(g, b.edge)}, {"fault_edges", edge_pairs(g, b.fault_edges)}});
  return out;
}

inline json to_json(const ThreeSpannerResult& r) {
  return {{"centers", r.centers.size()},       {"degree_threshold", r.degree_threshold},
          {"size_cap", r.size_cap},            {"attempts", r.attempts},
          {"center_seed", r.center_seed}};
}

inline json to_json(const CertificateResult& r) {
  json iters = json::array();
  for (const IterationReport& it : r.iterations) {
    json clusters = json::array();
    for (const ClusterReport& c : it.sparsified)
      clusters.push_back({{"nodes", c.nodes},
                          {"edges", c.edges},
                          {"certified_conductance", c.certified},
                          {"method", c.method},
                          {"congestion", c.congestion},
                          {"dilation", c.dilation},
                          {"min_degree", c.min_degree},
                          {"uncapped", c.uncapped},
                          {"kept_edges", c.kept_edges}});
    iters.push_back({{"edges_in", it.edges_in},
                     {"peeled", it.peeled},
                     {"clusters", it.clusters},
                     {"kept_whole", it.kept_whole},
                     {"cut_edges", it.cut_edges},
                     {"forced_splits", it.forced_splits},
                     {"sparsified", clusters}});
  }
  return {{"phi", r.phi},
          {"fprime", r.fprime},
          {"fprime2", r.fprime2},
          {"max_iterations", r.max_iterations},
          {"stopped_early", r.stopped_early},
          {"leftover_added", r.leftover_added},
          {"iterations", iters}};
}

inline json to_json(const Graph& g, const CutSolution& s) {
  json out{{"value", s.value}, {"edges", edge_pairs(g, s.edges)}};
  out["f_lp"] = s.fractional ? json(s.fractional->f_lp) : json(nullptr);
  json meta = json::object();
  if (s.fractional) {
    meta["lower_bound"] = s.fractional->lower_bound;
    meta["converged"] = s.fractional->converged;
    meta["path_constraints"] = s.fractional->path_constraints;
    meta["pivots"] = s.fractional->pivots;
  }
  if (s.rounding) {
    meta["initial_A"] = s.rounding->initial_A;
    meta["final_A"] = s.rounding->final_A;
    meta["doublings"] = s.rounding->doublings;
    meta["attempts"] = s.rounding->attempts;
    meta["successes"] = s.rounding->successes;
  }
  out["meta"] = meta;
  return out;
}

struct BuildReport {
  std::string algorithm;
  json params = json::object();
  std::uint64_t seed = 0;
  int n = 0;
  int m = 0;
  long long output_size = 0;
  json stats = json::object();
  json checks = json::object();  // measured stretch or connectivity on sampled faults
  double runtime_ms = -1;        // negative: omitted

  json to_json() const {
    json out{{"algorithm", algorithm}, {"params", params}, {"seed", seed},
             {"graph", {{"n", n}, {"m", m}}}, {"output_size", output_size},
             {"stats", stats}, {"checks", checks}};
    if (runtime_ms >= 0) out["runtime_ms"] = runtime_ms;
    return out;
  }
};

}  // namespace fdspan::report

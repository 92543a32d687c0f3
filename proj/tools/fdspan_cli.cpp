// fdspan: generate graphs, build fault-tolerant subgraphs, verify them, solve
// length-bounded cut instances and run benchmark suites.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "fdspan/fdspan.hpp"

using namespace fdspan;
using report::json;

namespace {

constexpr int kExitViolations = 1;
constexpr int kExitError = 2;

// Flat "key = value" file; '#' starts a comment.
class Config {
 public:
  void load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open config file " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
      auto eq = line.find('=');
      auto trim = [](std::string s) {
        s.erase(0, s.find_first_not_of(" \t\r"));
        s.erase(s.find_last_not_of(" \t\r") + 1);
        return s;
      };
      if (trim(line).empty()) continue;
      if (eq == std::string::npos) throw Error(path + ":" + std::to_string(lineno) + ": expected key = value");
      std::string key = trim(line.substr(0, eq));
      std::replace(key.begin(), key.end(), '-', '_');
      values_[key] = trim(line.substr(eq + 1));
    }
  }
  template <typename T>
  T get(const std::string& key, T fallback) const {
    auto it = values_.find(key);
    if (it == values_.end()) return fallback;
    std::istringstream in(it->second);
    T out{};
    if constexpr (std::is_same_v<T, bool>) {
      std::string s = it->second;
      if (s == "true" || s == "1") return true;
      if (s == "false" || s == "0") return false;
      throw Error("config: '" + key + "' must be true or false");
    } else {
      if (!(in >> out) || !(in >> std::ws).eof()) throw Error("config: bad value for '" + key + "'");
    }
    return out;
  }
  std::vector<std::string> keys() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : values_) out.push_back(k);
    return out;
  }

 private:
  std::map<std::string, std::string> values_;
};

const std::set<std::string> kConfigKeys = {"seed",    "phi",     "A",       "B",       "c_sample", "c_deg",
                                           "retries", "samples", "density", "t",       "f",        "k",
                                           "max_universe", "max_search_nodes", "check_samples",
                                           "max_doublings"};

std::string find_config_path(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--config" && i + 1 < argc) return argv[i + 1];
    if (a.rfind("--config=", 0) == 0) return a.substr(9);
  }
  return {};
}

std::uint64_t default_seed(const Config& cfg) {
  std::uint64_t seed = 0;
  if (const char* env = std::getenv("FDSPAN_SEED")) {
    char* end = nullptr;
    seed = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0') throw Error("FDSPAN_SEED must be a non-negative integer");
  }
  return cfg.get<std::uint64_t>("seed", seed);
}

void write_json(const json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << j.dump(2) << '\n';
}

std::vector<EdgeId> read_subgraph(const Graph& g, const std::string& path) {
  Graph sub = io::read_edge_list_file(path);
  if (sub.num_nodes() != g.num_nodes()) throw Error("subgraph " + path + " has a different node count");
  std::vector<EdgeId> ids;
  for (const Edge& e : sub.edges()) {
    auto id = g.find_edge(e.u, e.v);
    if (!id) throw Error("subgraph " + path + ": edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") is not in the graph");
    ids.push_back(*id);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

Graph load_base(const std::string& base) {
  if (std::filesystem::exists(base)) return io::read_edge_list_file(base);
  return gen::named(base);
}

// ---------------------------------------------------------------- gen

struct GenArgs {
  std::string family, out, base = "petersen", name;
  int n = 100, d = 3, f = 2;
  double p = 0.3;
};

int run_gen(const GenArgs& a, std::uint64_t seed) {
  Graph g(0);
  json params;
  if (a.family == "gnp") {
    g = gen::gnp(a.n, a.p, seed);
    params = {{"n", a.n}, {"p", a.p}};
  } else if (a.family == "regular") {
    g = gen::random_regular(a.n, a.d, seed);
    params = {{"n", a.n}, {"d", a.d}};
  } else if (a.family == "blowup") {
    g = gen::girth_blowup(load_base(a.base), a.f);
    params = {{"base", a.base}, {"f", a.f}};
  } else if (a.family == "hypercube") {
    g = gen::generalized_hypercube(a.f, a.d);
    params = {{"f", a.f}, {"d", a.d}};
  } else if (a.family == "named") {
    if (a.name.empty()) throw Error("gen named: --name is required");
    g = gen::named(a.name);
    params = {{"name", a.name}};
  } else {
    throw Error("gen: unknown family '" + a.family + "' (gnp, regular, blowup, hypercube, named)");
  }
  io::write_edge_list_file(a.out, g);
  write_json({{"family", a.family}, {"params", params}, {"seed", seed}, {"n", g.num_nodes()}, {"m", g.num_edges()}},
             a.out + ".json");
  return 0;
}

// ---------------------------------------------------------------- build

struct BuildArgs {
  std::string algo, graph, out, report, blocking;
  int k = 2, f = 1, retries = 50, max_doublings = 6, check_samples = 20;
  long long max_search_nodes = 2'000'000;
  double B = 1.0, A = 0.25, c_sample = 2.0, phi = 0.1, c_deg = 8.0, density = 0.5;
  bool asymptotic_constants = false, no_timing = false;
};

json sampled_check(const Graph& g, std::span<const EdgeId> h, double t, bool connectivity, int f, int samples,
                   double density, std::uint64_t seed) {
  std::vector<FaultSet> faults;
  for (int i = 0; i < samples; ++i)
    faults.push_back(sample_fault_set(g, f, density, Rng::stream(seed, "check", static_cast<std::uint64_t>(i)).next()));
  if (connectivity) {
    auto r = verify_certificate(g, h, faults);
    return {{"kind", "connectivity"}, {"fault_sets", samples}, {"violations", r.violations.size()}};
  }
  auto r = verify_spanner(g, h, t, faults);
  return {{"kind", "stretch"},
          {"t", t},
          {"fault_sets", samples},
          {"violations", r.violations.size()},
          {"worst_ratio", report::number(r.worst_ratio)}};
}

int run_build(const BuildArgs& a, std::uint64_t seed) {
  Graph g = io::read_edge_list_file(a.graph);
  report::BuildReport rep;
  rep.algorithm = a.algo;
  rep.seed = seed;
  rep.n = g.num_nodes();
  rep.m = g.num_edges();
  std::vector<EdgeId> edges;
  BlockingSet blocking;
  double t = 0;
  bool connectivity = false;
  auto start = std::chrono::steady_clock::now();
  if (a.algo == "greedy-exact") {
    ExactGreedyOptions opt;
    opt.max_search_nodes = a.max_search_nodes;
    opt.store_blocking = !a.blocking.empty();
    auto r = greedy_fd_spanner_exact(g, a.k, a.f, opt);
    edges = r.edges;
    blocking = std::move(r.blocking);
    rep.params = {{"k", a.k}, {"f", a.f}, {"max_search_nodes", a.max_search_nodes}};
    rep.stats = report::to_json(r.stats);
    t = 2.0 * a.k - 1;
  } else if (a.algo == "greedy-approx") {
    ApproxGreedyOptions opt;
    opt.B = a.B;
    opt.A = a.A;
    opt.retries = a.retries;
    opt.max_doublings = a.max_doublings;
    opt.seed = seed;
    opt.store_blocking = a.blocking.empty() ? 0 : 1;
    auto r = greedy_fd_spanner_approx(g, a.k, a.f, opt);
    edges = r.edges;
    blocking = std::move(r.blocking);
    rep.params = {{"k", a.k}, {"f", a.f}, {"B", a.B}, {"A", a.A}, {"retries", a.retries}, {"max_doublings", a.max_doublings}};
    rep.stats = report::to_json(r.stats);
    rep.stats["threshold"] = r.threshold;
    t = 2.0 * a.k - 1;
  } else if (a.algo == "cluster3") {
    auto r = fd_three_spanner(g, a.f, a.c_sample, seed);
    edges = r.edges;
    rep.params = {{"f", a.f}, {"c_sample", a.c_sample}};
    rep.stats = report::to_json(r);
    t = 3.0;
  } else if (a.algo == "certificate") {
    CertificateOptions opt;
    opt.phi = a.phi;
    opt.c_deg = a.c_deg;
    opt.asymptotic_constants = a.asymptotic_constants;
    opt.seed = seed;
    auto r = fd_certificate(g, a.f, opt);
    edges = r.edges;
    rep.params = {{"f", a.f}, {"phi", a.phi}, {"c_deg", a.c_deg}, {"asymptotic_constants", a.asymptotic_constants}};
    rep.stats = report::to_json(r);
    connectivity = true;
  } else {
    throw Error("build: unknown algorithm '" + a.algo + "' (greedy-exact, greedy-approx, cluster3, certificate)");
  }
  auto stop = std::chrono::steady_clock::now();
  if (!a.no_timing) rep.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  rep.output_size = static_cast<long long>(edges.size());
  std::sort(edges.begin(), edges.end());
  if (a.check_samples > 0)
    rep.checks = sampled_check(g, edges, t, connectivity, a.f, a.check_samples, a.density, seed);
  {
    std::ofstream out(a.out);
    if (!out) throw Error("cannot write " + a.out);
    io::write_edge_list(out, g, edges);
  }
  write_json(rep.to_json(), a.report.empty() ? a.out + ".report.json" : a.report);
  if (!a.blocking.empty()) write_json(report::to_json(g, blocking), a.blocking);
  return 0;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
  std::string graph, sub, mode = "sampled", family, base = "petersen", out;
  std::vector<std::string> fault_files;
  double t = 3.0, density = 0.5;
  int f = 1, samples = 100, shape_f = 2, shape_d = 1;
  bool connectivity = false;
};

int run_verify(const VerifyArgs& a, std::uint64_t seed) {
  Graph g = io::read_edge_list_file(a.graph);
  std::vector<EdgeId> h = read_subgraph(g, a.sub);
  std::vector<char> in_h(static_cast<std::size_t>(g.num_edges()), 0);
  for (EdgeId e : h) in_h[static_cast<std::size_t>(e)] = 1;
  const double t = a.connectivity ? std::numeric_limits<double>::max() : a.t;
  json rep{{"instance", a.graph}, {"sub", a.sub}, {"t", a.connectivity ? json(nullptr) : json(a.t)},
           {"f", a.f}, {"mode", a.mode}};
  json violations = json::array();
  double worst = 0.0;
  std::size_t num_faultsets = 0;

  if (a.mode == "exhaustive") {
    auto r = exhaustive_verify_spanner(g, h, t, a.f);
    num_faultsets = r.fault_sets_checked;
    if (!r.ok) {
      FaultSet w(g, r.witness_faults);
      const Edge& e = g.edge(r.witness_edge);
      Graph hg = edge_subgraph(g, h);
      FaultSet hf(hg);
      for (std::size_t i = 0; i < h.size(); ++i)
        if (w.contains(h[i])) hf.insert(hg, static_cast<EdgeId>(i));
      const double ratio = shortest_dist(hg, hf, e.u, e.v) / e.w;
      json faults = report::edge_pairs(g, r.witness_faults);
      violations.push_back({{"fault_file", "exhaustive-witness"}, {"edge", report::edge_pair(g, r.witness_edge)},
                            {"ratio", report::number(ratio)}, {"faults", faults}});
      worst = ratio;
    }
    rep["num_faultsets"] = num_faultsets;
    rep["violations"] = violations;
    rep["worst_ratio"] = r.ok ? json(nullptr) : report::number(worst);
    write_json(rep, a.out);
    return violations.empty() ? 0 : kExitViolations;
  }

  std::vector<FaultSet> faults;
  std::vector<std::string> labels;
  if (a.mode == "sampled") {
    for (int i = 0; i < a.samples; ++i) {
      faults.push_back(sample_fault_set(g, a.f, a.density, Rng::stream(seed, "verify", static_cast<std::uint64_t>(i)).next()));
      labels.push_back("sample-" + std::to_string(i));
    }
  } else if (a.mode == "adversarial") {
    for (const std::string& path : a.fault_files) {
      faults.push_back(io::read_fault_file(path, g));
      labels.push_back(path);
    }
    if (!a.family.empty()) {
      // One adversarial set per edge missing from h (or per edge if none is missing).
      std::vector<EdgeId> targets;
      for (EdgeId e = 0; e < g.num_edges(); ++e)
        if (!in_h[static_cast<std::size_t>(e)]) targets.push_back(e);
      if (targets.empty())
        for (EdgeId e = 0; e < g.num_edges(); ++e) targets.push_back(e);
      if (a.family == "blowup") {
        Graph base = load_base(a.base);
        for (EdgeId e : targets) {
          faults.push_back(adversarial_blowup_fault_for_edge(g, base, a.shape_f, e));
          labels.push_back("blowup-edge-" + std::to_string(g.edge(e).u) + "-" + std::to_string(g.edge(e).v));
        }
      } else if (a.family == "hypercube") {
        gen::HypercubeShape shape{a.shape_f, a.shape_d};
        if (shape.num_nodes() != g.num_nodes()) throw Error("verify: hypercube shape does not match the graph");
        for (EdgeId e : targets) {
          int coord = shape.differing_coordinate(g.edge(e).u, g.edge(e).v);
          faults.push_back(adversarial_hypercube_fault(g, shape, coord, e));
          labels.push_back("hypercube-edge-" + std::to_string(g.edge(e).u) + "-" + std::to_string(g.edge(e).v));
        }
      } else {
        throw Error("verify: unknown family '" + a.family + "' (blowup, hypercube)");
      }
    }
    if (faults.empty()) throw Error("verify adversarial: give --faults files or --family");
  } else {
    throw Error("verify: unknown mode '" + a.mode + "' (sampled, adversarial, exhaustive)");
  }
  for (const FaultSet& fs : faults)
    if (!fs.valid_for(a.f) && a.mode == "sampled") throw Error("internal: sampled fault set exceeds f");
  num_faultsets = faults.size();
  if (a.connectivity) {
    auto r = verify_certificate(g, h, faults);
    for (const Violation& v : r.violations)
      violations.push_back({{"fault_file", labels[v.fault_index]}, {"edge", report::edge_pair(g, v.edge)}, {"ratio", "inf"}});
    worst = r.violations.empty() ? 1.0 : kInfinity;
  } else {
    auto r = verify_spanner(g, h, t, faults);
    for (const Violation& v : r.violations)
      violations.push_back({{"fault_file", labels[v.fault_index]}, {"edge", report::edge_pair(g, v.edge)},
                            {"ratio", report::number(v.ratio)}});
    worst = r.worst_ratio;
  }
  rep["num_faultsets"] = num_faultsets;
  rep["violations"] = violations;
  rep["worst_ratio"] = report::number(worst);
  write_json(rep, a.out);
  return violations.empty() ? 0 : kExitViolations;
}

// ---------------------------------------------------------------- lbc

struct LbcArgs {
  std::string graph, mode = "approx", out;
  int u = 0, v = 1, k = 3, retries = 50, max_doublings = 6, max_universe = kMaxExactUniverse;
  double A = 0.25;
};

int run_lbc(const LbcArgs& a, std::uint64_t seed) {
  Graph g = io::read_edge_list_file(a.graph);
  LbcInstance inst{&g, a.u, a.v, a.k};
  inst.validate();
  json rep;
  if (a.mode == "exact") {
    rep = report::to_json(g, lbc_bruteforce(inst, a.max_universe));
  } else if (a.mode == "lp") {
    FractionalCut lp = lbc_lp_solve(inst);
    json support = json::array();
    for (EdgeId e = 0; e < g.num_edges(); ++e)
      if (lp.c[static_cast<std::size_t>(e)] > 1e-12)
        support.push_back({{"edge", report::edge_pair(g, e)}, {"c", lp.c[static_cast<std::size_t>(e)]}});
    rep = {{"value", nullptr},
           {"edges", json::array()},
           {"f_lp", lp.f_lp},
           {"meta", {{"lower_bound", lp.lower_bound}, {"converged", lp.converged},
                     {"path_constraints", lp.path_constraints}, {"pivots", lp.pivots}, {"support", support}}}};
  } else if (a.mode == "approx") {
    RoundingOptions opt;
    opt.A = a.A;
    opt.retries = a.retries;
    opt.max_doublings = a.max_doublings;
    opt.seed = seed;
    rep = report::to_json(g, approx_min_max_lbc(inst, opt));
  } else {
    throw Error("lbc: unknown mode '" + a.mode + "' (exact, lp, approx)");
  }
  rep["instance"] = {{"graph", a.graph}, {"u", a.u}, {"v", a.v}, {"k", a.k}, {"mode", a.mode}, {"seed", seed}};
  write_json(rep, a.out);
  return 0;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  std::string suite, out;
  int seeds = 10;
};

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  int failures = 0;
};

Table bench_lbc_ratio(int seeds, std::uint64_t root) {
  Table t{{"seed", "n", "k", "universe", "f_lp", "f_star", "f_hat", "ratio", "sandwich_ok"}, {}, 0};
  for (int s = 0; s < seeds; ++s) {
    Rng rng = Rng::stream(root, "bench-lbc", static_cast<std::uint64_t>(s));
    for (int tries = 0; tries < 100; ++tries) {
      const int n = 6 + static_cast<int>(rng.below(7));
      Graph g = gen::gnp(n, 0.3 + 0.3 * rng.uniform01(), rng.next());
      const int k = 1 + static_cast<int>(rng.below(4));
      auto universe = lbc_relevant_edges(g, 0, n - 1, k);
      if (universe.empty() || universe.size() > 20) continue;
      LbcInstance inst{&g, 0, n - 1, k};
      RoundingOptions opt;
      opt.seed = rng.next();
      auto approx = approx_min_max_lbc(inst, opt);
      auto exact = lbc_bruteforce(inst);
      const double flp = approx.fractional->f_lp;
      bool ok = flp <= exact.value + 1e-6 && exact.value <= approx.value &&
                is_length_bounded_cut(g, approx.edges, 0, n - 1, k);
      if (!ok) ++t.failures;
      t.rows.push_back({double(s), double(n), double(k), double(universe.size()), flp, double(exact.value),
                        double(approx.value), approx.value / std::max(1.0, double(exact.value)), ok ? 1.0 : 0.0});
      break;
    }
  }
  return t;
}

Table bench_blowup_exactness(int seeds, std::uint64_t root) {
  Table t{{"base", "k", "f", "edges", "kept", "deletions_flagged", "pass"}, {}, 0};
  const std::vector<std::pair<std::string, int>> bases{{"petersen", 2}, {"heawood", 2}, {"cycle-9", 3}};
  for (std::size_t b = 0; b < bases.size(); ++b) {
    Graph base = gen::named(bases[b].first);
    for (int f = 1; f <= 3; ++f) {
      Graph g = gen::girth_blowup(base, f);
      auto r = greedy_fd_spanner_exact(g, bases[b].second, f, {2'000'000, false});
      Rng rng = Rng::stream(root, "bench-blowup", b * 10 + static_cast<std::uint64_t>(f));
      int flagged = 0;
      for (int i = 0; i < seeds; ++i) {
        EdgeId e = static_cast<EdgeId>(rng.below(static_cast<std::uint64_t>(g.num_edges())));
        std::vector<EdgeId> rest;
        for (EdgeId x = 0; x < g.num_edges(); ++x)
          if (x != e) rest.push_back(x);
        FaultSet adv = adversarial_blowup_fault_for_edge(g, base, f, e);
        if (!verify_spanner(g, rest, 2.0 * bases[b].second - 1, std::vector<FaultSet>{adv}).violations.empty()) ++flagged;
      }
      bool pass = static_cast<int>(r.edges.size()) == g.num_edges() && flagged == seeds;
      if (!pass) ++t.failures;
      t.rows.push_back({double(b), double(bases[b].second), double(f), double(g.num_edges()), double(r.edges.size()),
                        double(flagged), pass ? 1.0 : 0.0});
    }
  }
  return t;
}

Table bench_robustness(int seeds, std::uint64_t root) {
  Table t{{"seed", "n", "min_degree", "phi", "min_post_fault", "failures"}, {}, 0};
  for (int s = 0; s < seeds; ++s) {
    Rng rng = Rng::stream(root, "bench-robust", static_cast<std::uint64_t>(s));
    for (int tries = 0; tries < 100; ++tries) {
      const int n = 10 + static_cast<int>(rng.below(7));
      Graph g = gen::gnp(n, 0.6 + 0.3 * rng.uniform01(), rng.next());
      if (!is_connected(g)) continue;
      double phi = conductance_bruteforce(g);
      if (g.min_degree() < 2.0 / phi) continue;
      auto r = check_expander_robustness(g, phi, 1, 100, rng.next());
      t.failures += r.failures;
      t.rows.push_back({double(s), double(n), double(g.min_degree()), phi, r.min_conductance, double(r.failures)});
      break;
    }
  }
  return t;
}

Table bench_cluster_coverage(int seeds, std::uint64_t root) {
  Table t{{"seed", "f", "centers", "covered"}, {}, 0};
  Graph g = gen::gnp(400, 0.5, root);
  for (int f = 1; f <= 2; ++f)
    for (int s = 0; s < seeds; ++s) {
      auto centers = sample_centers(g, 2.0, center_sample_seed(root + static_cast<std::uint64_t>(s), 0));
      bool ok = check_center_coverage(g, centers, f);
      t.rows.push_back({double(s), double(f), double(centers.size()), ok ? 1.0 : 0.0});
    }
  return t;
}

Table bench_certificate_size(int seeds, std::uint64_t root) {
  Table t{{"seed", "n", "d", "m", "size", "violations"}, {}, 0};
  for (int s = 0; s < seeds; ++s) {
    Graph g = gen::random_regular(200, 20, root + static_cast<std::uint64_t>(s));
    CertificateOptions opt;
    opt.c_deg = 0.5;
    opt.seed = root + static_cast<std::uint64_t>(s);
    auto r = fd_certificate(g, 1, opt);
    std::vector<FaultSet> faults;
    for (int i = 0; i < 50; ++i) faults.push_back(sample_fault_set(g, 1, 0.5, Rng::stream(opt.seed, "bench-cert", i).next()));
    auto chk = verify_certificate(g, r.edges, faults);
    t.failures += static_cast<int>(chk.violations.size());
    t.rows.push_back({double(s), 200, 20, double(g.num_edges()), double(r.edges.size()), double(chk.violations.size())});
  }
  return t;
}

int run_bench(const BenchArgs& a, std::uint64_t seed) {
  if (a.seeds < 1) throw Error("bench: --seeds must be positive");
  Table t;
  if (a.suite == "lbc-ratio") t = bench_lbc_ratio(a.seeds, seed);
  else if (a.suite == "blowup-exactness") t = bench_blowup_exactness(a.seeds, seed);
  else if (a.suite == "robustness") t = bench_robustness(a.seeds, seed);
  else if (a.suite == "cluster-coverage") t = bench_cluster_coverage(a.seeds, seed);
  else if (a.suite == "certificate-size") t = bench_certificate_size(a.seeds, seed);
  else
    throw Error("bench: unknown suite '" + a.suite +
                "' (lbc-ratio, blowup-exactness, robustness, cluster-coverage, certificate-size)");
  const std::string prefix = a.out.empty() ? "bench-" + a.suite : a.out;
  {
    std::ofstream csv(prefix + ".csv");
    if (!csv) throw Error("cannot write " + prefix + ".csv");
    for (std::size_t c = 0; c < t.columns.size(); ++c) csv << (c ? "," : "") << t.columns[c];
    csv << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        csv << (c ? "," : "");
        if (row[c] == std::floor(row[c]) && std::abs(row[c]) < 1e15) csv << static_cast<long long>(row[c]);
        else csv << io::format_weight(row[c]);
      }
      csv << '\n';
    }
  }
  json agg = json::object();
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (t.rows.empty()) break;
    double lo = kInfinity, hi = -kInfinity, sum = 0;
    for (const auto& row : t.rows) {
      lo = std::min(lo, row[c]);
      hi = std::max(hi, row[c]);
      sum += row[c];
    }
    agg[t.columns[c]] = {{"mean", sum / t.rows.size()}, {"min", lo}, {"max", hi}};
  }
  write_json({{"suite", a.suite}, {"seeds", a.seeds}, {"seed", seed}, {"rows", t.rows.size()},
              {"failures", t.failures}, {"aggregate", agg}},
             prefix + ".json");
  return t.failures == 0 ? 0 : kExitViolations;
}

}  // namespace

int main(int argc, char** argv) {
  Config cfg;
  std::uint64_t seed = 0;
  try {
    if (std::string path = find_config_path(argc, argv); !path.empty()) cfg.load(path);
    for (const std::string& key : cfg.keys())
      if (!kConfigKeys.count(key)) throw Error("config: unknown key '" + key + "'");
    seed = default_seed(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }

  CLI::App app{"Fault-degree tolerant spanners and connectivity certificates"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path, "flat key = value file (flags override it)");
  app.add_option("--seed", seed, "root seed (default: config, then $FDSPAN_SEED, then 0)");

  GenArgs ga;
  ga.f = cfg.get("f", ga.f);
  auto* gen_cmd = app.add_subcommand("gen", "generate a graph family");
  gen_cmd->add_option("family", ga.family, "gnp | regular | blowup | hypercube | named")->required();
  gen_cmd->add_option("--out", ga.out, "edge-list output (manifest goes to <out>.json)")->required();
  gen_cmd->add_option("--n", ga.n);
  gen_cmd->add_option("--p", ga.p);
  gen_cmd->add_option("--d", ga.d);
  gen_cmd->add_option("--f", ga.f);
  gen_cmd->add_option("--base", ga.base, "named graph or edge-list file");
  gen_cmd->add_option("--name", ga.name, "petersen, heawood, cycle-N, complete-N, path-N");

  BuildArgs ba;
  ba.k = cfg.get("k", ba.k);
  ba.f = cfg.get("f", ba.f);
  ba.B = cfg.get("B", ba.B);
  ba.A = cfg.get("A", ba.A);
  ba.retries = cfg.get("retries", ba.retries);
  ba.max_doublings = cfg.get("max_doublings", ba.max_doublings);
  ba.max_search_nodes = cfg.get("max_search_nodes", ba.max_search_nodes);
  ba.c_sample = cfg.get("c_sample", ba.c_sample);
  ba.phi = cfg.get("phi", ba.phi);
  ba.c_deg = cfg.get("c_deg", ba.c_deg);
  ba.check_samples = cfg.get("check_samples", ba.check_samples);
  ba.density = cfg.get("density", ba.density);
  auto* build_cmd = app.add_subcommand("build", "build a spanner or certificate");
  build_cmd->add_option("--algo", ba.algo, "greedy-exact | greedy-approx | cluster3 | certificate")->required();
  build_cmd->add_option("--graph", ba.graph)->required();
  build_cmd->add_option("--out", ba.out, "output edge list")->required();
  build_cmd->add_option("--report", ba.report, "BuildReport JSON (default <out>.report.json)");
  build_cmd->add_option("--blocking", ba.blocking, "blocking-set JSON (greedy only)");
  build_cmd->add_option("--k", ba.k);
  build_cmd->add_option("--f", ba.f);
  build_cmd->add_option("--B", ba.B);
  build_cmd->add_option("--A", ba.A);
  build_cmd->add_option("--retries", ba.retries);
  build_cmd->add_option("--max-doublings", ba.max_doublings);
  build_cmd->add_option("--max-search-nodes", ba.max_search_nodes, "branch-and-bound budget per exact decision");
  build_cmd->add_option("--c-sample", ba.c_sample);
  build_cmd->add_option("--phi", ba.phi);
  build_cmd->add_option("--c-deg", ba.c_deg);
  build_cmd->add_flag("--paper-constants", ba.asymptotic_constants);
  build_cmd->add_option("--check-samples", ba.check_samples, "sampled fault sets measured into the report");
  build_cmd->add_option("--density", ba.density, "fault density for the report's checks");
  build_cmd->add_flag("--no-timing", ba.no_timing, "omit runtime so reports are byte-reproducible");

  VerifyArgs va;
  va.t = cfg.get("t", va.t);
  va.f = cfg.get("f", va.f);
  va.samples = cfg.get("samples", va.samples);
  va.density = cfg.get("density", va.density);
  auto* verify_cmd = app.add_subcommand("verify", "check a subgraph against fault sets");
  verify_cmd->add_option("--graph", va.graph)->required();
  verify_cmd->add_option("--sub", va.sub)->required();
  verify_cmd->add_option("--mode", va.mode, "sampled | adversarial | exhaustive");
  verify_cmd->add_option("--t", va.t, "stretch");
  verify_cmd->add_flag("--connectivity", va.connectivity, "check connectivity instead of stretch");
  verify_cmd->add_option("--f", va.f);
  verify_cmd->add_option("--samples", va.samples);
  verify_cmd->add_option("--density", va.density);
  verify_cmd->add_option("--faults", va.fault_files, "fault files (adversarial mode)");
  verify_cmd->add_option("--family", va.family, "blowup | hypercube: generate adversarial sets");
  verify_cmd->add_option("--base", va.base, "base graph of the blow-up");
  verify_cmd->add_option("--shape-f", va.shape_f, "blow-up factor or hypercube alphabet size");
  verify_cmd->add_option("--shape-d", va.shape_d, "hypercube dimension");
  verify_cmd->add_option("--out", va.out, "report file (default stdout)");

  LbcArgs la;
  la.k = cfg.get("k", la.k);
  la.A = cfg.get("A", la.A);
  la.retries = cfg.get("retries", la.retries);
  la.max_doublings = cfg.get("max_doublings", la.max_doublings);
  la.max_universe = cfg.get("max_universe", la.max_universe);
  auto* lbc_cmd = app.add_subcommand("lbc", "min-max length-bounded cut");
  lbc_cmd->add_option("--graph", la.graph)->required();
  lbc_cmd->add_option("--u", la.u)->required();
  lbc_cmd->add_option("--v", la.v)->required();
  lbc_cmd->add_option("--k", la.k);
  lbc_cmd->add_option("--mode", la.mode, "exact | lp | approx");
  lbc_cmd->add_option("--A", la.A);
  lbc_cmd->add_option("--retries", la.retries);
  lbc_cmd->add_option("--max-doublings", la.max_doublings);
  lbc_cmd->add_option("--max-universe", la.max_universe);
  lbc_cmd->add_option("--out", la.out, "report file (default stdout)");

  BenchArgs bn;
  auto* bench_cmd = app.add_subcommand("bench", "run a benchmark suite");
  bench_cmd->add_option("suite", bn.suite, "lbc-ratio | blowup-exactness | robustness | cluster-coverage | certificate-size")
      ->required();
  bench_cmd->add_option("--seeds", bn.seeds);
  bench_cmd->add_option("--out", bn.out, "output prefix for .csv and .json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }
  try {
    if (*gen_cmd) return run_gen(ga, seed);
    if (*build_cmd) return run_build(ba, seed);
    if (*verify_cmd) return run_verify(va, seed);
    if (*lbc_cmd) return run_lbc(la, seed);
    if (*bench_cmd) return run_bench(bn, seed);
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}}.dump() << '\n';
    return kExitError;
  }
  return kExitError;
}

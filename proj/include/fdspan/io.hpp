#pragma once

// Text formats.
//
// Edge list:  first line "n m W" (W = 1 when a weight column follows), then m
//             lines "u v" or "u v w", 0-indexed.
// Fault file: one entry per line, either a single edge id or a "u v" pair.
//             Blank lines and lines starting with '#' are ignored.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "fdspan/graph.hpp"

namespace fdspan::io {

inline Graph read_edge_list(std::istream& in) {
  long long n = 0, m = 0;
  int weighted = 0;
  std::string header;
  while (std::getline(in, header)) {
    if (!header.empty() && header[0] != '#') break;
  }
  std::istringstream hs(header);
  if (!(hs >> n >> m >> weighted) || n < 0 || m < 0 || (weighted != 0 && weighted != 1))
    throw Error("edge list: malformed header '" + header + "'");
  Graph g(static_cast<int>(n));
  for (long long i = 0; i < m; ++i) {
    long long u = 0, v = 0;
    double w = 1.0;
    if (!(in >> u >> v)) throw Error("edge list: expected " + std::to_string(m) + " edges, got " + std::to_string(i));
    if (weighted && !(in >> w)) throw Error("edge list: missing weight on edge " + std::to_string(i));
    g.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v), w);
  }
  return g;
}

inline Graph read_edge_list_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open graph file " + path);
  return read_edge_list(in);
}

/// Shortest decimal text that round-trips the weight.
inline std::string format_weight(double w) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, w);
    if (std::strtod(buf, nullptr) == w) break;
  }
  return buf;
}

inline void write_edge_list(std::ostream& out, const Graph& g) {
  const bool weighted = g.weighted();
  out << g.num_nodes() << ' ' << g.num_edges() << ' ' << (weighted ? 1 : 0) << '\n';
  for (const Edge& e : g.edges()) {
    out << e.u << ' ' << e.v;
    if (weighted) out << ' ' << format_weight(e.w);
    out << '\n';
  }
}

/// Writes only the listed edges of g, in the given order.
inline void write_edge_list(std::ostream& out, const Graph& g, std::span<const EdgeId> ids) {
  write_edge_list(out, edge_subgraph(g, ids));
}

inline void write_edge_list_file(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  write_edge_list(out, g);
}

inline std::vector<EdgeId> read_fault_entries(std::istream& in, const Graph& g) {
  std::vector<EdgeId> ids;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<long long> nums;
    long long x;
    while (ls >> x) nums.push_back(x);
    if (nums.size() == 1) {
      if (nums[0] < 0 || nums[0] >= g.num_edges()) throw Error("fault file line " + std::to_string(lineno) + ": edge id out of range");
      ids.push_back(static_cast<EdgeId>(nums[0]));
    } else if (nums.size() == 2) {
      auto e = (nums[0] >= 0 && nums[1] >= 0 && nums[0] < g.num_nodes() && nums[1] < g.num_nodes())
                   ? g.find_edge(static_cast<NodeId>(nums[0]), static_cast<NodeId>(nums[1]))
                   : std::nullopt;
      if (!e) throw Error("fault file line " + std::to_string(lineno) + ": no such edge");
      ids.push_back(*e);
    } else {
      throw Error("fault file line " + std::to_string(lineno) + ": expected 'id' or 'u v'");
    }
  }
  return ids;
}

inline FaultSet read_fault_file(const std::string& path, const Graph& g) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open fault file " + path);
  auto ids = read_fault_entries(in, g);
  return FaultSet(g, ids);
}

/// Writes a fault set as "u v" pairs, sorted by edge id.
inline void write_fault_set(std::ostream& out, const Graph& g, const FaultSet& f) {
  for (EdgeId e : f.sorted_ids()) out << g.edge(e).u << ' ' << g.edge(e).v << '\n';
}

}  // namespace fdspan::io

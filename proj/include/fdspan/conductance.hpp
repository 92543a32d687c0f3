#pragma once

// Conductance of a cut S:  |boundary(S)| / min(vol(S), vol(V \ S)),
// where vol counts incident edges plus the node's external degree (boundary
// self-loops). Edge weights are ignored: conductance is a count ratio.

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "fdspan/graph.hpp"
#include "fdspan/paths.hpp"

namespace fdspan {

inline constexpr int kMaxBruteforceConductanceNodes = 24;

struct ConductanceCut {
  double value = 1.0;
  std::vector<NodeId> side;  // the smaller-volume side is not guaranteed; any side of the cut
};

/// Conductance of the cut (side, rest). `side` must be a proper nonempty subset.
inline double cut_conductance(const Graph& g, std::span<const NodeId> side) {
  std::vector<char> in(static_cast<std::size_t>(g.num_nodes()), 0);
  for (NodeId x : side) in[static_cast<std::size_t>(x)] = 1;
  long long boundary = 0, vol_in = 0, vol_total = 0;
  for (NodeId x = 0; x < g.num_nodes(); ++x) {
    vol_total += g.volume(x);
    if (in[static_cast<std::size_t>(x)]) vol_in += g.volume(x);
  }
  for (const Edge& e : g.edges())
    if (in[static_cast<std::size_t>(e.u)] != in[static_cast<std::size_t>(e.v)]) ++boundary;
  long long denom = std::min(vol_in, vol_total - vol_in);
  if (denom == 0) return boundary == 0 ? 0.0 : kInfinity;
  return static_cast<double>(boundary) / static_cast<double>(denom);
}

/// Exact minimum-conductance cut by Gray-code enumeration of all
/// 2^(n-1) - 1 nontrivial cuts. Graphs with fewer than two nodes have no cut
/// and report conductance 1; disconnected graphs report 0 with a component as
/// the side.
inline ConductanceCut min_conductance_cut_exact(const Graph& g) {
  const int n = g.num_nodes();
  if (n > kMaxBruteforceConductanceNodes)
    throw Error("conductance_bruteforce: n = " + std::to_string(n) + " exceeds the enumeration cap of 24");
  ConductanceCut best;
  if (n < 2) return best;
  auto comps = components(g, FaultSet{});
  if (comps.size() > 1) {
    best.value = 0.0;
    best.side = comps.front();
    return best;
  }
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
  std::vector<long long> vol(static_cast<std::size_t>(n));
  long long vol_total = 0;
  for (const Edge& e : g.edges()) {
    adj[static_cast<std::size_t>(e.u)] |= 1u << e.v;
    adj[static_cast<std::size_t>(e.v)] |= 1u << e.u;
  }
  for (NodeId x = 0; x < n; ++x) {
    vol[static_cast<std::size_t>(x)] = g.volume(x);
    vol_total += vol[static_cast<std::size_t>(x)];
  }
  std::uint32_t set = 0;
  long long boundary = 0, vol_in = 0;
  // Compare fractions exactly: keep best as (num, den).
  long long best_num = 1, best_den = 0;
  std::uint32_t best_set = 0;
  const std::uint64_t count = std::uint64_t{1} << (n - 1);
  for (std::uint64_t i = 1; i < count; ++i) {
    const int x = std::countr_zero(i);
    const std::uint32_t bit = 1u << x;
    const long long deg = g.degree(x);
    const long long a = std::popcount(adj[static_cast<std::size_t>(x)] & set & ~bit);
    if (set & bit) {
      set &= ~bit;
      boundary += 2 * a - deg;
      vol_in -= vol[static_cast<std::size_t>(x)];
    } else {
      set |= bit;
      boundary += deg - 2 * a;
      vol_in += vol[static_cast<std::size_t>(x)];
    }
    const long long den = std::min(vol_in, vol_total - vol_in);
    // boundary/den < best_num/best_den ; best_den == 0 means "no cut yet".
    if (best_den == 0 || boundary * best_den < best_num * den) {
      best_num = boundary;
      best_den = den;
      best_set = set;
    }
  }
  best.value = static_cast<double>(best_num) / static_cast<double>(best_den);
  for (NodeId x = 0; x < n; ++x)
    if (best_set & (1u << x)) best.side.push_back(x);
  return best;
}

/// Exact conductance by enumeration; n <= 24.
inline double conductance_bruteforce(const Graph& g) { return min_conductance_cut_exact(g).value; }

struct SpectralInfo {
  double lambda2 = 0.0;
  Eigen::VectorXd fiedler;  // D^{-1/2}-scaled second eigenvector (sweep order vector)
};

/// Second-smallest eigenvalue of the normalized Laplacian
/// D^{-1/2} (Deg - A) D^{-1/2}, where D includes external degree.
inline SpectralInfo normalized_laplacian_spectrum(const Graph& g) {
  const int n = g.num_nodes();
  if (n < 2) throw Error("spectral: need at least two nodes");
  if (!is_connected(g)) throw Error("spectral: graph is disconnected");
  Eigen::VectorXd inv_sqrt(n);
  for (NodeId x = 0; x < n; ++x) inv_sqrt(x) = 1.0 / std::sqrt(static_cast<double>(g.volume(x)));
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (NodeId x = 0; x < n; ++x) m(x, x) = static_cast<double>(g.degree(x)) * inv_sqrt(x) * inv_sqrt(x);
  for (const Edge& e : g.edges()) {
    double v = -inv_sqrt(e.u) * inv_sqrt(e.v);
    m(e.u, e.v) += v;
    m(e.v, e.u) += v;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) {
    // Retry once on a tiny symmetric perturbation before giving up.
    Eigen::MatrixXd p = m;
    for (int i = 0; i < n; ++i) p(i, i) += 1e-12 * (i + 1);
    solver.compute(p);
    if (solver.info() != Eigen::Success) throw Error("spectral: eigensolver failed to converge");
  }
  SpectralInfo out;
  out.lambda2 = std::max(0.0, solver.eigenvalues()(1));
  out.fiedler = solver.eigenvectors().col(1).cwiseProduct(inv_sqrt);
  return out;
}

/// Certified lower bound lambda2 / 2 on the conductance (easy Cheeger side).
inline double conductance_spectral_lower_bound(const Graph& g) {
  return normalized_laplacian_spectrum(g).lambda2 / 2.0;
}

/// Best prefix cut along the order of `score`.
inline ConductanceCut sweep_cut(const Graph& g, const Eigen::VectorXd& score) {
  const int n = g.num_nodes();
  std::vector<NodeId> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](NodeId a, NodeId b) { return score(a) < score(b); });
  std::vector<char> in(static_cast<std::size_t>(n), 0);
  long long vol_total = 0;
  for (NodeId x = 0; x < n; ++x) vol_total += g.volume(x);
  long long boundary = 0, vol_in = 0;
  long long best_num = 1, best_den = 0;
  int best_len = 1;
  for (int i = 0; i + 1 < n; ++i) {
    NodeId x = order[static_cast<std::size_t>(i)];
    long long a = 0;
    for (EdgeId e : g.incident(x))
      if (in[static_cast<std::size_t>(g.edge(e).other(x))]) ++a;
    in[static_cast<std::size_t>(x)] = 1;
    boundary += g.degree(x) - 2 * a;
    vol_in += g.volume(x);
    long long den = std::min(vol_in, vol_total - vol_in);
    if (den <= 0) continue;
    if (best_den == 0 || boundary * best_den < best_num * den) {
      best_num = boundary;
      best_den = den;
      best_len = i + 1;
    }
  }
  ConductanceCut cut;
  cut.value = best_den == 0 ? 0.0 : static_cast<double>(best_num) / static_cast<double>(best_den);
  cut.side.assign(order.begin(), order.begin() + best_len);
  std::sort(cut.side.begin(), cut.side.end());
  return cut;
}

}  // namespace fdspan

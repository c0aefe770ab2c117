#pragma once

// Independent reference computations used by the tests. Nothing here may call
// into the code paths it is used to check.

#include "isoconv/cayley.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <utility>

namespace oracle {

// min over k = 1..kmax of k ||x||^(1 - 1/k), plain loop.
inline double brute_force_F(double x, int kmax = 200) {
  const double t = std::min(x, 1.0 - x);
  if (t == 0.0) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= kmax; ++k) best = std::min(best, k * std::pow(t, 1.0 - 1.0 / k));
  return best;
}

// Double loop over A x S using the group's own addition.
inline int naive_boundary(const isoconv::AbelianGroup& g, const isoconv::ConnectionSet& s,
                          std::uint64_t a) {
  int count = 0;
  for (int v = 0; v < g.order(); ++v) {
    if (!((a >> v) & 1u)) continue;
    for (int e : s.elements())
      if (!((a >> g.add(v, e)) & 1u)) ++count;
  }
  return count;
}

// Minimum over every n-subset, no translation pruning.
inline std::pair<int, std::uint64_t> unrestricted_min_boundary(const isoconv::AbelianGroup& g,
                                                               const isoconv::ConnectionSet& s, int n) {
  int best = std::numeric_limits<int>::max();
  std::uint64_t witness = 0;
  const std::uint64_t limit = std::uint64_t{1} << g.order();
  for (std::uint64_t a = 0; a < limit; ++a) {
    if (std::popcount(a) != n) continue;
    const int b = naive_boundary(g, s, a);
    if (b < best) {
      best = b;
      witness = a;
    }
  }
  return {best, witness};
}

// Edges {u, v} of the simple undirected Cayley graph Cay(G, T) with u in A and v outside.
inline int undirected_cut(const isoconv::AbelianGroup& g, const std::vector<int>& t, std::uint64_t a) {
  std::set<std::pair<int, int>> edges;
  for (int u = 0; u < g.order(); ++u)
    for (int e : t) {
      const int v = g.add(u, e);
      if (u != v) edges.insert({std::min(u, v), std::max(u, v)});
    }
  int cut = 0;
  for (auto [u, v] : edges)
    if (((a >> u) & 1u) != ((a >> v) & 1u)) ++cut;
  return cut;
}

}  // namespace oracle

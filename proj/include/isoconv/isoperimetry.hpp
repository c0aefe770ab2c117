#pragma once

#include "isoconv/cayley.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace isoconv {

// Slack allowed when comparing an integer boundary with the real-valued bound.
inline constexpr double kBoundTol = 1e-9;
inline constexpr int kDefaultExhaustiveCap = 32;

struct MinBoundary {
  int boundary = 0;
  VertexSet witness;
  std::uint64_t enumerated = 0;
};

// Exact minimum of the edge boundary over all n-subsets. Only subsets that
// contain the identity are enumerated (every translation orbit has one), in
// increasing order of their bit masks; ties go to the smallest mask.
// Throws std::out_of_range unless 0 <= n <= |G|.
MinBoundary min_boundary(const CayleyDigraph& d, int n, unsigned threads = 1);
MinBoundary min_boundary(const AbelianGroup& g, const ConnectionSet& s, int n, unsigned threads = 1);

// (1/m) |G| F(n/|G|) with m = m_override or max_order(G, S).
// Throws std::invalid_argument if m_override is below max_order(G, S).
double isoperimetric_bound(const AbelianGroup& g, const ConnectionSet& s, int n,
                      std::optional<int> m_override = std::nullopt);

struct ProfileEntry {
  int n = 0;
  int min_boundary = 0;
  VertexSet witness;
  double bound = 0.0;
  double ratio = 0.0;  // +inf when bound == 0
};

struct SearchStats {
  std::uint64_t enumerated = 0;
  std::uint64_t pruned = 0;  // n-subsets skipped because they miss the identity
  double wall_ms = 0.0;
};

struct ProfileReport {
  std::string group;
  std::string connection_set;
  int m = 0;
  bool generating = true;
  std::vector<ProfileEntry> entries;  // n = 0..|G|
  SearchStats stats;
  std::vector<std::string> warnings;
  // Cardinalities where min_boundary < bound - kBoundTol. With a generating S
  // this is a genuine violation; otherwise the generating hypothesis is unmet.
  std::vector<int> below_bound;

  bool hypothesis_met() const { return generating; }
  bool holds() const { return below_bound.empty() || !generating; }
};

// Full isoperimetric profile with bounds and tightness ratios.
// Throws std::invalid_argument when |G| exceeds `cap`.
ProfileReport profile(const AbelianGroup& g, const ConnectionSet& s,
                      std::optional<int> m_override = std::nullopt, unsigned threads = 1,
                      int cap = kDefaultExhaustiveCap);

// Exhaustive profile of an arbitrary digraph (no translation pruning) against
// (1/m) n F(k/n). `generating` is reported false: outside abelian Cayley graphs
// the bound carries no guarantee. Throws std::invalid_argument above `cap` vertices.
ProfileReport profile_generic(const GenericDigraph& d, int m, std::string name, int cap = 24);

// Bidirectional 6-cycle: the Cayley graph of S3 with two involutions.
GenericDigraph s3_cayley_digraph();

struct CounterexampleResult {
  int boundary = 0;
  double bound = 0.0;
  int n = 1;
};

// Path of `path_length` consecutive vertices (1..5) in the S3 graph, against
// (1/2) |G| F(n/6).
CounterexampleResult counterexample_s3(int path_length = 1);

}  // namespace isoconv

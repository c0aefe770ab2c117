#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace isoconv {

// Vertex subsets are single 64-bit words.
inline constexpr int kMaxGroupOrder = 64;

// Direct product Z_{n1} x ... x Z_{nr}. Element (g1..gr) has mixed-radix index
// sum gi * stride_i with the last coordinate varying fastest.
class AbelianGroup {
 public:
  explicit AbelianGroup(std::vector<int> factors);

  const std::vector<int>& factors() const { return factors_; }
  int order() const { return order_; }
  int rank() const { return static_cast<int>(factors_.size()); }

  int encode(const std::vector<int>& coords) const;
  std::vector<int> decode(int g) const;
  int add(int g, int h) const;
  int negate(int g) const;
  static constexpr int identity() { return 0; }

  // "Z4xZ2"
  std::string to_string() const;
  // "(1,0)" or "3" for cyclic groups
  std::string element_to_string(int g) const;

  friend bool operator==(const AbelianGroup& x, const AbelianGroup& y) { return x.factors_ == y.factors_; }

 private:
  std::vector<int> factors_;
  std::vector<int> strides_;
  int order_ = 1;
};

// Parses "Z4xZ2", "Z2^3", "Z2xZ2^2xZ3". Throws std::invalid_argument.
AbelianGroup parse_group(std::string_view text);

class ConnectionSet {
 public:
  ConnectionSet() = default;
  ConnectionSet(const AbelianGroup& g, std::vector<int> elements);

  const std::vector<int>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  bool contains_identity() const { return !elements_.empty() && elements_.front() == 0; }

 private:
  std::vector<int> elements_;  // sorted, unique
};

// "basis" (standard generators), "(1,0),(0,1)", or "1,5" for cyclic groups.
ConnectionSet parse_connection_set(const AbelianGroup& g, std::string_view text);
ConnectionSet standard_basis(const AbelianGroup& g);
std::string format_connection_set(const AbelianGroup& g, const ConnectionSet& s);

struct VertexSet {
  std::uint64_t bits = 0;
  int universe = 0;

  int count() const { return std::popcount(bits); }
  bool contains(int v) const { return (bits >> v) & 1u; }

  static VertexSet of(int universe, std::initializer_list<int> members);
  static VertexSet full(int universe);

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
};

// Hex string of the bit mask, bit i = vertex i.
std::string to_hex(const VertexSet& a);

struct GenericDigraph {
  int n = 0;
  std::vector<std::pair<int, int>> arcs;  // multiset of (u, v)
};

// lcm over coordinates of n_i / gcd(g_i, n_i). Throws std::out_of_range.
int element_order(const AbelianGroup& g, int element);

bool is_generating(const AbelianGroup& g, const ConnectionSet& s);

// Least m bounding every element order of S. Throws std::invalid_argument on empty S.
int max_order(const AbelianGroup& g, const ConnectionSet& s);

// Cayley digraph a -> a + s with the translation by each s stored as a
// byte-indexed bit permutation, so (A + s) is a handful of table lookups.
class CayleyDigraph {
 public:
  CayleyDigraph(AbelianGroup g, ConnectionSet s);

  const AbelianGroup& group() const { return group_; }
  const ConnectionSet& connection_set() const { return s_; }

  std::uint64_t translate(std::uint64_t bits, std::size_t generator) const;

  // |{(a, s) in A x S : a + s not in A}|
  int boundary(std::uint64_t bits) const {
    int total = 0;
    for (std::size_t k = 0; k < tables_.size(); ++k) total += std::popcount(translate(bits, k) & ~bits);
    return total;
  }
  int boundary(const VertexSet& a) const;

 private:
  using ByteTable = std::array<std::uint64_t, 256>;
  AbelianGroup group_;
  ConnectionSet s_;
  int chunks_ = 0;
  std::vector<std::vector<ByteTable>> tables_;  // [generator][chunk][byte]
};

int edge_boundary(const AbelianGroup& g, const ConnectionSet& s, const VertexSet& a);

// Arcs (u, v) with u in A and v not in A, counted with multiplicity.
// Throws std::invalid_argument if A's universe differs from D.n.
int boundary_generic(const GenericDigraph& d, const VertexSet& a);

}  // namespace isoconv

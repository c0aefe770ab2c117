#include "isoconv/cayley.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <array>
#include <map>
#include <random>

using namespace isoconv;

namespace {

ConnectionSet cs(const AbelianGroup& g, const char* text) { return parse_connection_set(g, text); }

// Small groups for exhaustive property checks.
std::vector<std::pair<AbelianGroup, ConnectionSet>> small_instances() {
  std::vector<std::pair<AbelianGroup, ConnectionSet>> out;
  auto add = [&](const char* g, const char* s) {
    AbelianGroup grp = parse_group(g);
    out.emplace_back(grp, cs(grp, s));
  };
  add("Z6", "1");
  add("Z6", "1,5");
  add("Z7", "2,3");
  add("Z2^3", "basis");
  add("Z2xZ4", "(1,1),(0,1)");
  add("Z3xZ3", "(1,0),(0,1)");
  add("Z12", "3,4");
  add("Z2xZ6", "(1,0),(0,1)");
  return out;
}

}  // namespace

TEST_CASE("group parsing and encoding") {
  const AbelianGroup g = parse_group("Z4xZ2");
  CHECK(g.order() == 8);
  CHECK(g.to_string() == "Z4xZ2");
  CHECK(parse_group("Z2^3") == AbelianGroup({2, 2, 2}));
  CHECK(parse_group("Z2xZ2^2xZ3").order() == 24);
  for (int x = 0; x < g.order(); ++x) CHECK(g.encode(g.decode(x)) == x);
  CHECK(g.encode({3, 1}) == 7);
  CHECK(g.encode({-1, 3}) == g.encode({3, 1}));
  CHECK(g.add(g.encode({3, 1}), g.encode({2, 1})) == g.encode({1, 0}));
  CHECK(g.add(5, g.negate(5)) == 0);

  for (const char* bad : {"", "Z", "Z1", "Y4", "Z4x", "Z2^0", "Z4xZa", "Z2^7"})
    CHECK_THROWS_AS(parse_group(bad), std::invalid_argument);
  CHECK_THROWS_AS(g.decode(8), std::out_of_range);
}

TEST_CASE("connection set parsing") {
  const AbelianGroup g = parse_group("Z2xZ4");
  const ConnectionSet s = cs(g, "(0,1), (1,0),(1,0)");
  CHECK(s.size() == 2);
  CHECK(format_connection_set(g, s) == "(0,1),(1,0)");
  CHECK(format_connection_set(g, cs(g, "basis")) == "(0,1),(1,0)");
  const AbelianGroup z6 = parse_group("Z6");
  CHECK(format_connection_set(z6, cs(z6, "1,5")) == "1,5");
  CHECK(format_connection_set(z6, cs(z6, "-1")) == "5");
  CHECK(cs(z6, "0,1").contains_identity());

  CHECK_THROWS_AS(cs(g, "1,2"), std::invalid_argument);
  CHECK_THROWS_AS(cs(g, "(1,0,0)"), std::invalid_argument);
  CHECK_THROWS_AS(cs(g, "(1,0"), std::invalid_argument);
  CHECK_THROWS_AS(cs(g, "(1,0),"), std::invalid_argument);
  CHECK_THROWS_AS(cs(g, ""), std::invalid_argument);
}

TEST_CASE("element_order") {
  CHECK(element_order(AbelianGroup({6}), 1) == 6);
  const AbelianGroup g({2, 4});
  const int x = g.encode({1, 2});
  CHECK(element_order(g, x) == 2);
  int y = x, steps = 1;
  while (y != 0) {
    y = g.add(y, x);
    ++steps;
  }
  CHECK(steps == 2);
  for (const auto& grp : {AbelianGroup({5}), AbelianGroup({3, 3}), AbelianGroup({2, 6})}) {
    CHECK(element_order(grp, 0) == 1);
    for (int e = 1; e < grp.order(); ++e) CHECK(element_order(grp, e) > 1);
  }
  CHECK_THROWS_AS(element_order(g, 8), std::out_of_range);
}

TEST_CASE("is_generating") {
  const AbelianGroup z6({6});
  CHECK(is_generating(z6, cs(z6, "1")));
  CHECK_FALSE(is_generating(z6, cs(z6, "2")));
  const AbelianGroup v4({2, 2});
  CHECK_FALSE(is_generating(v4, cs(v4, "(1,0)")));
  const AbelianGroup g({2, 4});
  CHECK_FALSE(is_generating(g, cs(g, "(1,1)")));
  CHECK(is_generating(g, cs(g, "(1,0),(0,1)")));
}

TEST_CASE("max_order") {
  const AbelianGroup cube({2, 2, 2});
  CHECK(max_order(cube, standard_basis(cube)) == 2);
  const AbelianGroup z6({6});
  CHECK(max_order(z6, cs(z6, "1,5")) == 6);
  const AbelianGroup z33({3, 3});
  CHECK(max_order(z33, cs(z33, "(1,0),(0,1)")) == 3);
  CHECK_THROWS_AS(max_order(z6, ConnectionSet()), std::invalid_argument);
}

TEST_CASE("edge_boundary") {
  const AbelianGroup z4({4});
  CHECK(edge_boundary(z4, cs(z4, "1"), VertexSet::of(4, {0, 1})) == 1);

  const AbelianGroup cube({2, 2, 2});
  VertexSet half{0, 8};
  for (int v = 0; v < 8; ++v)
    if (cube.decode(v)[2] == 0) half.bits |= 1u << v;
  CHECK(half.count() == 4);
  CHECK(edge_boundary(cube, standard_basis(cube), half) == 4);
  CHECK(oracle::naive_boundary(cube, standard_basis(cube), half.bits) == 4);

  for (auto& [g, s] : small_instances()) {
    CHECK(edge_boundary(g, s, VertexSet{0, g.order()}) == 0);
    CHECK(edge_boundary(g, s, VertexSet::full(g.order())) == 0);
  }
  CHECK_THROWS_AS(edge_boundary(z4, cs(z4, "1"), VertexSet::of(5, {0})), std::invalid_argument);
}

TEST_CASE("edge boundary: complement, translation, identity") {
  for (auto& [g, s] : small_instances()) {
    const CayleyDigraph d(g, s);
    std::vector<int> with_zero = s.elements();
    with_zero.push_back(0);
    const CayleyDigraph d0(g, ConnectionSet(g, with_zero));
    const std::uint64_t full = VertexSet::full(g.order()).bits;
    for (std::uint64_t a = 0; a <= full; ++a) {
      const int b = d.boundary(a);
      CHECK(b == d.boundary(full & ~a));
      CHECK(b == d0.boundary(a));
      for (int t = 1; t < g.order(); ++t) {
        std::uint64_t shifted = 0;
        for (int v = 0; v < g.order(); ++v)
          if ((a >> v) & 1u) shifted |= std::uint64_t{1} << g.add(v, t);
        REQUIRE(d.boundary(shifted) == b);
      }
    }
  }
}

TEST_CASE("edge boundary is additive over disjoint connection sets") {
  const AbelianGroup g({3, 4});
  const ConnectionSet s1(g, {1, 4});
  const ConnectionSet s2(g, {5, 7, 11});
  const ConnectionSet both(g, {1, 4, 5, 7, 11});
  const CayleyDigraph d1(g, s1), d2(g, s2), d(g, both);
  for (std::uint64_t a = 0; a < (1u << 12); ++a) REQUIRE(d.boundary(a) == d1.boundary(a) + d2.boundary(a));
}

TEST_CASE("bitset boundary equals the naive double loop") {
  std::mt19937_64 rng(31337);
  const std::vector<std::vector<int>> shapes{{5},       {16}, {2, 2, 2, 2},       {4, 4},
                                             {2, 3, 4}, {32}, {2, 2, 2, 2, 2, 2}, {7, 9}};
  for (int trial = 0; trial < 10000; ++trial) {
    const AbelianGroup g(shapes[trial % shapes.size()]);
    std::vector<int> elems;
    const int k = 1 + static_cast<int>(rng() % 4);
    for (int i = 0; i < k; ++i) elems.push_back(static_cast<int>(rng() % g.order()));
    const ConnectionSet s(g, elems);
    const std::uint64_t a = rng() & VertexSet::full(g.order()).bits;
    REQUIRE(edge_boundary(g, s, VertexSet{a, g.order()}) == oracle::naive_boundary(g, s, a));
  }
}

TEST_CASE("boundary of S u -S equals the undirected cut") {
  for (auto& [g, s] : small_instances()) {
    std::vector<int> sym = s.elements();
    for (int e : s.elements()) sym.push_back(g.negate(e));
    const ConnectionSet t(g, sym);
    const CayleyDigraph d(g, t);
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << g.order()); ++a)
      REQUIRE(d.boundary(a) == oracle::undirected_cut(g, t.elements(), a));
  }
}

TEST_CASE("boundary_generic") {
  const GenericDigraph hex{6, {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0},
                               {1, 0}, {2, 1}, {3, 2}, {4, 3}, {5, 4}, {0, 5}}};
  CHECK(boundary_generic(hex, VertexSet::of(6, {2, 3})) == 2);
  CHECK(boundary_generic(hex, VertexSet::of(6, {4})) == 2);
  CHECK(boundary_generic(hex, VertexSet{0, 6}) == 0);
  const GenericDigraph doubled{2, {{0, 1}, {0, 1}}};
  CHECK(boundary_generic(doubled, VertexSet::of(2, {0})) == 2);
  CHECK_THROWS_AS(boundary_generic(hex, VertexSet::of(5, {0})), std::invalid_argument);
}

TEST_CASE("hex string of a vertex set") {
  CHECK(to_hex(VertexSet::of(8, {0, 1, 2, 3})) == "0xf");
  CHECK(to_hex(VertexSet{0, 8}) == "0x0");
}

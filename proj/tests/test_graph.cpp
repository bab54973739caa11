#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "ffembed/graph.hpp"

using namespace ffembed;

namespace {

Scalar t1() { return Field::make(5)->one(); }

// Test-only isomorphism check: degree-pruned backtracking over vertex maps,
// comparing adjacency with edge-length encodings. Fine for n <= 12.
bool isomorphic(const DistanceGraph& a, const DistanceGraph& b) {
  if (a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count()) return false;
  unsigned n = a.vertex_count();
  auto matrix = [n](const DistanceGraph& g) {
    std::vector<std::uint64_t> m(n * n, 0);
    for (const auto& e : g.edges()) {
      m[e.u * n + e.v] = e.length.encoding() + 1;
      m[e.v * n + e.u] = e.length.encoding() + 1;
    }
    return m;
  };
  auto ma = matrix(a), mb = matrix(b);
  std::vector<std::uint32_t> da(n), db(n);
  for (unsigned v = 0; v < n; ++v) {
    da[v] = a.degree(v);
    db[v] = b.degree(v);
  }
  {
    auto sa = da, sb = db;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    if (sa != sb) return false;
  }
  std::vector<int> map(n, -1);
  std::vector<char> used(n, 0);
  std::function<bool(unsigned)> rec = [&](unsigned v) -> bool {
    if (v == n) return true;
    for (unsigned w = 0; w < n; ++w) {
      if (used[w] || da[v] != db[w]) continue;
      bool ok = true;
      for (unsigned u = 0; u < v; ++u)
        if (ma[v * n + u] != mb[w * n + map[u]]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      map[v] = static_cast<int>(w);
      used[w] = 1;
      if (rec(v + 1)) return true;
      used[w] = 0;
      map[v] = -1;
    }
    return false;
  };
  return rec(0);
}

DistanceGraph cycle(unsigned n, const Scalar& t) {
  std::vector<GraphEdge> edges;
  for (unsigned i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, t});
  edges.push_back({0, n - 1, t});
  return DistanceGraph(n, std::move(edges));
}

}  // namespace

TEST_CASE("star, chain, simplex shapes") {
  Scalar t = t1();
  DistanceGraph s = star(6, t);
  CHECK(s.vertex_count() == 7);
  CHECK(s.edge_count() == 6);
  CHECK(s.max_degree() == 6);
  CHECK(s.base_vertex().value() == 0);
  CHECK(star(1, t).edge_count() == 1);
  CHECK_THROWS_AS(star(0, t), Error);

  DistanceGraph c = chain(3, t);
  CHECK(c.vertex_count() == 4);
  CHECK(c.edge_count() == 3);
  CHECK(c.max_degree() == 2);
  CHECK(chain(1, t).edge_count() == 1);
  CHECK(chain(2, t).vertex_count() == 3);
  CHECK_THROWS_AS(chain(0, t), Error);

  DistanceGraph sx = simplex(3, t);
  CHECK(sx.vertex_count() == 4);
  CHECK(sx.edge_count() == 6);
  CHECK(sx.max_degree() == 3);
  CHECK(simplex(1, t).edge_count() == 1);
  CHECK(simplex(2, t).edge_count() == 3);
  CHECK_THROWS_AS(simplex(0, t), Error);
  CHECK_THROWS_AS(star(2, Field::make(5)->zero()), Error);
}

TEST_CASE("chains of simplices have mk+1 vertices and km(m+1)/2 edges") {
  Scalar t = t1();
  DistanceGraph g = chain_of_simplices(4, 2, t);
  CHECK(g.vertex_count() == 9);
  CHECK(g.edge_count() == 12);
  CHECK(g.base_vertex().value() == 0);
  CHECK(isomorphic(chain_of_simplices(1, 2, t), simplex(2, t)));
  DistanceGraph g33 = chain_of_simplices(3, 3, t);
  CHECK(g33.vertex_count() == 10);
  CHECK(g33.edge_count() == 18);
  for (unsigned k = 1; k <= 8; ++k)
    for (unsigned m = 2; m <= 8; ++m) {
      DistanceGraph x = chain_of_simplices(k, m, t);
      CHECK(x.vertex_count() == m * k + 1);
      CHECK(x.edge_count() == std::size_t(k) * m * (m + 1) / 2);
      CHECK(x.is_connected());
    }
  CHECK_THROWS_AS(chain_of_simplices(0, 2, t), Error);
  CHECK_THROWS_AS(chain_of_simplices(2, 1, t), Error);
}

TEST_CASE("trees of simplices") {
  Scalar t = t1();
  // path skeleton coincides with the chain of simplices
  std::vector<std::pair<std::uint32_t, std::uint32_t>> path = {{0, 1}, {1, 2}, {2, 3}};
  CHECK(isomorphic(tree_of_simplices(path, 2, t), chain_of_simplices(3, 2, t)));
  CHECK(isomorphic(tree_of_simplices(path, 3, t), chain_of_simplices(3, 3, t)));
  // star skeleton, l = 3, m = 2: 7 vertices, 9 edges
  std::vector<std::pair<std::uint32_t, std::uint32_t>> star3 = {{0, 1}, {0, 2}, {0, 3}};
  DistanceGraph g = tree_of_simplices(star3, 2, t);
  CHECK(g.vertex_count() == 7);
  CHECK(g.edge_count() == 9);
  CHECK(g.is_connected());
  // cycles are rejected
  std::vector<std::pair<std::uint32_t, std::uint32_t>> cyc = {{0, 1}, {1, 2}, {2, 0}};
  CHECK_THROWS_AS(tree_of_simplices(cyc, 2, t), Error);
  CHECK_THROWS_AS(tree_of_simplices({}, 2, t), Error);
  CHECK_THROWS_AS(tree_of_simplices(path, 1, t), Error);
}

TEST_CASE("Holder extension wiring") {
  Scalar t = t1();
  // 3-chain with its two middle vertices duplicated threefold: 8 vertices, 9 edges
  DistanceGraph g = holder_extension({chain(3, t), {1, 2}, 3});
  CHECK(g.vertex_count() == 8);
  CHECK(g.edge_count() == 9);
  CHECK(g.is_connected());
  // star(2) with one leaf duplicated twice is a 3-star
  DistanceGraph s = holder_extension({star(2, t), {2}, 2});
  CHECK(s.vertex_count() == 4);
  CHECK(s.edge_count() == 3);
  CHECK(isomorphic(s, star(3, t)));
  // duplicating everything gives disjoint copies
  DistanceGraph d = holder_extension({chain(2, t), {0, 1, 2}, 2});
  CHECK(d.vertex_count() == 6);
  CHECK(d.edge_count() == 4);
  CHECK(!d.is_connected());
  // vertex count law |V| + (k-1)|S|
  for (unsigned k = 2; k <= 4; ++k) {
    DistanceGraph e = holder_extension({simplex(3, t), {0, 2}, k});
    CHECK(e.vertex_count() == 4 + (k - 1) * 2);
  }
  CHECK_THROWS_AS(holder_extension({chain(2, t), {}, 2}), Error);
  CHECK_THROWS_AS(holder_extension({chain(2, t), {1}, 1}), Error);
  CHECK_THROWS_AS(holder_extension({chain(2, t), {7}, 2}), Error);
}

TEST_CASE("Holder chains") {
  Scalar t = t1();
  DistanceGraph g = holder_chain(3, 3, t);
  CHECK(g.vertex_count() == 8);
  CHECK(g.edge_count() == 9);
  for (unsigned k = 3; k <= 6; ++k)
    for (unsigned m = 2; m <= 5; ++m) {
      DistanceGraph x = holder_chain(k, m, t);
      CHECK(x.vertex_count() == k * (m - 1) + 2);
      CHECK(x.edge_count() == std::size_t(k) * m);
    }
  CHECK_THROWS_AS(holder_chain(2, 2, t), Error);
  CHECK(isomorphic(holder_chain(2, 2, t, true), cycle(4, t)));
  CHECK_THROWS_AS(holder_chain(1, 2, t, true), Error);
  CHECK_THROWS_AS(holder_chain(3, 1, t), Error);
}

TEST_CASE("extension of a chain over its interior matches the Holder chain") {
  Scalar t = t1();
  for (auto [k, m] : std::vector<std::pair<unsigned, unsigned>>{{3, 2}, {3, 3}, {4, 2}}) {
    std::vector<std::uint32_t> interior;
    for (std::uint32_t v = 1; v < m; ++v) interior.push_back(v);
    DistanceGraph via_ext = holder_extension({chain(m, t), interior, k});
    CHECK(isomorphic(via_ext, holder_chain(k, m, t)));
  }
  // k = 2 over the interior gives the 2m-cycle
  for (unsigned m : {2u, 3u, 4u}) {
    std::vector<std::uint32_t> interior;
    for (std::uint32_t v = 1; v < m; ++v) interior.push_back(v);
    DistanceGraph two = holder_extension({chain(m, t), interior, 2});
    CHECK(isomorphic(two, cycle(2 * m, t)));
  }
}

TEST_CASE("construction validation") {
  Scalar t = t1();
  CHECK_THROWS_AS(DistanceGraph(2, {{0, 0, t}}), Error);              // self loop
  CHECK_THROWS_AS(DistanceGraph(2, {{0, 1, t}, {1, 0, t}}), Error);   // duplicate
  CHECK_THROWS_AS(DistanceGraph(2, {{0, 3, t}}), Error);              // out of range
  CHECK_THROWS_AS(DistanceGraph(2, {{0, 1, Field::make(5)->zero()}}), Error);
  DistanceGraph mixed_ok(3, {{0, 1, t}, {1, 2, Field::make(5)->element(2)}});
  CHECK(mixed_ok.edge_count() == 2);
  CHECK_THROWS_AS(DistanceGraph(3, {{0, 1, t}, {1, 2, Field::make(3)->one()}}), Error);
}

TEST_CASE("remove_vertices renumbers and drops the base when removed") {
  Scalar t = t1();
  DistanceGraph c = chain(2, t);  // 0-1-2, base 0
  DistanceGraph r = c.remove_vertices({1});
  CHECK(r.vertex_count() == 2);
  CHECK(r.edge_count() == 0);
  CHECK(r.base_vertex().value() == 0);
  DistanceGraph r2 = c.remove_vertices({0});
  CHECK(!r2.base_vertex());
  CHECK(r2.edge_count() == 1);
}

TEST_CASE("graph text round-trip") {
  auto f = Field::make(5);
  Scalar t = f->one();
  DistanceGraph g = chain_of_simplices(2, 2, t);
  std::ostringstream os;
  write_graph(os, g);
  std::istringstream is(os.str());
  DistanceGraph back = read_graph(is, f);
  CHECK(back.vertex_count() == g.vertex_count());
  CHECK(back.edge_count() == g.edge_count());
  CHECK(back.base_vertex() == g.base_vertex());
  std::ostringstream os2;
  write_graph(os2, back);
  CHECK(os2.str() == os.str());
  // no base vertex serializes as -1
  DistanceGraph nb(2, {{0, 1, t}});
  std::ostringstream os3;
  write_graph(os3, nb);
  CHECK(os3.str().substr(0, 4) == "2 -1");
}

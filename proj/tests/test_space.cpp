#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <sstream>

#include "ffembed/rng.hpp"
#include "ffembed/space.hpp"

using namespace ffembed;

namespace {

Point pt(const Space& sp, std::vector<std::uint64_t> c) { return Point(sp, std::move(c)); }

// Independent oracle: distance of coordinate tuples over a prime field,
// using plain integer arithmetic only.
std::uint64_t oracle_dist_prime(const std::vector<std::uint64_t>& a,
                                const std::vector<std::uint64_t>& b, std::uint64_t p) {
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::uint64_t d = (a[i] + p - b[i]) % p;
    acc = (acc + d * d) % p;
  }
  return acc;
}

std::vector<std::vector<std::uint64_t>> all_tuples(std::uint64_t q, unsigned d) {
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> cur(d, 0);
  while (true) {
    out.push_back(cur);
    unsigned i = d;
    while (i > 0 && cur[i - 1] + 1 == q) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (unsigned j = i; j < d; ++j) cur[j] = 0;
  }
  return out;
}

}  // namespace

TEST_CASE("norm examples") {
  auto f5 = Field::make(5);
  Space sp5(f5, 2);
  CHECK(norm(pt(sp5, {0, 0})).encoding() == 0);
  CHECK(norm(pt(sp5, {1, 2})).encoding() == 0);  // 1 + 4 = 5
  auto f7 = Field::make(7);
  Space sp7(f7, 3);
  CHECK(norm(pt(sp7, {1, 1, 1})).encoding() == 3);
}

TEST_CASE("dist is symmetric, zero on equal points, and space-checked") {
  auto f3 = Field::make(3);
  Space sp(f3, 2);
  Point a = pt(sp, {0, 0}), b = pt(sp, {1, 0});
  CHECK(dist(a, a).encoding() == 0);
  CHECK(dist(a, b).encoding() == 1);
  CHECK(dist(a, b) == dist(b, a));
  auto f5 = Field::make(5);
  Space other(f5, 2);
  CHECK_THROWS_AS(dist(a, pt(other, {0, 0})), Error);
}

TEST_CASE("distance_set against a brute-force oracle") {
  auto f3 = Field::make(3);
  Space sp(f3, 2);
  PointSet E = PointSet::full_space(sp);
  // oracle over integer tuples
  std::set<std::uint64_t> expect;
  auto tuples = all_tuples(3, 2);
  for (const auto& a : tuples)
    for (const auto& b : tuples) expect.insert(oracle_dist_prime(a, b, 3));
  auto ds = distance_set(E);
  REQUIRE(ds.size() == expect.size());
  CHECK(expect == std::set<std::uint64_t>{0, 1, 2});
  // singleton
  PointSet single(sp, {0});
  auto ds1 = distance_set(single);
  REQUIRE(ds1.size() == 1);
  CHECK(ds1[0].is_zero());
  CHECK_THROWS_AS(distance_set(PointSet(sp, {})), Error);
}

TEST_CASE("isotropic line has null distance set") {
  for (std::uint64_t q : {5ull, 13ull}) {
    auto f = Field::make(q);
    PointSet iso = isotropic_line(f);
    CHECK(iso.size() == q);
    auto ds = distance_set(iso);
    REQUIRE(ds.size() == 1);
    CHECK(ds[0].is_zero());
  }
  CHECK_THROWS_AS(isotropic_line(Field::make(7)), Error);
  // F_5: i = 2, points (t, 2t)
  auto f5 = Field::make(5);
  PointSet iso = isotropic_line(f5);
  Space sp(f5, 2);
  CHECK(iso.contains(pt(sp, {1, 2})));
  CHECK(iso.contains(pt(sp, {3, 1})));  // 2*3 = 6 = 1
}

TEST_CASE("pair_count and edge_degree against a pair-loop oracle") {
  auto f3 = Field::make(3);
  Space sp(f3, 2);
  PointSet E = PointSet::full_space(sp);
  Scalar one = f3->one();
  // oracle: count ordered pairs over integer tuples
  auto tuples = all_tuples(3, 2);
  std::uint64_t expect = 0;
  for (const auto& a : tuples)
    for (const auto& b : tuples)
      if (oracle_dist_prime(a, b, 3) == 1) ++expect;
  CHECK(expect == 36);
  CHECK(pair_count(E, one) == 36);
  // per-point degree is 4 everywhere, even for x outside E
  for (std::size_t i = 0; i < E.size(); ++i) CHECK(edge_degree(E, one, E.at(i)) == 4);
  // sum identity
  std::uint64_t sum = 0;
  for (auto d : all_edge_degrees(E, one)) sum += d;
  CHECK(sum == pair_count(E, one));
  // empty and singleton sets
  PointSet single(sp, {4});
  CHECK(pair_count(single, one) == 0);
  CHECK(edge_degree(PointSet(sp, {}), one, single.at(0)) == 0);
  CHECK_THROWS_AS(pair_count(E, f3->zero()), Error);
}

TEST_CASE("isotropic line sees no nonzero distance") {
  auto f5 = Field::make(5);
  PointSet iso = isotropic_line(f5);
  CHECK(pair_count(iso, f5->one()) == 0);
}

TEST_CASE("spheres by enumeration") {
  auto f3 = Field::make(3);
  const PointSet& s1 = sphere(f3, 2, f3->one());
  REQUIRE(s1.size() == 4);
  Space sp(f3, 2);
  for (auto c : {std::vector<std::uint64_t>{0, 1}, {0, 2}, {1, 0}, {2, 0}})
    CHECK(s1.contains(pt(sp, c)));
  auto f5 = Field::make(5);
  CHECK(sphere(f5, 2, f5->zero()).size() == 9);  // isotropic cone
  CHECK(sphere(f3, 1, f3->element(2)).empty());  // 2 is not a square mod 3
}

TEST_CASE("sphere sizes partition the space") {
  for (auto [q, d] : std::vector<std::pair<std::uint64_t, unsigned>>{
           {3, 2}, {5, 2}, {7, 2}, {9, 2}, {3, 3}, {5, 3}}) {
    auto f = Field::make(q);
    std::uint64_t total = 0;
    for (std::uint64_t t = 0; t < q; ++t) total += sphere(f, d, f->element(t)).size();
    std::uint64_t vol = 1;
    for (unsigned i = 0; i < d; ++i) vol *= q;
    CHECK(total == vol);
  }
}

TEST_CASE("pair_count is translation invariant") {
  auto f5 = Field::make(5);
  Space sp(f5, 2);
  for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
    PointSet E = random_subset(sp, Rational(1, 2), seed);
    Scalar t = f5->element(1 + seed % 4);
    Point v = pt(sp, {seed % 5, (seed * 3) % 5});
    CHECK(pair_count(E, t) == pair_count(E.translate(v), t));
  }
}

TEST_CASE("unconditional pair-count error bound on random sets") {
  // |pair_count - |E|^2/q| <= 2 q^((d-1)/2) |E|, squared to stay in integers
  std::uint64_t seed = 0;
  for (std::uint64_t q : {3ull, 5ull, 7ull, 9ull, 11ull}) {
    auto f = Field::make(q);
    for (unsigned d : {2u, 3u}) {
      Space sp(f, d);
      for (int rep = 0; rep < 4; ++rep) {
        PointSet E = random_subset(sp, Rational(1 + rep, 4), ++seed);
        SeededRng rng(seed * 7 + 1);
        Scalar t = f->element(1 + rng.bounded(q - 1));
        BigInt pc = pair_count(E, t);
        BigInt n = E.size();
        BigInt lhs = pc * q - n * n;  // q * (pc - n^2/q)
        BigInt rhs_sq = BigInt(4) * boost::multiprecision::pow(BigInt(q), d + 1) * n * n;
        CHECK(lhs * lhs <= rhs_sq);
      }
    }
  }
}

TEST_CASE("point-set text round-trip, including extension fields") {
  for (std::uint64_t q : {7ull, 9ull}) {
    auto f = Field::make(q);
    Space sp(f, 2);
    PointSet E = random_subset(sp, Rational(1, 3), 42);
    std::ostringstream os;
    write_point_set(os, E, {"generated for round-trip"});
    std::istringstream is(os.str());
    PointSet back = read_point_set(is);
    CHECK(back.codes() == E.codes());
    CHECK(back.space().q() == q);
    std::ostringstream os2;
    write_point_set(os2, back);
    std::ostringstream os3;
    write_point_set(os3, E);
    CHECK(os2.str() == os3.str());
  }
}

TEST_CASE("point-set reader rejects malformed input") {
  auto parse = [](const std::string& s) {
    std::istringstream is(s);
    return read_point_set(is);
  };
  CHECK_THROWS_AS(parse(""), Error);
  CHECK_THROWS_AS(parse("3\n"), Error);
  CHECK_THROWS_AS(parse("3 2\n0\n"), Error);       // too few coordinates
  CHECK_THROWS_AS(parse("3 2\n0 1 2\n"), Error);   // too many
  CHECK_THROWS_AS(parse("3 2\n0 5\n"), Error);     // out of range
  PointSet ok = parse("3 2\n# comment\n2 1\n0 0\n");
  CHECK(ok.size() == 2);
  CHECK(ok.code_at(0) == 0);  // canonical order restored
}

TEST_CASE("membership works beyond the bitset regime") {
  auto f = Field::make(1048573);
  Space sp(f, 2);  // volume ~2^40: sorted-list membership
  PointSet E(sp, {0, 1, 12345678901ull});
  CHECK(E.contains_code(12345678901ull));
  CHECK(!E.contains_code(2));
  CHECK(E.index_of_code(1).value() == 1);
}

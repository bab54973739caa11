#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "ffembed/refine.hpp"
#include "ffembed/rng.hpp"

using namespace ffembed;

namespace {

PointSet full_plane(std::uint64_t q) {
  return PointSet::full_space(Space(Field::make(q), 2));
}

bool subset_of(const PointSet& a, const PointSet& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!b.contains_code(a.code_at(i))) return false;
  return true;
}

}  // namespace

TEST_CASE("degree cap keeps exactly the points under the cap") {
  auto f = Field::make(3);
  Scalar t = f->one();
  PointSet E = full_plane(3);
  // all degrees are 4 <= 4 * 9 / 3 = 12
  ShaveResult r = degree_cap_set(E, {t}, Rational(4));
  CHECK(r.subset.size() == E.size());
  CHECK(r.removed == 0);
  CHECK(*r.achieved_max == 4);
  // huge cap keeps everything, vanishing cap keeps only isolated points
  CHECK(degree_cap_set(E, {t}, Rational(1000)).subset.size() == 9);
  CHECK(degree_cap_set(E, {t}, Rational(1, 100)).subset.empty());
  // per-point recheck against edge_degree
  auto f7 = Field::make(7);
  Space sp7(f7, 2);
  PointSet E7 = random_subset(sp7, Rational(1, 2), 3);
  Rational lambda(3, 2);
  ShaveResult r7 = degree_cap_set(E7, {f7->one(), f7->element(2)}, lambda);
  Rational cap = lambda * Rational(E7.size()) / 7;
  for (std::size_t i = 0; i < r7.subset.size(); ++i) {
    Point x = r7.subset.at(i);
    CHECK(Rational(edge_degree(E7, f7->one(), x)) <= cap);
    CHECK(Rational(edge_degree(E7, f7->element(2), x)) <= cap);
  }
  // every removed point violates some cap
  for (std::size_t i = 0; i < E7.size(); ++i) {
    if (r7.subset.contains_code(E7.code_at(i))) continue;
    Point x = E7.at(i);
    bool over = Rational(edge_degree(E7, f7->one(), x)) > cap ||
                Rational(edge_degree(E7, f7->element(2), x)) > cap;
    CHECK(over);
  }
  CHECK_THROWS_AS(degree_cap_set(E, {}, Rational(1)), Error);
  CHECK_THROWS_AS(degree_cap_set(E, {f->zero()}, Rational(1)), Error);
  CHECK_THROWS_AS(degree_cap_set(E, {t}, Rational(0)), Error);
}

TEST_CASE("degree cap size bound fires and holds in the large-set regime") {
  auto f = Field::make(101);
  Space sp(f, 2);
  Scalar t1 = f->one(), t2 = f->element(2);
  // |E| >= 2 q^(3/2) needs |E| >= 2031 of 10201
  for (auto density : {Rational(1), Rational(3, 4), Rational(1, 2)}) {
    PointSet E = random_subset(sp, density, 17);
    Rational lambda(6);
    ShaveResult r = degree_cap_set(E, {t1, t2}, lambda);
    CHECK(r.hypothesis_met);
    CHECK(r.size_bound_asserted);
    CHECK(Rational(r.subset.size()) >= r.size_bound);
    CHECK(Rational(r.removed) <= Rational(2 * 2) * Rational(E.size()) / lambda);
  }
  // below the regime the bound is not asserted
  PointSet small = random_subset(Space(Field::make(7), 2), Rational(1, 2), 1);
  ShaveResult rs = degree_cap_set(small, {Field::make(7)->one()}, Rational(6));
  CHECK(!rs.hypothesis_met);
  CHECK(!rs.size_bound_asserted);
}

TEST_CASE("one-edge shaving asserts its bounds on dense random q=101 sets") {
  auto f = Field::make(101);
  Space sp(f, 2);
  Scalar t = f->one();
  for (std::uint64_t seed : {2ull, 5ull}) {
    PointSet E = random_subset(sp, Rational(3, 5), seed);  // 6121 >= C q^(3/2), C > 4
    // lambda must exceed 2C/(C-4) = 10 for C = 5
    ShaveResult r = shave_one_edge(E, t, Rational(12), Rational(25));
    CHECK(r.hypothesis_met);
    CHECK(r.size_bound_asserted);
    CHECK(Rational(r.subset.size()) >= r.size_bound);
    CHECK(Rational(*r.achieved_min) >= *r.cap_lo);
    CHECK(Rational(*r.achieved_max) <= *r.cap_hi);
  }
}

TEST_CASE("degree cap is monotone in lambda") {
  auto f = Field::make(7);
  Space sp(f, 2);
  PointSet E = random_subset(sp, Rational(2, 3), 8);
  Scalar t = f->one();
  ShaveResult lo = degree_cap_set(E, {t}, Rational(1, 2));
  ShaveResult hi = degree_cap_set(E, {t}, Rational(3, 2));
  CHECK(subset_of(lo.subset, hi.subset));
}

TEST_CASE("one-edge shaving on a uniform-degree set keeps everything") {
  auto f = Field::make(13);
  Scalar t = f->one();
  PointSet E = full_plane(13);
  ShaveResult r = shave_one_edge(E, t, Rational(2));
  CHECK(r.subset.size() == E.size());
  CHECK(*r.achieved_min == *r.achieved_max);  // uniform degree = sphere size
  CHECK(!r.hypothesis_met);  // no C supplied
  // C cannot reach 4 at q = 13 with |E| = 169, so the hypothesis fails but
  // the construction is still returned
  ShaveResult r2 = shave_one_edge(E, t, Rational(8), Rational(13));
  CHECK(!r2.hypothesis_met);
  CHECK(!r2.size_bound_asserted);
  CHECK(r2.subset.size() == E.size());
}

TEST_CASE("one-edge shaving certifies the full-plane q=101 instance") {
  auto f = Field::make(101);
  Scalar t = f->one();
  PointSet E = full_plane(101);
  ShaveResult r = shave_one_edge(E, t, Rational(8), Rational(101));  // C = sqrt(101)
  CHECK(r.hypothesis_met);
  CHECK(r.size_bound_asserted);
  // (1 - 2/8) / 16 * 10201
  CHECK(r.size_bound == Rational(3, 64) * Rational(10201));
  CHECK(Rational(r.subset.size()) >= r.size_bound);
  CHECK(Rational(*r.achieved_min) >= *r.cap_lo);
  CHECK(Rational(*r.achieved_max) <= *r.cap_hi);
}

TEST_CASE("one-edge shaving drops high-degree outliers") {
  // 12 points on the unit circle around 0 plus the heavy center pattern:
  // a small asymmetric set where caps actually bite
  auto f = Field::make(11);
  Space sp(f, 2);
  Scalar t = f->one();
  const PointSet& s = sphere(f, 2, t);
  std::vector<std::uint64_t> codes(s.codes());
  codes.push_back(Space(f, 2).encode(std::vector<std::uint64_t>{0, 0}));
  PointSet E(sp, std::move(codes));
  // center has degree |S| = 12; circle points mostly see the center only
  Rational lambda(2);
  ShaveResult r = shave_one_edge(E, t, lambda);
  Rational cap = lambda * Rational(E.size()) / 11;  // ~2.36
  for (std::size_t i = 0; i < r.subset.size(); ++i)
    CHECK(Rational(edge_degree(E, t, r.subset.at(i))) <= cap);
}

TEST_CASE("general shaving against the base-profile oracle") {
  auto f = Field::make(5);
  Scalar t = f->one();
  PointSet E = full_plane(5);
  DistanceGraph triangle = simplex(2, t);  // base 0, n = 3, 3 edges
  Rational l1(1, 16), l2(8);
  ShaveResult r = general_shave(E, triangle, l1, l2, false, Rational(0));
  CHECK(!r.hypothesis_met);
  BaseProfile prof = base_profile(triangle, E);
  Rational scale = Rational(E.size()) * Rational(E.size()) / Rational(125);  // |E|^2 / q^3
  for (std::size_t i = 0; i < r.subset.size(); ++i) {
    auto idx = E.index_of_code(r.subset.code_at(i));
    Rational fx(prof.at_index(*idx));
    CHECK(fx >= l1 * scale);
    CHECK(fx <= l2 * scale);
  }
  // no point above the cap survives
  for (std::size_t i = 0; i < E.size(); ++i) {
    if (Rational(prof.at_index(i)) > l2 * scale) CHECK(!r.subset.contains_code(E.code_at(i)));
  }
  CHECK_THROWS_AS(general_shave(E, triangle, Rational(1, 4), l2, false, Rational(0)), Error);
  CHECK_THROWS_AS(general_shave(E, triangle, l1, Rational(3), false, Rational(0)), Error);
  CHECK_THROWS_AS(general_shave(E, DistanceGraph(2, {{0, 1, t}}), l1, l2, false, Rational(0)),
                  Error);
}

TEST_CASE("general shaving on a single edge reduces to one-edge shaving") {
  auto f = Field::make(7);
  Space sp(f, 2);
  Scalar t = f->one();
  for (std::uint64_t seed : {1ull, 4ull}) {
    PointSet E = random_subset(sp, Rational(2, 3), seed);
    Rational lambda(4);
    ShaveResult general = general_shave(E, chain(1, t), Rational(1, 8), lambda, false, Rational(0));
    ShaveResult one = shave_one_edge(E, t, lambda);
    CHECK(general.subset.codes() == one.subset.codes());
  }
}

TEST_CASE("general shaving asserts the size bound on the q=101 plane") {
  auto f = Field::make(101);
  Scalar t = f->one();
  PointSet E = full_plane(101);
  // one-edge sandwich provably holds above 4 q^(3/2); 4061 is a rational
  // over-approximation and |E| = 10201 > 2 * 4061
  ShaveResult r = general_shave(E, chain(1, t), Rational(1, 8), Rational(4), true, Rational(4061));
  CHECK(r.hypothesis_met);
  CHECK(r.size_bound_asserted);
  CHECK(Rational(r.subset.size()) >= r.size_bound);
}

TEST_CASE("nondegeneracy prep sets") {
  auto f = Field::make(3);
  Scalar t = f->one();
  PointSet E = full_plane(3);
  NondegPrepSets prep = nondeg_prep_sets(E, 2, t, Rational(1000));
  CHECK(prep.core.size() == E.size());  // slack caps keep everything
  CHECK(prep.removed == 0);
  CHECK(prep.removed_bound == Rational(4 * 9, 1000));
  CHECK(!prep.hypothesis_met);  // 12 * 9 * 3^2.5 far exceeds 9
  // tight caps remove high-profile points; core is the intersection
  NondegPrepSets tight = nondeg_prep_sets(E, 2, t, Rational(1, 10));
  CHECK(subset_of(tight.core, tight.simplex_capped.subset));
  CHECK(subset_of(tight.core, tight.facet_capped.subset));
  // empty set
  PointSet empty(E.space(), {});
  NondegPrepSets none = nondeg_prep_sets(empty, 2, t, Rational(8));
  CHECK(none.core.empty());
  CHECK_THROWS_AS(nondeg_prep_sets(E, 1, t, Rational(8)), Error);
}

TEST_CASE("degenerate embedding bound formula") {
  // 8^2 * 25^4 / 5^(6-2)
  CHECK(degenerate_embedding_bound(25, 5, 2, 2, Rational(8)) == Rational(40000));
  CHECK(degenerate_embedding_bound(9, 3, 2, 1, Rational(2)) ==
        Rational(2 * 81, 3));  // lambda' |E|^2 / q^(3-2)
  CHECK_THROWS_AS(degenerate_embedding_bound(9, 3, 1, 1, Rational(2)), Error);
}

TEST_CASE("shave result serialization carries the metadata header") {
  auto f = Field::make(5);
  Scalar t = f->one();
  PointSet E = full_plane(5);
  ShaveResult r = shave_one_edge(E, t, Rational(2));
  std::ostringstream os;
  write_shave_result(os, r);
  std::string text = os.str();
  CHECK(text.find("# lambda = 2") != std::string::npos);
  CHECK(text.find("# lengths = 1") != std::string::npos);
  CHECK(text.find("# removed = ") != std::string::npos);
  CHECK(text.find("# cap_hi = ") != std::string::npos);
  CHECK(text.find("# hypothesis_met = ") != std::string::npos);
  // still a loadable point set
  std::istringstream is(text);
  PointSet back = read_point_set(is);
  CHECK(back.codes() == r.subset.codes());
}

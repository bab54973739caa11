#include "ffembed/audit.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

namespace ffembed {

namespace mp = boost::multiprecision;

namespace {

struct IdName {
  TheoremId id;
  const char* name;
};

constexpr IdName kIdNames[] = {
    {TheoremId::IR_PAIR_COUNT, "IR_PAIR_COUNT"},
    {TheoremId::TREE_EMBED, "TREE_EMBED"},
    {TheoremId::IP_THRESHOLD, "IP_THRESHOLD"},
    {TheoremId::HOLDER_LEMMA, "HOLDER_LEMMA"},
    {TheoremId::HOLDER_COR, "HOLDER_COR"},
    {TheoremId::DEGEN_GENERAL, "DEGEN_GENERAL"},
    {TheoremId::SHAVE_ONE_EDGE, "SHAVE_ONE_EDGE"},
    {TheoremId::SHAVE_GENERAL, "SHAVE_GENERAL"},
    {TheoremId::HCHAIN_TOTAL, "HCHAIN_TOTAL"},
    {TheoremId::HCHAIN_NONDEG_A, "HCHAIN_NONDEG_A"},
    {TheoremId::HCHAIN_NONDEG_B, "HCHAIN_NONDEG_B"},
    {TheoremId::HCHAIN_SUMMARY, "HCHAIN_SUMMARY"},
    {TheoremId::SIMPLEX_T1, "SIMPLEX_T1"},
    {TheoremId::SCHAIN_TOTAL, "SCHAIN_TOTAL"},
    {TheoremId::SCHAIN_NONDEG, "SCHAIN_NONDEG"},
    {TheoremId::STREE_PROP, "STREE_PROP"},
    {TheoremId::STREE_TOTAL, "STREE_TOTAL"},
    {TheoremId::STREE_NONDEG, "STREE_NONDEG"},
};

}  // namespace

const char* theorem_id_name(TheoremId id) {
  for (const auto& e : kIdNames)
    if (e.id == id) return e.name;
  return "UNKNOWN";
}

std::optional<TheoremId> theorem_id_from_name(const std::string& name) {
  for (const auto& e : kIdNames)
    if (name == e.name) return e.id;
  return std::nullopt;
}

std::vector<TheoremId> all_theorem_ids() {
  std::vector<TheoremId> out;
  for (const auto& e : kIdNames) out.push_back(e.id);
  return out;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::HOLDS: return "HOLDS";
    case Verdict::VIOLATED: return "VIOLATED";
    case Verdict::VACUOUS: return "VACUOUS";
  }
  return "UNKNOWN";
}

BigInt eta(unsigned m, unsigned ell) {
  if (m < 2 || ell < 1) fail(Errc::bad_params, "eta requires m >= 2 and l >= 1");
  Rational v = Rational(ell - 1) * Rational(m + 5) * (Rational(std::uint64_t(ell) * m, 2) + 1) -
               Rational(m + 2) * Rational(ell);
  if (mp::denominator(v) != 1) fail(Errc::bad_params, "eta evaluated to a non-integer");
  return mp::numerator(v);
}

PowThreshold ip_threshold(const DistanceGraph& g, std::uint64_t q, unsigned d) {
  if (!g.is_connected()) fail(Errc::disconnected, "threshold requires a connected graph");
  std::uint64_t n = g.vertex_count();
  std::uint64_t s = g.max_degree();
  return PowThreshold{Rational(12) * n * n, q, Rational(d - 1, 2) + Rational(s)};
}

RegimeChoice regime_summary(unsigned k, unsigned d, unsigned m, std::uint64_t q) {
  if (k < 3 || m < 2 || d < 2) fail(Errc::bad_params, "regime summary requires k >= 3, m >= 2, d >= 2");
  RegimeChoice out;
  out.exceptional = (k == 3) || (k == 4 && d == 2 && m == 3) || (k == 4 && d == 2 && m == 4) ||
                    (k == 5 && d == 2 && m == 3);
  if (Rational(k) < Rational(d + 1, 2)) {
    out.regime = 1;
    out.lnq_power = 1;
    out.q_exponent = Rational(d + 1, 2);
    out.description = "|E| >= (ln q) q^((d+1)/2)";
  } else if (k + 2 <= d) {
    out.regime = 2;
    out.lnq_power = 1;
    out.q_exponent = Rational(k);
    out.description = "|E| >= (ln q) q^k";
  } else {
    out.regime = 3;
    out.lnq_power = m - 2;
    out.q_exponent = Rational(std::uint64_t(d) * (k - 2) + 1, k - 1);
    out.description = "|E| >= (ln q)^(m-2) q^((d(k-2)+1)/(k-1))";
  }
  (void)q;
  return out;
}

namespace {

// ---- interval helpers ------------------------------------------------------

RatInterval pow_int_of_interval(const RatInterval& base, long long e) {
  if (e >= 0) return base.pow_u(static_cast<unsigned>(e));
  RatInterval p = base.pow_u(static_cast<unsigned>(-e));
  return RatInterval(Rational(1)) / p;
}

// base > 0 interval raised to a rational exponent.
RatInterval pow_rat_of_interval(const RatInterval& base, const Rational& e, unsigned bits) {
  if (base.lo <= 0) fail(Errc::bad_params, "interval power of non-positive base");
  BigInt num = mp::numerator(e), den = mp::denominator(e);
  if (mp::abs(num) > 1000000 || den > 1000000) fail(Errc::unsupported, "exponent too large");
  unsigned a = mp::abs(num).convert_to<unsigned>();
  unsigned b = den.convert_to<unsigned>();
  RatInterval z = base.pow_u(a);
  RatInterval r(root_interval(z.lo, b, bits).lo, root_interval(z.hi, b, bits).hi);
  if (num < 0) r = RatInterval(Rational(1)) / r;
  return r;
}

using RhsFn = std::function<RatInterval(unsigned)>;

RhsFn point_rhs(Rational v) {
  return [v](unsigned) { return RatInterval(v); };
}

// ---- report assembly -------------------------------------------------------

std::string graph_brief(const DistanceGraph& g) {
  std::ostringstream os;
  os << g.vertex_count() << ' '
     << (g.base_vertex() ? static_cast<long long>(*g.base_vertex()) : -1);
  for (const auto& e : g.edges()) os << "; " << e.u << ' ' << e.v << ' ' << e.length.str();
  return os.str();
}

std::string witness_string(const std::vector<Point>& pts) {
  std::string out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i) out += ';';
    out += pts[i].str();
  }
  return out;
}

struct Part {
  std::string name;
  bool holds;
};

struct ReportBuilder {
  TheoremReport r;
  const PointSet& E;
  const CountOptions& opts;

  ReportBuilder(TheoremId id, const PointSet& set, const CountOptions& o) : E(set), opts(o) {
    r.id = id;
    r.params.emplace_back("q", std::to_string(set.space().q()));
    r.params.emplace_back("d", std::to_string(set.space().dim));
    r.params.emplace_back("size", std::to_string(set.size()));
  }

  void param(const std::string& key, const std::string& value) {
    r.params.emplace_back(key, value);
  }
  void extra(const std::string& key, const std::string& value) {
    r.extra.emplace_back(key, value);
  }

  // Primary claim plus optional conjunct parts; verdict is HOLDS only when
  // the primary claim and every part are certified.
  TheoremReport finish(bool hypothesis, const std::string& relation, const Rational& lhs,
                       const RhsFn& rhs, bool geq, const std::vector<Part>& parts = {},
                       const DistanceGraph* witness_graph = nullptr, bool witness_injective = false) {
    r.hypothesis_met = hypothesis;
    r.relation = relation;
    r.lhs = to_string(lhs);
    RatInterval shown = rhs(64);
    r.rhs_lo = to_string(shown.lo);
    r.rhs_hi = to_string(shown.hi);
    bool primary = geq ? decide_ge(lhs, rhs) : decide_le(lhs, rhs);
    bool all = primary;
    for (const auto& p : parts) {
      extra("check_" + p.name, p.holds ? "true" : "false");
      all = all && p.holds;
    }
    if (!hypothesis)
      r.verdict = Verdict::VACUOUS;
    else
      r.verdict = all ? Verdict::HOLDS : Verdict::VIOLATED;
    if (r.verdict == Verdict::HOLDS && geq && witness_graph && shown.lo > 0) {
      auto w = first_embedding(*witness_graph, E, witness_injective, opts);
      if (w) r.witness = witness_string(*w);
    }
    return std::move(r);
  }
};

// ---- shared audit context --------------------------------------------------

struct Ctx {
  const PointSet& E;
  const AuditParams& P;
  const CountOptions& opts;
  std::uint64_t q;
  unsigned d;
  Rational W;

  Ctx(const PointSet& set, const AuditParams& params, const CountOptions& o)
      : E(set), P(params), opts(o), q(set.space().q()), d(set.space().dim), W(set.size()) {}

  const Field& field() const { return *E.space().field; }

  Scalar require_t() const {
    if (!P.t) fail(Errc::missing_param, "parameter t is required");
    if (P.t->is_zero()) fail(Errc::zero_distance, "t must be nonzero");
    return *P.t;
  }
  unsigned require_m(unsigned lo = 1) const {
    if (!P.m) fail(Errc::missing_param, "parameter m is required");
    if (*P.m < lo) fail(Errc::bad_params, "m below the theorem's range");
    return *P.m;
  }
  unsigned require_k(unsigned lo = 1) const {
    if (!P.k) fail(Errc::missing_param, "parameter k is required");
    if (*P.k < lo) fail(Errc::bad_params, "k below the theorem's range");
    return *P.k;
  }
  Rational require_positive(const std::optional<Rational>& v, const char* name) const {
    if (!v) fail(Errc::missing_param, std::string("parameter ") + name + " is required");
    if (*v <= 0) fail(Errc::bad_params, std::string(name) + " must be positive");
    return *v;
  }
  const DistanceGraph& require_graph() const {
    if (!P.graph) fail(Errc::missing_param, "parameter graph is required");
    return *P.graph;
  }
};

// (l-1)(lm+2)/2, the mu exponent of the tree-of-simplices lower bound.
Rational stree_mu_exponent(unsigned ell, unsigned m) {
  return Rational(ell - 1) * (Rational(std::uint64_t(ell) * m, 2) + 1);
}

unsigned level_for(unsigned k) {
  // l with 2^l < k <= 2^(l+1); requires k >= 2
  unsigned l = 0;
  while ((1u << (l + 1)) < k) ++l;
  return l;
}

BigInt floor_rational(const Rational& v) {
  BigInt n = mp::numerator(v), d = mp::denominator(v);
  BigInt q = n / d;
  if (n < 0 && q * d != n) --q;
  return q;
}

// Exact floor of an irrational enclosed value, by refining its interval.
BigInt certified_floor(const RhsFn& make) {
  for (unsigned bits = 64; bits <= 4096; bits *= 2) {
    RatInterval i = make(bits);
    BigInt lo = floor_rational(i.lo), hi = floor_rational(i.hi);
    if (lo == hi) return lo;
  }
  fail(Errc::unsupported, "floor undecided at maximum precision");
}

std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> connected_edge_sets(unsigned n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = i + 1; j < n; ++j) pairs.push_back({i, j});
  std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> out;
  for (std::uint64_t mask = 0; mask < (1ull << pairs.size()); ++mask) {
    std::vector<std::uint32_t> parent(n);
    for (std::uint32_t i = 0; i < n; ++i) parent[i] = i;
    std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    unsigned comps = n;
    for (std::size_t b = 0; b < pairs.size(); ++b) {
      if (!(mask >> b & 1)) continue;
      edges.push_back(pairs[b]);
      std::uint32_t ru = find(pairs[b].first), rv = find(pairs[b].second);
      if (ru != rv) {
        parent[ru] = rv;
        --comps;
      }
    }
    if (comps == 1) out.push_back(std::move(edges));
  }
  return out;
}

// ---- per-theorem audits ----------------------------------------------------

TheoremReport audit_ir_pair_count(const Ctx& c) {
  Scalar t = c.require_t();
  ReportBuilder rb(TheoremId::IR_PAIR_COUNT, c.E, c.opts);
  rb.param("t", t.str());
  std::uint64_t pc = c.E.empty() ? 0 : pair_count(c.E, t);
  Rational expected = c.W * c.W / Rational(c.q);
  Rational lhs = Rational(pc) - expected;
  if (lhs < 0) lhs = -lhs;
  rb.extra("pair_count", std::to_string(pc));
  rb.extra("expected", to_string(expected));
  Rational coeff = 2 * c.W;
  RhsFn rhs = coeff > 0
                  ? RhsFn([c, coeff](unsigned bits) {
                      return PowThreshold{coeff, c.q, Rational(c.d - 1, 2)}.to_interval(bits);
                    })
                  : point_rhs(Rational(0));
  return rb.finish(true, "leq", lhs, rhs, false);
}

TheoremReport audit_tree_embed(const Ctx& c) {
  const DistanceGraph& tree = c.require_graph();
  if (!tree.is_connected() || tree.edge_count() + 1 != tree.vertex_count())
    fail(Errc::not_a_tree, "graph parameter must be a tree");
  Rational eps = c.require_positive(c.P.epsilon, "epsilon");
  unsigned k = static_cast<unsigned>(tree.edge_count());
  ReportBuilder rb(TheoremId::TREE_EMBED, c.E, c.opts);
  rb.param("graph", graph_brief(tree));
  rb.param("epsilon", to_string(eps));
  bool hyp = cmp_vs_scaled_qpow(c.W, Rational(1), c.q, Rational(c.d + 1, 2) + eps) > 0;
  Rational lhs(count_all(tree, c.E, c.opts).total);
  Rational factor = rational_pow(c.W, k + 1) / rational_pow(Rational(c.q), k);
  std::uint64_t q = c.q;
  RhsFn rhs = [factor, q, eps, k](unsigned bits) {
    RatInterval tail = pow_interval(Rational(q), -2 * eps / Rational(k + 1), bits);
    return RatInterval(factor) * (RatInterval(Rational(1)) - RatInterval(Rational(8)) * tail);
  };
  return rb.finish(hyp, "geq", lhs, rhs, true, {}, &tree, false);
}

TheoremReport audit_ip_threshold(const Ctx& c) {
  const DistanceGraph& g = c.require_graph();
  PowThreshold thr = ip_threshold(g, c.q, c.d);
  ReportBuilder rb(TheoremId::IP_THRESHOLD, c.E, c.opts);
  rb.param("graph", graph_brief(g));
  rb.extra("threshold", thr.to_string());
  bool hyp = thr.cmp(c.W) <= 0;  // |E| >= threshold
  Rational lhs(count_all(g, c.E, c.opts).nondegenerate);
  return rb.finish(hyp, "geq", lhs, point_rhs(Rational(1)), true, {}, &g, true);
}

TheoremReport audit_holder(const Ctx& c, bool corollary) {
  const DistanceGraph& h = c.require_graph();
  unsigned k = c.require_k(1);
  if (c.P.duplicated.empty()) fail(Errc::missing_param, "duplicated vertex set is required");
  DistanceGraph g = k == 1 ? h : holder_extension({h, c.P.duplicated, k});
  ReportBuilder rb(corollary ? TheoremId::HOLDER_COR : TheoremId::HOLDER_LEMMA, c.E, c.opts);
  rb.param("graph", graph_brief(h));
  {
    std::string s;
    for (std::uint32_t v : c.P.duplicated) s += (s.empty() ? "" : " ") + std::to_string(v);
    rb.param("duplicated", s);
  }
  rb.param("k", std::to_string(k));
  unsigned l = h.vertex_count() - static_cast<unsigned>(c.P.duplicated.size());
  BigInt n_h = total_embeddings(h, c.E, c.opts);
  Rational lhs(total_embeddings(g, c.E, c.opts));
  Rational bound;
  if (corollary) {
    bound = (n_h == 0 || c.E.empty())
                ? Rational(0)
                : Rational(mp::pow(n_h, k)) / rational_pow(c.W, std::uint64_t(k - 1) * l);
  } else {
    bound = holder_lower_bound(h, c.P.duplicated, k, c.E, c.opts);
    // the printed denominator exponent (k-1)l, for comparison
    BigInt n_rem = total_embeddings(h.remove_vertices(c.P.duplicated), c.E, c.opts);
    Rational printed = (n_h == 0 || n_rem == 0)
                           ? Rational(0)
                           : Rational(mp::pow(n_h, k)) / Rational(mp::pow(n_rem, (k - 1) * l));
    rb.extra("count_base", n_h.str());
    rb.extra("count_base_minus_s", n_rem.str());
    rb.extra("printed_exponent_bound", to_string(printed));
    rb.extra("printed_exponent_holds", lhs >= printed ? "true" : "false");
  }
  return rb.finish(true, "geq", lhs, point_rhs(bound), true, {}, &g, false);
}

TheoremReport audit_degen_general(const Ctx& c) {
  if (c.P.lengths.empty()) fail(Errc::missing_param, "length set L is required");
  for (const Scalar& t : c.P.lengths)
    if (t.is_zero()) fail(Errc::zero_distance, "lengths must be nonzero");
  bool degenerate_variant = c.P.variant == "degenerate";
  unsigned n;
  if (degenerate_variant) {
    const DistanceGraph& g = c.require_graph();
    if (g.vertex_count() < 3) fail(Errc::bad_params, "degenerate variant needs >= 3 vertices");
    n = g.vertex_count() - 1;
    if (c.P.n && *c.P.n != n) fail(Errc::bad_params, "n must match the graph's vertex count - 1");
  } else {
    if (!c.P.n) fail(Errc::missing_param, "parameter n is required");
    n = *c.P.n;
  }
  if (n < 2 || n > 6) fail(Errc::bad_params, "n must lie in [2, 6]");
  Rational eps = c.require_positive(c.P.epsilon, "epsilon");

  ReportBuilder rb(TheoremId::DEGEN_GENERAL, c.E, c.opts);
  {
    std::string s;
    for (const Scalar& t : c.P.lengths) s += (s.empty() ? "" : " ") + t.str();
    rb.param("lengths", s);
  }
  rb.param("n", std::to_string(n));
  rb.param("epsilon", to_string(eps));
  rb.param("variant", degenerate_variant ? "degenerate" : "count");

  bool hyp = cmp_vs_scaled_qpow(c.W, Rational(1), c.q, Rational(c.d + 1, 2) + eps) > 0;

  // E' with the cap lambda |E| / q, lambda = q^(2 eps / n): degrees are
  // integers, so the exact cap is floor(lambda |E| / q).
  PointSet refined(c.E.space(), {});
  std::uint64_t removed = 0;
  if (!c.E.empty()) {
    std::uint64_t q = c.q;
    Rational scale = c.W / Rational(q);
    BigInt cap = certified_floor([q, eps, n, scale](unsigned bits) {
      return RatInterval(scale) * pow_interval(Rational(q), 2 * eps / Rational(n), bits);
    });
    if (cap < 0) cap = 0;
    Rational lambda_rat = Rational(cap) * Rational(c.q) / c.W;
    if (lambda_rat <= 0) {
      removed = c.E.size();  // cap of 0 still keeps degree-0 points
      std::vector<std::uint64_t> codes;
      for (std::size_t i = 0; i < c.E.size(); ++i) {
        bool isolated = true;
        for (const Scalar& t : c.P.lengths)
          if (edge_degree(c.E, t, c.E.at(i)) > 0) {
            isolated = false;
            break;
          }
        if (isolated) codes.push_back(c.E.code_at(i));
      }
      refined = PointSet(c.E.space(), std::move(codes));
      removed = c.E.size() - refined.size();
    } else {
      ShaveResult r = degree_cap_set(c.E, c.P.lengths, lambda_rat);
      refined = r.subset;
      removed = r.removed;
    }
    rb.extra("degree_cap", cap.str());
  }
  rb.extra("refined_size", std::to_string(refined.size()));

  // part: |E \ E'| <= 2 |L| q^(-2 eps / n) |E|
  std::uint64_t q = c.q;
  Rational two_l_w = Rational(2 * c.P.lengths.size()) * c.W;
  bool removed_ok =
      decide_le(Rational(removed), [q, eps, n, two_l_w](unsigned bits) {
        return RatInterval(two_l_w) * pow_interval(Rational(q), -2 * eps / Rational(n), bits);
      });

  Rational lhs, bound;
  if (degenerate_variant) {
    const DistanceGraph& g = *c.P.graph;
    for (const auto& e : g.edges()) {
      bool in_l = false;
      for (const Scalar& t : c.P.lengths) in_l = in_l || e.length == t;
      if (!in_l) fail(Errc::bad_params, "graph edge length outside L");
    }
    lhs = Rational(count_all(g, refined, c.opts).degenerate);
    bound = Rational(n) * (n + 1) * rational_pow(c.W, n) / rational_pow(Rational(c.q), n - 1);
    rb.param("graph", graph_brief(g));
  } else {
    BigInt sum = 0;
    for (const auto& edges : connected_edge_sets(n)) {
      // odometer over length assignments
      std::vector<std::size_t> pick(edges.size(), 0);
      while (true) {
        std::vector<GraphEdge> ge;
        for (std::size_t i = 0; i < edges.size(); ++i)
          ge.push_back({edges[i].first, edges[i].second, c.P.lengths[pick[i]]});
        sum += total_embeddings(DistanceGraph(n, std::move(ge)), refined, c.opts);
        std::size_t i = 0;
        while (i < pick.size() && ++pick[i] == c.P.lengths.size()) pick[i++] = 0;
        if (i == pick.size()) break;
      }
    }
    lhs = Rational(sum);
    // c_{n,|L|} = 2^(C(n,2)-n+2) |L|^(n-1) n^(n-2)
    long long c2exp = static_cast<long long>(n) * (n - 1) / 2 - n + 2;
    Rational cnl = rational_pow(Rational(2), c2exp) *
                   rational_pow(Rational(c.P.lengths.size()), n - 1) *
                   rational_pow(Rational(n), static_cast<long long>(n) - 2);
    bound = cnl * rational_pow(c.W, n) / rational_pow(Rational(c.q), n - 1);
  }
  std::vector<Part> parts = {{"removed_bound", removed_ok}};
  return rb.finish(hyp, "leq", lhs, point_rhs(bound), false, parts);
}

TheoremReport audit_shave_one_edge(const Ctx& c) {
  Scalar t = c.require_t();
  Rational lambda = c.require_positive(c.P.lambda, "lambda");
  ReportBuilder rb(TheoremId::SHAVE_ONE_EDGE, c.E, c.opts);
  rb.param("t", t.str());
  rb.param("lambda", to_string(lambda));
  if (c.P.c_squared) rb.param("c_squared", to_string(*c.P.c_squared));
  ShaveResult r = shave_one_edge(c.E, t, lambda, c.P.c_squared);
  rb.extra("subset_size", std::to_string(r.subset.size()));
  rb.extra("removed", std::to_string(r.removed));
  std::vector<Part> parts;
  bool deg_lo = true, deg_hi = true;
  if (r.achieved_min) {
    deg_lo = Rational(*r.achieved_min) >= *r.cap_lo;
    deg_hi = Rational(*r.achieved_max) <= *r.cap_hi;
    rb.extra("degree_min", r.achieved_min->str());
    rb.extra("degree_max", r.achieved_max->str());
  }
  rb.extra("degree_cap_lo", to_string(*r.cap_lo));
  rb.extra("degree_cap_hi", to_string(*r.cap_hi));
  parts.push_back({"degree_lower", deg_lo});
  parts.push_back({"degree_upper", deg_hi});
  Rational bound = (Rational(1) - 2 / lambda) / (2 * lambda) * c.W;
  return rb.finish(r.hypothesis_met, "geq", Rational(r.subset.size()), point_rhs(bound), true,
                   parts);
}

TheoremReport audit_shave_general(const Ctx& c) {
  const DistanceGraph& g = c.require_graph();
  Rational l1 = c.require_positive(c.P.lambda1, "lambda1");
  Rational l2 = c.require_positive(c.P.lambda2, "lambda2");
  Rational thr = c.P.n_threshold ? *c.P.n_threshold : Rational(0);
  ReportBuilder rb(TheoremId::SHAVE_GENERAL, c.E, c.opts);
  rb.param("graph", graph_brief(g));
  rb.param("lambda1", to_string(l1));
  rb.param("lambda2", to_string(l2));
  rb.param("sandwich_declared", c.P.sandwich_declared ? "true" : "false");
  rb.param("n_threshold", to_string(thr));
  ShaveResult r = general_shave(c.E, g, l1, l2, c.P.sandwich_declared, thr, c.opts);
  rb.extra("subset_size", std::to_string(r.subset.size()));
  std::vector<Part> parts;
  bool f_lo = true, f_hi = true;
  if (r.achieved_min) {
    f_lo = Rational(*r.achieved_min) >= *r.cap_lo;
    f_hi = Rational(*r.achieved_max) <= *r.cap_hi;
    rb.extra("profile_min", r.achieved_min->str());
    rb.extra("profile_max", r.achieved_max->str());
  }
  rb.extra("profile_cap_lo", to_string(*r.cap_lo));
  rb.extra("profile_cap_hi", to_string(*r.cap_hi));
  parts.push_back({"profile_lower", f_lo});
  parts.push_back({"profile_upper", f_hi});
  unsigned n = g.vertex_count();
  Rational bound = (Rational(1, 2) - rational_pow(Rational(2), static_cast<long long>(n) - 1) * l1) *
                   rational_pow(Rational(1) - 2 / l2, n) * c.W;
  return rb.finish(r.hypothesis_met, "geq", Rational(r.subset.size()), point_rhs(bound), true,
                   parts);
}

TheoremReport audit_hchain_total(const Ctx& c) {
  unsigned k = c.require_k(3);
  unsigned m = c.require_m(2);
  Scalar t = c.require_t();
  DistanceGraph g = holder_chain(k, m, t);
  ReportBuilder rb(TheoremId::HCHAIN_TOTAL, c.E, c.opts);
  rb.param("k", std::to_string(k));
  rb.param("m", std::to_string(m));
  rb.param("t", t.str());
  std::uint64_t q = c.q;
  unsigned d = c.d;
  bool hyp = !c.E.empty() &&
             decide_gt(c.W, [q, d, k](unsigned bits) {
               RatInterval num = RatInterval(Rational(4 * k)) *
                                 pow_interval(Rational(q), Rational(d + 1, 2), bits);
               return num / ln2_interval(bits);
             });
  Rational lhs(total_embeddings(g, c.E, c.opts));
  Rational factor = c.E.empty() ? Rational(0)
                                : rational_pow(c.W, std::uint64_t(k) * m - k + 2) /
                                      rational_pow(Rational(c.q), std::uint64_t(k) * m);
  Rational W = c.W;
  RhsFn rhs = [factor, q, d, m, k, W](unsigned bits) {
    if (W == 0) return RatInterval(Rational(0));
    RatInterval err = RatInterval(Rational(4 * m)) *
                      pow_interval(Rational(q), Rational(d + 1, 2), bits) /
                      (ln2_interval(bits) * RatInterval(W));
    return RatInterval(factor) * (RatInterval(Rational(1)) - err).pow_u(k);
  };
  return rb.finish(hyp, "geq", lhs, rhs, true, {}, &g, false);
}

TheoremReport audit_hchain_nondeg_a(const Ctx& c) {
  unsigned k = c.require_k(3);
  unsigned m = c.require_m(2);
  Scalar t = c.require_t();
  std::string branch = c.P.branch.empty() ? "explicit" : c.P.branch;
  if (branch != "explicit" && branch != "asymptotic")
    fail(Errc::bad_params, "branch must be explicit or asymptotic");
  DistanceGraph g = holder_chain(k, m, t);
  ReportBuilder rb(TheoremId::HCHAIN_NONDEG_A, c.E, c.opts);
  rb.param("k", std::to_string(k));
  rb.param("m", std::to_string(m));
  rb.param("t", t.str());
  rb.param("branch", branch);
  std::uint64_t km = std::uint64_t(k) * m;
  Rational lhs(count_all(g, c.E, c.opts).nondegenerate);
  Rational factor_exp = rational_pow(c.W, std::uint64_t(k) * (m - 1) + 2);
  Rational qkm = rational_pow(Rational(c.q), km);
  std::uint64_t q = c.q;
  unsigned d = c.d;
  Rational W = c.W;

  if (branch == "explicit") {
    bool h1 = cmp_vs_scaled_qpow(c.W, rational_pow(Rational(km), km), c.q, Rational(d + 1, 2)) > 0;
    bool h2 = c.W > Rational(2) * km * km * rational_pow(Rational(c.q), k);
    Rational paren = Rational(1) - Rational(1, km) -
                     Rational(2) * km * km * rational_pow(Rational(c.q), k) /
                         (c.W == 0 ? Rational(1) : c.W);
    Rational bound = c.E.empty() ? Rational(0) : factor_exp / (2 * qkm) * paren;
    return rb.finish(h1 && h2, "geq", lhs, point_rhs(bound), true, {}, &g, true);
  }
  Rational e_max = std::max(Rational(d + 1, 2), Rational(k));
  bool hyp = !c.E.empty() &&
             decide_gt(c.W, [q, e_max](unsigned bits) {
               return ln_interval(Rational(q), bits) * pow_interval(Rational(q), e_max, bits);
             });
  RhsFn rhs = [factor_exp, qkm, q, m, k, km, W](unsigned bits) {
    if (W == 0) return RatInterval(Rational(0));
    RatInterval lnq = ln_interval(Rational(q), bits);
    RatInterval term1 = RatInterval(Rational(8) * m * k) / (ln2_interval(bits) * lnq);
    RatInterval term2 = RatInterval(Rational(2) * km) *
                        pow_rat_of_interval(lnq, Rational(-2) / Rational(km), bits);
    return RatInterval(factor_exp / qkm) *
           (RatInterval(Rational(1)) - term1 - term2);
  };
  return rb.finish(hyp, "geq", lhs, rhs, true, {}, &g, true);
}

TheoremReport audit_hchain_nondeg_b(const Ctx& c) {
  unsigned k = c.require_k(3);
  unsigned m = c.require_m(2);
  Scalar t = c.require_t();
  Rational delta = c.require_positive(c.P.delta, "delta");
  if (delta >= Rational(1, 2 * std::uint64_t(m) * m))
    fail(Errc::bad_params, "delta must be below 1/(2 m^2)");
  DistanceGraph g = holder_chain(k, m, t);
  ReportBuilder rb(TheoremId::HCHAIN_NONDEG_B, c.E, c.opts);
  rb.param("k", std::to_string(k));
  rb.param("m", std::to_string(m));
  rb.param("t", t.str());
  rb.param("delta", to_string(delta));
  Rational hyp_exp = (Rational(c.d + 2) - Rational(m - 2, m - 1) + delta) / 2;
  bool hyp = cmp_vs_scaled_qpow(c.W, Rational(1), c.q, hyp_exp) > 0;
  Rational lhs(count_all(g, c.E, c.opts).nondegenerate);
  std::uint64_t km = std::uint64_t(k) * m;
  Rational factor = c.E.empty() ? Rational(0)
                                : rational_pow(c.W, std::uint64_t(k) * (m - 1) + 2) /
                                      rational_pow(Rational(c.q), km);
  long long lnq_exp = static_cast<long long>(m - 2) * (k - 2) - 1;
  Rational qpow_exp = Rational(1, m - 1) + delta;
  Rational tail_coeff =
      c.E.empty() ? Rational(0)
                  : Rational(2) * rational_pow(Rational(c.q), std::uint64_t(c.d) * (k - 2) + 1) /
                        rational_pow(c.W, k - 1);
  std::uint64_t q = c.q;
  RhsFn rhs = [factor, q, km, lnq_exp, qpow_exp, tail_coeff](unsigned bits) {
    RatInterval lnq = ln_interval(Rational(q), bits);
    RatInterval t1 = RatInterval(Rational(2 * km)) / lnq;
    RatInterval t2 = RatInterval(Rational(4 * km)) /
                     (ln2_interval(bits) * pow_interval(Rational(q), qpow_exp, bits));
    RatInterval t3 = RatInterval(tail_coeff) * pow_int_of_interval(lnq, lnq_exp);
    return RatInterval(factor) * (RatInterval(Rational(1)) - t1 - t2 - t3);
  };
  return rb.finish(hyp, "geq", lhs, rhs, true, {}, &g, true);
}

TheoremReport audit_hchain_summary(const Ctx& c) {
  unsigned k = c.require_k(3);
  unsigned m = c.require_m(2);
  Scalar t = c.require_t();
  Rational delta = c.require_positive(c.P.delta, "delta");
  if (delta >= Rational(1, 2 * std::uint64_t(m) * m))
    fail(Errc::bad_params, "delta must be below 1/(2 m^2)");
  RegimeChoice regime = regime_summary(k, c.d, m, c.q);
  DistanceGraph g = holder_chain(k, m, t);
  ReportBuilder rb(TheoremId::HCHAIN_SUMMARY, c.E, c.opts);
  rb.param("k", std::to_string(k));
  rb.param("m", std::to_string(m));
  rb.param("t", t.str());
  rb.param("delta", to_string(delta));
  rb.extra("regime", std::to_string(regime.regime));
  rb.extra("regime_threshold", regime.description);
  rb.extra("regime_exceptional", regime.exceptional ? "true" : "false");

  std::uint64_t q = c.q;
  unsigned d = c.d;
  Rational e_max = std::max(Rational(d + 1, 2), Rational(k));
  bool branch_a = !c.E.empty() &&
                  decide_ge(c.W, [q, e_max](unsigned bits) {
                    return ln_interval(Rational(q), bits) * pow_interval(Rational(q), e_max, bits);
                  });
  Rational delta_exp = (Rational(d + 2) - Rational(m - 2, m - 1) + delta) / 2;
  Rational tail_exp = Rational(std::uint64_t(d) * (k - 2) + 1, k - 1);
  bool branch_b =
      cmp_vs_scaled_qpow(c.W, Rational(1), c.q, delta_exp) >= 0 &&
      !c.E.empty() &&
      decide_ge(c.W, [q, m, tail_exp](unsigned bits) {
        return pow_int_of_interval(ln_interval(Rational(q), bits), static_cast<long long>(m) - 2) *
               pow_interval(Rational(q), tail_exp, bits);
      });
  rb.extra("branch_a_met", branch_a ? "true" : "false");
  rb.extra("branch_b_met", branch_b ? "true" : "false");
  Rational lhs(count_all(g, c.E, c.opts).nondegenerate);
  return rb.finish(branch_a || branch_b, "geq", lhs, point_rhs(Rational(1)), true, {}, &g, true);
}

TheoremReport audit_simplex_t1(const Ctx& c) {
  unsigned m = c.require_m(2);
  Scalar t = c.require_t();
  DistanceGraph g = simplex(m, t);
  ReportBuilder rb(TheoremId::SIMPLEX_T1, c.E, c.opts);
  rb.param("m", std::to_string(m));
  rb.param("t", t.str());
  bool hyp = cmp_vs_scaled_qpow(c.W, Rational(12) * (m + 1) * (m + 1), c.q,
                                Rational(m) + Rational(c.d - 1, 2)) >= 0;
  BigInt nondeg = count_all(g, c.E, c.opts).nondegenerate;
  Rational expected = rational_pow(c.W, m + 1) /
                      rational_pow(Rational(c.q), std::uint64_t(m) * (m + 1) / 2);
  Rational lhs = Rational(nondeg) - expected;
  if (lhs < 0) lhs = -lhs;
  rb.extra("nondegenerate", nondeg.str());
  rb.extra("expected", to_string(expected));
  Rational coeff = Rational(6) * (m + 1) * (m + 1) * rational_pow(c.W, m);
  Rational exponent = Rational(c.d - 1, 2) - Rational(std::uint64_t(m) * (m - 1), 2);
  std::uint64_t q = c.q;
  RhsFn rhs = coeff > 0 ? RhsFn([coeff, q, exponent](unsigned bits) {
    return PowThreshold{coeff, q, exponent}.to_interval(bits);
  })
                        : point_rhs(Rational(0));
  return rb.finish(hyp, "leq", lhs, rhs, false);
}

TheoremReport audit_schain(const Ctx& c, bool nondeg) {
  unsigned k = c.require_k(2);
  unsigned m = c.require_m(2);
  Scalar t = c.require_t();
  if (k > 32 || m > 16) fail(Errc::bad_params, "k <= 32 and m <= 16 supported");
  unsigned ell = level_for(k);
  ReportBuilder rb(nondeg ? TheoremId::SCHAIN_NONDEG : TheoremId::SCHAIN_TOTAL, c.E, c.opts);
  rb.param("k", std::to_string(k));
  rb.param("m", std::to_string(m));
  rb.param("t", t.str());
  rb.extra("level", std::to_string(ell));

  long long hyp2exp = nondeg ? static_cast<long long>(k) + (1ll << (ell + 1)) * (m + 2) + 3
                             : static_cast<long long>(ell) + 4;
  Rational hyp_coeff = rational_pow(Rational(2), hyp2exp) * 3 * (m + 1) * (m + 1);
  bool hyp = 2 * m < c.d + 1 &&
             cmp_vs_scaled_qpow(c.W, hyp_coeff, c.q, Rational(c.d - 1, 2) + Rational(m)) > 0;

  DistanceGraph g = chain_of_simplices(k, m, t);
  Rational lhs;
  if (nondeg) {
    lhs = Rational(count_all(g, c.E, c.opts).nondegenerate);
  } else {
    lhs = Rational(simplex_chain_count(k, m, t, c.E, c.opts).total);
  }
  long long pow2 = 2ll * k - (1ll << (ell + 1)) * (m + 2) - (nondeg ? 3 : 2);
  Rational bound = rational_pow(Rational(2), pow2) *
                   rational_pow(c.W, std::uint64_t(m) * k + 1) /
                   rational_pow(Rational(c.q), std::uint64_t(k) * m * (m + 1) / 2);
  return rb.finish(hyp, "geq", lhs, point_rhs(bound), true, {}, &g, nondeg);
}

TheoremReport audit_stree(const Ctx& c, TheoremId id) {
  unsigned m = c.require_m(2);
  Scalar t = c.require_t();
  if (c.P.skeleton.empty()) fail(Errc::missing_param, "skeleton edge list is required");
  unsigned ell = static_cast<unsigned>(c.P.skeleton.size());
  DistanceGraph g = tree_of_simplices(c.P.skeleton, m, t);
  ReportBuilder rb(id, c.E, c.opts);
  {
    std::string s;
    for (auto [u, v] : c.P.skeleton)
      s += (s.empty() ? "" : " ") + std::to_string(u) + "-" + std::to_string(v);
    rb.param("skeleton", s);
  }
  rb.param("m", std::to_string(m));
  rb.param("t", t.str());
  rb.extra("connections", std::to_string(ell));

  Rational exp_q = Rational(m) + Rational(c.d - 1, 2);
  Rational w_pow = rational_pow(c.W, std::uint64_t(m) * ell + 1);
  Rational q_pow = rational_pow(Rational(c.q), std::uint64_t(ell) * m * (m + 1) / 2);

  if (id == TheoremId::STREE_PROP) {
    Rational lambda = c.require_positive(c.P.lambda, "lambda");
    if (lambda <= 2) fail(Errc::bad_params, "lambda must exceed 2");
    rb.param("lambda", to_string(lambda));
    Rational mu = rational_pow(Rational(1) - 2 / lambda, m + 2) / (2 * lambda);
    rb.extra("mu", to_string(mu));
    Rational hyp_coeff = Rational(12) * (m + 1) * (m + 1) *
                         rational_pow(mu, 1 - static_cast<long long>(ell));
    bool hyp = cmp_vs_scaled_qpow(c.W, hyp_coeff, c.q, exp_q) >= 0;
    Rational lhs(total_embeddings(g, c.E, c.opts));
    Rational head = Rational(1, 2) * rational_pow(lambda, 1 - static_cast<long long>(ell)) *
                    rational_pow(Rational(1) - 2 / lambda, std::uint64_t(m) * ell + 1);
    Rational mu_exp = stree_mu_exponent(ell, m);
    Rational tail = w_pow / q_pow;
    RhsFn rhs = [head, mu, mu_exp, tail](unsigned bits) {
      return RatInterval(head * tail) * pow_interval(mu, mu_exp, bits);
    };
    return rb.finish(hyp, "geq", lhs, rhs, true, {}, &g, false);
  }

  BigInt et = eta(m, ell);
  rb.extra("eta", et.str());
  long long etll = et.convert_to<long long>();
  if (id == TheoremId::STREE_TOTAL) {
    Rational hyp_coeff = Rational(12) * (m + 1) * (m + 1) *
                         rational_pow(Rational(2), static_cast<long long>(ell - 1) * (m + 5));
    bool hyp = cmp_vs_scaled_qpow(c.W, hyp_coeff, c.q, exp_q) >= 0;
    Rational lhs(total_embeddings(g, c.E, c.opts));
    Rational bound = rational_pow(Rational(2), -etll) * w_pow / q_pow;
    return rb.finish(hyp, "geq", lhs, point_rhs(bound), true, {}, &g, false);
  }
  // STREE_NONDEG, with the cataloged constants
  Rational hyp_coeff = rational_pow(Rational(2), etll + 3ll * ell) * 12 * (m + 1) * (m + 1);
  bool hyp = cmp_vs_scaled_qpow(c.W, hyp_coeff, c.q, exp_q) >= 0;
  Rational lhs(count_all(g, c.E, c.opts).nondegenerate);
  Rational bound = rational_pow(Rational(2), -etll + 3ll * ell + 1) * w_pow / q_pow;
  return rb.finish(hyp, "geq", lhs, point_rhs(bound), true, {}, &g, true);
}

}  // namespace

TheoremReport audit(TheoremId id, const PointSet& E, const AuditParams& params,
                    const CountOptions& opts) {
  Ctx c(E, params, opts);
  switch (id) {
    case TheoremId::IR_PAIR_COUNT: return audit_ir_pair_count(c);
    case TheoremId::TREE_EMBED: return audit_tree_embed(c);
    case TheoremId::IP_THRESHOLD: return audit_ip_threshold(c);
    case TheoremId::HOLDER_LEMMA: return audit_holder(c, false);
    case TheoremId::HOLDER_COR: return audit_holder(c, true);
    case TheoremId::DEGEN_GENERAL: return audit_degen_general(c);
    case TheoremId::SHAVE_ONE_EDGE: return audit_shave_one_edge(c);
    case TheoremId::SHAVE_GENERAL: return audit_shave_general(c);
    case TheoremId::HCHAIN_TOTAL: return audit_hchain_total(c);
    case TheoremId::HCHAIN_NONDEG_A: return audit_hchain_nondeg_a(c);
    case TheoremId::HCHAIN_NONDEG_B: return audit_hchain_nondeg_b(c);
    case TheoremId::HCHAIN_SUMMARY: return audit_hchain_summary(c);
    case TheoremId::SIMPLEX_T1: return audit_simplex_t1(c);
    case TheoremId::SCHAIN_TOTAL: return audit_schain(c, false);
    case TheoremId::SCHAIN_NONDEG: return audit_schain(c, true);
    case TheoremId::STREE_PROP: return audit_stree(c, TheoremId::STREE_PROP);
    case TheoremId::STREE_TOTAL: return audit_stree(c, TheoremId::STREE_TOTAL);
    case TheoremId::STREE_NONDEG: return audit_stree(c, TheoremId::STREE_NONDEG);
  }
  fail(Errc::bad_params, "unknown theorem id");
}

std::string to_text(const TheoremReport& report) {
  std::ostringstream os;
  os << "[report]\n";
  os << "id = " << theorem_id_name(report.id) << '\n';
  for (const auto& [k, v] : report.params) os << k << " = " << v << '\n';
  os << "hypothesis_met = " << (report.hypothesis_met ? "true" : "false") << '\n';
  os << "relation = " << report.relation << '\n';
  os << "lhs = " << report.lhs << '\n';
  os << "rhs_lo = " << report.rhs_lo << '\n';
  os << "rhs_hi = " << report.rhs_hi << '\n';
  os << "verdict = " << verdict_name(report.verdict) << '\n';
  if (report.witness) os << "witness = " << *report.witness << '\n';
  for (const auto& [k, v] : report.extra) os << k << " = " << v << '\n';
  os << "[end]\n";
  return os.str();
}

}  // namespace ffembed

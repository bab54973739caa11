#include "ffembed/corpus.hpp"

namespace ffembed {

std::vector<TheoremReport> run_regression_corpus(std::uint64_t q, const CountOptions& opts) {
  auto field = Field::make(q);
  Space plane(field, 2);
  PointSet E = PointSet::full_space(plane);
  Scalar one = field->one();

  std::vector<TheoremReport> out;
  auto run = [&](TheoremId id, const AuditParams& p) { out.push_back(audit(id, E, p, opts)); };

  {
    AuditParams p;
    p.t = one;
    run(TheoremId::IR_PAIR_COUNT, p);
  }
  {
    AuditParams p;
    p.graph = chain(3, one);
    p.epsilon = Rational(9, 20);
    run(TheoremId::TREE_EMBED, p);
  }
  {
    AuditParams p;
    p.graph = star(3, one);
    run(TheoremId::IP_THRESHOLD, p);
  }
  {
    AuditParams p;
    p.graph = chain(2, one);
    p.duplicated = {1};
    p.k = 2;
    run(TheoremId::HOLDER_LEMMA, p);
    run(TheoremId::HOLDER_COR, p);
  }
  {
    AuditParams p;
    p.lengths = {one};
    p.n = 3;
    p.epsilon = Rational(9, 20);
    run(TheoremId::DEGEN_GENERAL, p);
    AuditParams pd = p;
    pd.n.reset();
    pd.variant = "degenerate";
    pd.graph = chain(3, one);
    run(TheoremId::DEGEN_GENERAL, pd);
  }
  {
    AuditParams p;
    p.t = one;
    p.lambda = Rational(8);
    p.c_squared = Rational(q);  // C = sqrt(q)
    run(TheoremId::SHAVE_ONE_EDGE, p);
  }
  {
    AuditParams p;
    p.graph = chain(1, one);
    p.lambda1 = Rational(1, 8);
    p.lambda2 = Rational(4);
    p.sandwich_declared = true;
    // the one-edge sandwich provably holds above 4 q^((d+1)/2) <= 7 q^2
    p.n_threshold = Rational(7) * q * q;
    run(TheoremId::SHAVE_GENERAL, p);
  }
  {
    AuditParams p;
    p.k = 3;
    p.m = 2;
    p.t = one;
    run(TheoremId::HCHAIN_TOTAL, p);
    p.branch = "explicit";
    run(TheoremId::HCHAIN_NONDEG_A, p);
    p.branch = "asymptotic";
    run(TheoremId::HCHAIN_NONDEG_A, p);
    p.branch.clear();
    p.delta = Rational(1, 16);
    run(TheoremId::HCHAIN_NONDEG_B, p);
    run(TheoremId::HCHAIN_SUMMARY, p);
  }
  {
    AuditParams p;
    p.m = 2;
    p.t = one;
    run(TheoremId::SIMPLEX_T1, p);
  }
  {
    AuditParams p;
    p.k = 2;
    p.m = 2;
    p.t = one;
    run(TheoremId::SCHAIN_TOTAL, p);
    run(TheoremId::SCHAIN_NONDEG, p);
  }
  {
    AuditParams p;
    p.skeleton = {{0, 1}, {0, 2}, {0, 3}};
    p.m = 2;
    p.t = one;
    p.lambda = Rational(4);
    run(TheoremId::STREE_PROP, p);
    run(TheoremId::STREE_TOTAL, p);
    run(TheoremId::STREE_NONDEG, p);
  }
  return out;
}

}  // namespace ffembed

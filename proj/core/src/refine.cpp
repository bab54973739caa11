#include "ffembed/refine.hpp"

#include <fstream>
#include <ostream>

namespace ffembed {

namespace {

PointSet subset_from_flags(const PointSet& E, const std::vector<char>& keep) {
  std::vector<std::uint64_t> codes;
  for (std::size_t i = 0; i < E.size(); ++i)
    if (keep[i]) codes.push_back(E.code_at(i));
  return PointSet(E.space(), std::move(codes));
}

void record_achieved(ShaveResult& r, const std::vector<BigInt>& values,
                     const std::vector<char>& keep) {
  bool any = false;
  BigInt mn = 0, mx = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!keep[i]) continue;
    if (!any || values[i] < mn) mn = values[i];
    if (!any || values[i] > mx) mx = values[i];
    any = true;
  }
  if (any) {
    r.achieved_min = mn;
    r.achieved_max = mx;
  }
}

}  // namespace

ShaveResult degree_cap_set(const PointSet& E, const std::vector<Scalar>& lengths,
                           const Rational& lambda) {
  if (lambda <= 0) fail(Errc::bad_params, "cap multiplier must be positive");
  if (lengths.empty()) fail(Errc::bad_params, "length set must be nonempty");
  for (const Scalar& t : lengths)
    if (t.is_zero()) fail(Errc::zero_distance, "cap lengths must be nonzero");
  const std::uint64_t q = E.space().q();
  Rational cap = lambda * Rational(E.size()) / Rational(q);
  std::vector<char> keep(E.size(), 1);
  std::vector<BigInt> worst(E.size(), BigInt(0));  // max degree across lengths
  for (const Scalar& t : lengths) {
    auto deg = all_edge_degrees(E, t);
    for (std::size_t i = 0; i < E.size(); ++i) {
      if (Rational(deg[i]) > cap) keep[i] = 0;
      if (BigInt(deg[i]) > worst[i]) worst[i] = deg[i];
    }
  }
  ShaveResult r;
  r.subset = subset_from_flags(E, keep);
  r.params.lambda = lambda;
  r.params.lengths = lengths;
  r.removed = E.size() - r.subset.size();
  r.cap_hi = cap;
  record_achieved(r, worst, keep);
  // the removal bound 2|L||E|/lambda applies in the regime |E| >= 2q^((d+1)/2)
  int in_regime = cmp_vs_scaled_qpow(Rational(E.size()), Rational(2), q,
                                     Rational(E.space().dim + 1, 2));
  r.hypothesis_met = in_regime >= 0;
  if (r.hypothesis_met) {
    r.size_bound_asserted = true;
    r.size_bound = Rational(E.size()) * (Rational(1) - Rational(2 * lengths.size()) / lambda);
  }
  return r;
}

ShaveResult shave_one_edge(const PointSet& E, const Scalar& t, const Rational& lambda,
                           const std::optional<Rational>& c_squared) {
  if (lambda <= 0) fail(Errc::bad_params, "lambda must be positive");
  if (t.is_zero()) fail(Errc::zero_distance, "t must be nonzero");
  const std::uint64_t q = E.space().q();
  const Rational size(E.size());

  // pass 1: cap degrees against |E|
  Rational cap = lambda * size / Rational(q);
  auto deg_full = all_edge_degrees(E, t);
  std::vector<char> keep1(E.size(), 0);
  for (std::size_t i = 0; i < E.size(); ++i) keep1[i] = Rational(deg_full[i]) <= cap;
  PointSet capped = subset_from_flags(E, keep1);

  // pass 2: floor degrees within the capped set
  Rational floor_bound = (Rational(capped.size()) / Rational(q)) / lambda;
  auto deg_capped = all_edge_degrees(capped, t);
  std::vector<char> keep2(capped.size(), 0);
  for (std::size_t i = 0; i < capped.size(); ++i)
    keep2[i] = Rational(deg_capped[i]) >= floor_bound;

  ShaveResult r;
  r.subset = subset_from_flags(capped, keep2);
  r.params.lambda = lambda;
  r.params.lengths = {t};
  r.removed = E.size() - r.subset.size();
  r.cap_lo = size / (Rational(q) * lambda);
  r.cap_hi = cap;

  // degrees of the retained points within the full set
  {
    std::vector<char> all(r.subset.size(), 1);
    std::vector<BigInt> vals(r.subset.size());
    for (std::size_t i = 0; i < r.subset.size(); ++i) {
      auto idx = E.index_of_code(r.subset.code_at(i));
      vals[i] = deg_full[*idx];
    }
    record_achieved(r, vals, all);
  }

  bool hyp = false;
  if (c_squared) {
    const Rational& c2 = *c_squared;
    // C > 4, |E| >= C q^((d+1)/2), lambda > 2C/(C-4); all checked on squares
    bool c_ok = c2 > 16;
    bool size_ok = size * size >= c2 * rational_pow(Rational(q), E.space().dim + 1);
    bool lambda_ok = lambda > 2 && c2 * (lambda - 2) * (lambda - 2) > 16 * lambda * lambda;
    hyp = c_ok && size_ok && lambda_ok;
  }
  r.hypothesis_met = hyp;
  if (hyp) {
    r.size_bound_asserted = true;
    r.size_bound = (Rational(1) - 2 / lambda) / (2 * lambda) * size;
  }
  return r;
}

ShaveResult general_shave(const PointSet& E, const DistanceGraph& g, const Rational& lambda1,
                          const Rational& lambda2, bool sandwich_declared,
                          const Rational& n_threshold, const CountOptions& opts) {
  if (!g.base_vertex()) fail(Errc::bad_params, "general shave requires a base vertex");
  const unsigned n = g.vertex_count();
  const std::uint64_t m_edges = g.edge_count();
  if (lambda2 < 4) fail(Errc::bad_params, "lambda2 must be >= 4");
  Rational two_pow_n = rational_pow(Rational(2), n);
  if (lambda1 <= 0 || lambda1 * two_pow_n >= 1)
    fail(Errc::bad_params, "lambda1 must lie in (0, 2^-n)");
  const std::uint64_t q = E.space().q();
  const Rational size(E.size());

  BaseProfile f = base_profile(g, E, opts);
  Rational scale = rational_pow(size, static_cast<long long>(n) - 1) /
                   rational_pow(Rational(q), static_cast<long long>(m_edges));
  Rational cap = lambda2 * scale;
  std::vector<char> keep1(E.size(), 0);
  for (std::size_t i = 0; i < E.size(); ++i) keep1[i] = Rational(f.at_index(i)) <= cap;
  PointSet capped = subset_from_flags(E, keep1);

  BaseProfile inner = base_profile(g, capped, opts);
  Rational lambda0 = lambda1 * rational_pow(Rational(2), static_cast<long long>(n) - 1);
  Rational floor_bound = lambda0 *
                         rational_pow(Rational(capped.size()), static_cast<long long>(n) - 1) /
                         rational_pow(Rational(q), static_cast<long long>(m_edges));
  std::vector<char> keep2(capped.size(), 0);
  for (std::size_t i = 0; i < capped.size(); ++i)
    keep2[i] = Rational(inner.at_index(i)) >= floor_bound;

  ShaveResult r;
  r.subset = subset_from_flags(capped, keep2);
  r.params.lambda = lambda2;
  r.params.lambda_lo = lambda1;
  r.params.lambda_hi = lambda2;
  r.removed = E.size() - r.subset.size();
  r.cap_lo = lambda1 * scale;
  r.cap_hi = cap;
  {
    std::vector<char> all(r.subset.size(), 1);
    std::vector<BigInt> vals(r.subset.size());
    for (std::size_t i = 0; i < r.subset.size(); ++i) {
      auto idx = E.index_of_code(r.subset.code_at(i));
      vals[i] = f.at_index(*idx);
    }
    record_achieved(r, vals, all);
  }
  r.hypothesis_met = sandwich_declared && size > 2 * n_threshold;
  if (r.hypothesis_met) {
    r.size_bound_asserted = true;
    Rational slack = Rational(1) - 2 / lambda2;
    r.size_bound = (Rational(1, 2) - rational_pow(Rational(2), static_cast<long long>(n) - 1) * lambda1) *
                   rational_pow(slack, n) * size;
  }
  return r;
}

NondegPrepSets nondeg_prep_sets(const PointSet& E, unsigned m, const Scalar& t,
                                const Rational& lambda_prime, const CountOptions& opts) {
  if (m < 2) fail(Errc::bad_params, "nondeg prep requires m >= 2");
  if (lambda_prime <= 0) fail(Errc::bad_params, "lambda' must be positive");
  const std::uint64_t q = E.space().q();
  const Rational size(E.size());

  auto cap_by_profile = [&](unsigned mm) {
    BaseProfile prof = simplex_base_profile(mm, t, E, opts);
    Rational cap = lambda_prime * rational_pow(size, mm) /
                   rational_pow(Rational(q), static_cast<long long>(mm) * (mm + 1) / 2);
    std::vector<char> keep(E.size(), 0);
    for (std::size_t i = 0; i < E.size(); ++i) keep[i] = Rational(prof.at_index(i)) <= cap;
    ShaveResult r;
    r.subset = subset_from_flags(E, keep);
    r.params.lambda = lambda_prime;
    r.params.lengths = {t};
    r.removed = E.size() - r.subset.size();
    r.cap_hi = cap;
    std::vector<BigInt> vals(E.size());
    for (std::size_t i = 0; i < E.size(); ++i) vals[i] = prof.at_index(i);
    record_achieved(r, vals, keep);
    return r;
  };

  NondegPrepSets out;
  out.simplex_capped = cap_by_profile(m);
  out.facet_capped = cap_by_profile(m - 1);
  std::vector<std::uint64_t> codes;
  for (std::size_t i = 0; i < out.simplex_capped.subset.size(); ++i) {
    std::uint64_t c = out.simplex_capped.subset.code_at(i);
    if (out.facet_capped.subset.contains_code(c)) codes.push_back(c);
  }
  out.core = PointSet(E.space(), std::move(codes));
  out.removed = E.size() - out.core.size();
  out.removed_bound = 4 * size / lambda_prime;
  int cmp = cmp_vs_scaled_qpow(size, Rational(12) * (m + 1) * (m + 1), q,
                               Rational(m) + Rational(E.space().dim - 1, 2));
  out.hypothesis_met = cmp >= 0;
  out.simplex_capped.hypothesis_met = out.hypothesis_met;
  out.facet_capped.hypothesis_met = out.hypothesis_met;
  return out;
}

Rational degenerate_embedding_bound(std::uint64_t set_size, std::uint64_t q, unsigned m,
                                    unsigned k, const Rational& lambda_prime) {
  if (m < 2 || k < 1) fail(Errc::bad_params, "bound requires m >= 2 and k >= 1");
  long long exponent = static_cast<long long>(k) * m * (m + 1) / 2 - m;
  return rational_pow(lambda_prime, k) * rational_pow(Rational(set_size), static_cast<long long>(m) * k) /
         rational_pow(Rational(q), exponent);
}

void write_shave_result(std::ostream& os, const ShaveResult& r) {
  std::vector<std::string> meta;
  meta.push_back("lambda = " + to_string(r.params.lambda));
  if (r.params.lambda_lo) meta.push_back("lambda_lo = " + to_string(*r.params.lambda_lo));
  if (r.params.lambda_hi) meta.push_back("lambda_hi = " + to_string(*r.params.lambda_hi));
  if (!r.params.lengths.empty()) {
    std::string ls;
    for (const Scalar& s : r.params.lengths) ls += (ls.empty() ? "" : " ") + s.str();
    meta.push_back("lengths = " + ls);
  }
  meta.push_back("removed = " + std::to_string(r.removed));
  if (r.cap_lo) meta.push_back("cap_lo = " + to_string(*r.cap_lo));
  if (r.cap_hi) meta.push_back("cap_hi = " + to_string(*r.cap_hi));
  if (r.achieved_min) meta.push_back("achieved_min = " + to_string(*r.achieved_min));
  if (r.achieved_max) meta.push_back("achieved_max = " + to_string(*r.achieved_max));
  meta.push_back(std::string("hypothesis_met = ") + (r.hypothesis_met ? "true" : "false"));
  meta.push_back(std::string("size_bound_asserted = ") + (r.size_bound_asserted ? "true" : "false"));
  if (r.size_bound_asserted) meta.push_back("size_bound = " + to_string(r.size_bound));
  write_point_set(os, r.subset, meta);
}

void save_shave_result(const std::string& path, const ShaveResult& r) {
  std::ofstream os(path);
  if (!os) fail(Errc::io_error, "cannot open " + path + " for writing");
  write_shave_result(os, r);
}

}  // namespace ffembed

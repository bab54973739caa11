#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "ffembed/count.hpp"
#include "ffembed/numeric.hpp"
#include "ffembed/space.hpp"

namespace ffembed {

// Parameter record of a refinement construction, echoed into the result and
// its serialized header.
struct ShaveParams {
  Rational lambda;                      // one-sided cap multiplier
  std::optional<Rational> lambda_lo;    // two-sided floor multiplier
  std::optional<Rational> lambda_hi;    // two-sided cap multiplier
  std::vector<Scalar> lengths;
};

// Result of a constructive refinement. The subset is the exact
// proof-construction set; hypothesis failures are reported, never fatal.
struct ShaveResult {
  PointSet subset;
  ShaveParams params;
  std::uint64_t removed = 0;
  // Declared per-point bounds on the profiled quantity (absolute values;
  // cap_lo absent for cap-only constructions).
  std::optional<Rational> cap_lo;
  std::optional<Rational> cap_hi;
  // Extremes the retained points actually achieve.
  std::optional<BigInt> achieved_min;
  std::optional<BigInt> achieved_max;
  bool hypothesis_met = false;
  bool size_bound_asserted = false;
  Rational size_bound;  // asserted lower bound on |subset| when asserted
};

// E' = intersection over t in lengths of {x in E : deg_t(x) <= lambda|E|/q}.
ShaveResult degree_cap_set(const PointSet& E, const std::vector<Scalar>& lengths,
                           const Rational& lambda);

// Two-pass one-edge shaving: cap degrees against |E|, then floor degrees
// within the capped set. c_squared, when supplied, is C^2 for the hypothesis
// |E| >= C q^((d+1)/2) with C > 4 (passing the square keeps C = sqrt(q)
// exact); lambda must then exceed 2C/(C-4).
ShaveResult shave_one_edge(const PointSet& E, const Scalar& t, const Rational& lambda,
                           const std::optional<Rational>& c_squared = {});

// Base-point shaving for an arbitrary distance graph with a base vertex:
// cap the base profile against E, then floor the profile within the capped
// set. Requires lambda2 >= 4 and lambda1 < 2^-n. The caller declares whether
// the statistically-correct sandwich holds above n_threshold; the size bound
// is asserted only when declared and |E| > 2 * n_threshold.
ShaveResult general_shave(const PointSet& E, const DistanceGraph& g, const Rational& lambda1,
                          const Rational& lambda2, bool sandwich_declared,
                          const Rational& n_threshold, const CountOptions& opts = {});

// The profile-capped sets feeding the nondegenerate counts: simplex_capped
// caps the m-simplex profile, facet_capped caps the (m-1)-simplex profile,
// core is their intersection.
struct NondegPrepSets {
  ShaveResult simplex_capped;
  ShaveResult facet_capped;
  PointSet core;
  std::uint64_t removed = 0;       // |E \ core|
  Rational removed_bound;          // 4|E|/lambda'
  bool hypothesis_met = false;
};

NondegPrepSets nondeg_prep_sets(const PointSet& E, unsigned m, const Scalar& t,
                                const Rational& lambda_prime, const CountOptions& opts = {});

// Upper bound (lambda')^k |E|^(mk) / q^(k m(m+1)/2 - m) on degenerate chain
// of simplices embeddings built from the capped profiles.
Rational degenerate_embedding_bound(std::uint64_t set_size, std::uint64_t q, unsigned m,
                                    unsigned k, const Rational& lambda_prime);

// Point-set text format preceded by '#'-comment key=value metadata lines.
void write_shave_result(std::ostream& os, const ShaveResult& r);
void save_shave_result(const std::string& path, const ShaveResult& r);

}  // namespace ffembed

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ffembed/count.hpp"
#include "ffembed/graph.hpp"
#include "ffembed/numeric.hpp"
#include "ffembed/refine.hpp"
#include "ffembed/space.hpp"

namespace ffembed {

enum class TheoremId {
  IR_PAIR_COUNT,
  TREE_EMBED,
  IP_THRESHOLD,
  HOLDER_LEMMA,
  HOLDER_COR,
  DEGEN_GENERAL,
  SHAVE_ONE_EDGE,
  SHAVE_GENERAL,
  HCHAIN_TOTAL,
  HCHAIN_NONDEG_A,
  HCHAIN_NONDEG_B,
  HCHAIN_SUMMARY,
  SIMPLEX_T1,
  SCHAIN_TOTAL,
  SCHAIN_NONDEG,
  STREE_PROP,
  STREE_TOTAL,
  STREE_NONDEG,
};

const char* theorem_id_name(TheoremId id);
std::optional<TheoremId> theorem_id_from_name(const std::string& name);
std::vector<TheoremId> all_theorem_ids();

enum class Verdict { HOLDS, VIOLATED, VACUOUS };
const char* verdict_name(Verdict v);

// Free-form parameter record; each audit validates the fields it needs and
// reports MissingParam otherwise.
struct AuditParams {
  std::optional<Scalar> t;
  std::optional<unsigned> m, k, n;
  std::optional<Rational> epsilon, delta;
  std::optional<Rational> lambda, lambda1, lambda2, lambda_prime;
  std::optional<Rational> c_squared;    // C^2 for shaving hypotheses
  std::optional<Rational> n_threshold;  // declared sandwich threshold
  bool sandwich_declared = false;
  std::vector<Scalar> lengths;          // L
  std::optional<DistanceGraph> graph;   // tree / Holder base / audited graph
  std::vector<std::uint32_t> duplicated;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> skeleton;
  std::string branch;   // HCHAIN_NONDEG_A: "explicit" (default) | "asymptotic"
  std::string variant;  // DEGEN_GENERAL: "count" (default) | "degenerate"
};

struct TheoremReport {
  TheoremId id;
  std::vector<std::pair<std::string, std::string>> params;
  bool hypothesis_met = false;
  std::string relation;  // "geq" | "leq"
  std::string lhs;       // exact integer or rational
  std::string rhs_lo, rhs_hi;
  Verdict verdict = Verdict::VACUOUS;
  std::optional<std::string> witness;
  std::vector<std::pair<std::string, std::string>> extra;
};

// Self-describing text record with stable key order; byte-identical for
// identical inputs.
std::string to_text(const TheoremReport& report);

TheoremReport audit(TheoremId id, const PointSet& E, const AuditParams& params,
                    const CountOptions& opts = {});

// Exact eta(m, l) = (l-1)(m+5)(lm/2+1) - (m+2)l; always integral.
BigInt eta(unsigned m, unsigned ell);

// 12 n^2 q^((d-1)/2 + s) for a connected graph with n vertices and maximum
// degree s, as an exact symbolic power (the exponent is half-integral in
// even dimensions).
PowThreshold ip_threshold(const DistanceGraph& g, std::uint64_t q, unsigned d);

struct RegimeChoice {
  int regime = 0;  // 1, 2, 3 per the optimal-bound ranges
  unsigned lnq_power = 0;
  Rational q_exponent;
  bool exceptional = false;  // k = 3 or (k,d,m) in {(4,2,3),(4,2,4),(5,2,3)}
  std::string description;
};

RegimeChoice regime_summary(unsigned k, unsigned d, unsigned m, std::uint64_t q);

}  // namespace ffembed

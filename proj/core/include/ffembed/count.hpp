#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ffembed/graph.hpp"
#include "ffembed/numeric.hpp"
#include "ffembed/space.hpp"

namespace ffembed {

struct CountOptions {
  // Work budget in node expansions (candidate tests) of the search.
  std::uint64_t budget = 1'000'000'000ull;
  unsigned threads = 0;  // 0 = hardware concurrency
};

// total counts vertex maps that realize every edge length (injectivity not
// required); nondegenerate counts the injective ones. Labeled maps, no
// quotient by automorphisms.
struct EmbeddingCount {
  BigInt total;
  BigInt nondegenerate;
  BigInt degenerate;
};

// Per-point embedding counts for a graph with a distinguished base vertex,
// indexed like the underlying point set.
class BaseProfile {
 public:
  BaseProfile() = default;
  BaseProfile(const PointSet* set, std::vector<BigInt> counts)
      : set_(set), counts_(std::move(counts)) {}

  const PointSet& points() const { return *set_; }
  std::size_t size() const { return counts_.size(); }
  const BigInt& at_index(std::size_t i) const { return counts_[i]; }
  const BigInt& at(const Point& p) const;
  BigInt total() const;

 private:
  const PointSet* set_ = nullptr;
  std::vector<BigInt> counts_;
};

// Exhaustive backtracking over a greedy most-constrained-first vertex order.
// Exact; throws BudgetExceeded when the estimated or actual work passes the
// budget.
EmbeddingCount count_all(const DistanceGraph& g, const PointSet& E, const CountOptions& opts = {});

// Total embedding count alone, factorized over connected components (an
// isolated vertex contributes a factor |E|). Equals count_all().total but
// stays cheap on graphs with many unconstrained vertices.
BigInt total_embeddings(const DistanceGraph& g, const PointSet& E, const CountOptions& opts = {});

// Totals per placement of the graph's base vertex; sums to count_all().total.
BaseProfile base_profile(const DistanceGraph& g, const PointSet& E, const CountOptions& opts = {});

// Lexicographically least embedding in vertex-index order, if any.
std::optional<std::vector<Point>> first_embedding(const DistanceGraph& g, const PointSet& E,
                                                  bool injective,
                                                  const CountOptions& opts = {});

// Total chain embeddings via m profile-propagation passes over the
// distance-t adjacency structure (O(m * |E|^2) instead of O(|E|^(m+1))).
BigInt chain_homomorphism_count(unsigned m, const Scalar& t, const PointSet& E,
                                const CountOptions& opts = {});

// h(x, y) = embeddings of an m-simplex with two designated vertices at x and
// y. Symmetric, zero unless ||x-y|| = t. Stored sparsely on adjacent pairs.
class SimplexPairTable {
 public:
  SimplexPairTable() = default;
  SimplexPairTable(const PointSet* set, std::vector<std::uint32_t> offsets,
                   std::vector<std::uint32_t> nbrs, std::vector<BigInt> values)
      : set_(set), offsets_(std::move(offsets)), nbrs_(std::move(nbrs)), values_(std::move(values)) {}

  const PointSet& points() const { return *set_; }
  BigInt at(std::size_t i, std::size_t j) const;  // 0 on non-adjacent pairs
  // Neighbors of i with their h values.
  std::size_t neighbor_begin(std::size_t i) const { return offsets_[i]; }
  std::size_t neighbor_end(std::size_t i) const { return offsets_[i + 1]; }
  std::uint32_t neighbor(std::size_t slot) const { return nbrs_[slot]; }
  const BigInt& value(std::size_t slot) const { return values_[slot]; }

 private:
  const PointSet* set_ = nullptr;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> nbrs_;
  std::vector<BigInt> values_;
};

SimplexPairTable simplex_pair_table(unsigned m, const Scalar& t, const PointSet& E,
                                    const CountOptions& opts = {});

// Embeddings of the m-simplex with the designated base vertex at each point
// (m = 1 degenerates to edge degrees).
BaseProfile simplex_base_profile(unsigned m, const Scalar& t, const PointSet& E,
                                 const CountOptions& opts = {});

struct ChainOfSimplicesCount {
  BigInt total;
  BaseProfile profile;  // base-vertex profile of the k-chain
};

// DP over chain nodes: profile of the k-chain from k-fold propagation of the
// simplex pair table. Equals count_all(chain_of_simplices(k, m, t), E).total.
ChainOfSimplicesCount simplex_chain_count(unsigned k, unsigned m, const Scalar& t,
                                          const PointSet& E, const CountOptions& opts = {});

// Lower bound N_H^k / N_{H \ S}^(k-1) with the zero-denominator convention
// (0 when the denominator count vanishes).
Rational holder_lower_bound(const DistanceGraph& h, const std::vector<std::uint32_t>& duplicated,
                            unsigned k, const PointSet& E, const CountOptions& opts = {});

}  // namespace ffembed

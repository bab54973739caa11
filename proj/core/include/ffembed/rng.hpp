#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ffembed/numeric.hpp"
#include "ffembed/space.hpp"

namespace ffembed {

// Reproducible RNG contract: the engine is std::mt19937_64 seeded directly
// with the 64-bit seed (its output sequence is fixed by the C++ standard),
// bounded draws use rejection sampling on the top range, and shuffles are
// Fisher-Yates from the last index down. Identical seeds therefore produce
// identical samples on every conforming implementation.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  // Uniform draw in [0, n); n >= 1. Rejects r >= 2^64 - (2^64 mod n).
  std::uint64_t bounded(std::uint64_t n);

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(bounded(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 eng_;
};

// First ceil(density * q^d) codes of a seeded Fisher-Yates shuffle of the
// canonical enumeration of F_q^d. Densities with the same seed are nested.
PointSet random_subset(const Space& sp, const Rational& density, std::uint64_t seed);

// Cartesian power A^d where A is a seeded sample of ceil(density * q)
// field elements.
PointSet product_subset(const Space& sp, const Rational& density, std::uint64_t seed);

std::uint64_t density_to_count(const Rational& density, std::uint64_t total);

}  // namespace ffembed

#include "ffembed/rng.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace ffembed {

namespace mp = boost::multiprecision;

std::uint64_t SeededRng::bounded(std::uint64_t n) {
  if (n == 0) fail(Errc::bad_params, "bounded draw with n = 0");
  if (n == 1) return 0;
  std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % n + 1) % n;
  std::uint64_t r;
  do {
    r = eng_();
  } while (r > limit);
  return r % n;
}

std::uint64_t density_to_count(const Rational& density, std::uint64_t total) {
  if (density <= 0 || density > 1) fail(Errc::bad_density, "density must lie in (0, 1]");
  BigInt num = mp::numerator(density) * total;
  BigInt den = mp::denominator(density);
  BigInt k = (num + den - 1) / den;  // ceil
  return k.convert_to<std::uint64_t>();
}

PointSet random_subset(const Space& sp, const Rational& density, std::uint64_t seed) {
  std::uint64_t total = sp.volume();
  if (total > (1ull << 26)) fail(Errc::budget_exceeded, "sampling beyond 2^26 points");
  std::uint64_t k = density_to_count(density, total);
  std::vector<std::uint64_t> codes(total);
  for (std::uint64_t i = 0; i < total; ++i) codes[i] = i;
  SeededRng rng(seed);
  rng.shuffle(codes);
  codes.resize(k);
  return PointSet(sp, std::move(codes));
}

PointSet product_subset(const Space& sp, const Rational& density, std::uint64_t seed) {
  const Field& f = *sp.field;
  std::uint64_t k = density_to_count(density, f.q());
  std::vector<std::uint64_t> elems(f.q());
  for (std::uint64_t i = 0; i < f.q(); ++i) elems[i] = i;
  SeededRng rng(seed);
  rng.shuffle(elems);
  elems.resize(k);
  std::vector<std::uint64_t> codes;
  std::vector<std::uint64_t> idx(sp.dim, 0), c(sp.dim);
  while (true) {
    for (unsigned i = 0; i < sp.dim; ++i) c[i] = elems[idx[i]];
    codes.push_back(sp.encode(c));
    unsigned i = sp.dim;
    while (i > 0 && idx[i - 1] + 1 == k) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (unsigned j = i; j < sp.dim; ++j) idx[j] = 0;
  }
  return PointSet(sp, std::move(codes));
}

}  // namespace ffembed

#include "ffembed/space.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "ffembed/parallel.hpp"

namespace ffembed {

namespace {
constexpr std::uint64_t kBitsetMaxVolume = 1ull << 24;
constexpr std::uint64_t kEnumerationMaxVolume = 1ull << 26;
constexpr std::uint64_t kMaxVolume = 1ull << 48;
}  // namespace

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn,
                  unsigned threads) {
  if (n == 0) return;
  unsigned hw = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  if (hw <= 1 || n < 1024) {
    fn(0, n);
    return;
  }
  unsigned parts = static_cast<unsigned>(std::min<std::size_t>(hw, n));
  std::vector<std::thread> pool;
  pool.reserve(parts);
  std::size_t chunk = (n + parts - 1) / parts;
  for (unsigned i = 0; i < parts; ++i) {
    std::size_t b = i * chunk, e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&fn, b, e] { fn(b, e); });
  }
  for (auto& t : pool) t.join();
}

Space::Space(std::shared_ptr<const Field> f, unsigned d) : field(std::move(f)), dim(d) {
  if (!field) fail(Errc::bad_params, "space requires a field");
  if (d < 1) fail(Errc::bad_params, "dimension must be >= 1");
  std::uint64_t v = 1;
  for (unsigned i = 0; i < d; ++i) {
    if (v > kMaxVolume / field->q()) fail(Errc::unsupported, "q^d exceeds supported volume");
    v *= field->q();
  }
  volume_ = v;
}

std::uint64_t Space::encode(std::span<const std::uint64_t> coords) const {
  std::uint64_t code = 0;
  for (std::uint64_t c : coords) code = code * field->q() + c;
  return code;
}

void Space::decode(std::uint64_t code, std::span<std::uint64_t> out) const {
  for (unsigned i = dim; i-- > 0;) {
    out[i] = code % field->q();
    code /= field->q();
  }
}

Point::Point(Space sp, std::vector<std::uint64_t> coord_encodings)
    : sp_(std::move(sp)), c_(std::move(coord_encodings)) {
  if (c_.size() != sp_.dim) fail(Errc::bad_params, "coordinate count does not match dimension");
  for (std::uint64_t v : c_)
    if (v >= sp_.q()) fail(Errc::bad_params, "coordinate encoding out of range");
}

Point Point::from_code(const Space& sp, std::uint64_t code) {
  std::vector<std::uint64_t> c(sp.dim);
  sp.decode(code, c);
  return Point(sp, std::move(c));
}

Scalar Point::coord(unsigned i) const { return sp_.field->element(c_[i]); }

std::uint64_t Point::code() const { return sp_.encode(c_); }

bool Point::operator==(const Point& o) const {
  if (sp_ != o.sp_) fail(Errc::space_mismatch, "points from different spaces");
  return c_ == o.c_;
}

bool Point::operator<(const Point& o) const {
  if (sp_ != o.sp_) fail(Errc::space_mismatch, "points from different spaces");
  return c_ < o.c_;
}

std::string Point::str() const {
  std::string out;
  for (unsigned i = 0; i < dim(); ++i) {
    if (i) out += ' ';
    out += sp_.field->format(c_[i]);
  }
  return out;
}

PointSet::PointSet(Space sp, std::vector<std::uint64_t> codes)
    : sp_(std::move(sp)), codes_(std::move(codes)) {
  std::sort(codes_.begin(), codes_.end());
  codes_.erase(std::unique(codes_.begin(), codes_.end()), codes_.end());
  if (!codes_.empty() && codes_.back() >= sp_.volume())
    fail(Errc::bad_params, "point code out of range");
  if (sp_.volume() <= kBitsetMaxVolume) {
    bits_.assign((sp_.volume() + 63) / 64, 0);
    for (std::uint64_t c : codes_) bits_[c >> 6] |= 1ull << (c & 63);
  }
}

PointSet PointSet::from_points(const Space& sp, const std::vector<Point>& pts) {
  std::vector<std::uint64_t> codes;
  codes.reserve(pts.size());
  for (const Point& p : pts) {
    if (p.space() != sp) fail(Errc::space_mismatch, "point from a different space");
    codes.push_back(p.code());
  }
  return PointSet(sp, std::move(codes));
}

PointSet PointSet::full_space(const Space& sp) {
  if (sp.volume() > kEnumerationMaxVolume)
    fail(Errc::budget_exceeded, "full-space enumeration beyond 2^26 points");
  std::vector<std::uint64_t> codes(sp.volume());
  for (std::uint64_t i = 0; i < sp.volume(); ++i) codes[i] = i;
  return PointSet(sp, std::move(codes));
}

Point PointSet::at(std::size_t i) const { return Point::from_code(sp_, codes_[i]); }

bool PointSet::contains_code(std::uint64_t code) const {
  if (code >= sp_.volume()) return false;
  if (!bits_.empty()) return (bits_[code >> 6] >> (code & 63)) & 1;
  return std::binary_search(codes_.begin(), codes_.end(), code);
}

bool PointSet::contains(const Point& p) const {
  if (p.space() != sp_) fail(Errc::space_mismatch, "membership query from a different space");
  return contains_code(p.code());
}

std::optional<std::size_t> PointSet::index_of_code(std::uint64_t code) const {
  auto it = std::lower_bound(codes_.begin(), codes_.end(), code);
  if (it == codes_.end() || *it != code) return std::nullopt;
  return static_cast<std::size_t>(it - codes_.begin());
}

PointSet PointSet::translate(const Point& v) const {
  if (v.space() != sp_) fail(Errc::space_mismatch, "translation vector from a different space");
  const Field& f = *sp_.field;
  std::vector<std::uint64_t> out;
  out.reserve(codes_.size());
  std::vector<std::uint64_t> c(sp_.dim);
  for (std::uint64_t code : codes_) {
    sp_.decode(code, c);
    for (unsigned i = 0; i < sp_.dim; ++i) c[i] = f.add(c[i], v.coord_encoding(i));
    out.push_back(sp_.encode(c));
  }
  return PointSet(sp_, std::move(out));
}

Scalar norm(const Point& x) {
  const Field& f = *x.space().field;
  std::uint64_t acc = 0;
  for (unsigned i = 0; i < x.dim(); ++i) {
    std::uint64_t c = x.coord_encoding(i);
    acc = f.add(acc, f.mul(c, c));
  }
  return Scalar(&f, acc);
}

Scalar dist(const Point& x, const Point& y) {
  if (x.space() != y.space()) fail(Errc::space_mismatch, "distance across spaces");
  const Field& f = *x.space().field;
  std::uint64_t acc = 0;
  for (unsigned i = 0; i < x.dim(); ++i) {
    std::uint64_t dc = f.sub(x.coord_encoding(i), y.coord_encoding(i));
    acc = f.add(acc, f.mul(dc, dc));
  }
  return Scalar(&f, acc);
}

namespace {

std::uint64_t dist_code(const Space& sp, std::uint64_t a, std::uint64_t b,
                        std::vector<std::uint64_t>& ca, std::vector<std::uint64_t>& cb) {
  const Field& f = *sp.field;
  sp.decode(a, ca);
  sp.decode(b, cb);
  std::uint64_t acc = 0;
  for (unsigned i = 0; i < sp.dim; ++i) {
    std::uint64_t dc = f.sub(ca[i], cb[i]);
    acc = f.add(acc, f.mul(dc, dc));
  }
  return acc;
}

}  // namespace

std::vector<Scalar> distance_set(const PointSet& E) {
  if (E.empty()) fail(Errc::empty_set, "distance set of an empty set");
  const Space& sp = E.space();
  const Field& f = *sp.field;
  std::vector<char> seen(f.q(), 0);
  std::size_t found = 0;
  std::vector<std::uint64_t> ca(sp.dim), cb(sp.dim);
  for (std::size_t i = 0; i < E.size() && found < f.q(); ++i) {
    for (std::size_t j = i; j < E.size() && found < f.q(); ++j) {
      std::uint64_t v = dist_code(sp, E.code_at(i), E.code_at(j), ca, cb);
      if (!seen[v]) {
        seen[v] = 1;
        ++found;
      }
    }
  }
  std::vector<Scalar> out;
  for (std::uint64_t v = 0; v < f.q(); ++v)
    if (seen[v]) out.push_back(Scalar(&f, v));
  return out;
}

const PointSet& sphere(const std::shared_ptr<const Field>& field, unsigned d, const Scalar& t) {
  if (&t.field() != field.get()) fail(Errc::field_mismatch, "radius from a different field");
  static std::mutex mu;
  static std::map<std::tuple<std::uint64_t, unsigned, std::uint64_t>,
                  std::unique_ptr<const PointSet>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(field->q(), d, t.encoding());
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;

  Space sp(field, d);
  if (sp.volume() > kEnumerationMaxVolume)
    fail(Errc::budget_exceeded, "sphere enumeration beyond 2^26 points");
  const Field& f = *field;
  // odometer over coordinate tuples with cached partial norms
  std::vector<std::uint64_t> c(d, 0), prefix(d + 1, 0);
  std::vector<std::uint64_t> codes;
  for (unsigned i = 0; i < d; ++i) prefix[i + 1] = prefix[i];
  std::uint64_t code = 0;
  while (true) {
    if (prefix[d] == t.encoding()) codes.push_back(code);
    unsigned i = d;
    while (i > 0 && c[i - 1] == f.q() - 1) --i;
    if (i == 0) break;
    ++c[i - 1];
    for (unsigned j = i - 1; j < d; ++j) {
      if (j > i - 1) c[j] = 0;
      prefix[j + 1] = f.add(prefix[j], f.mul(c[j], c[j]));
    }
    code = sp.encode(c);
  }
  auto owned = std::make_unique<PointSet>(sp, std::move(codes));
  const PointSet& ref = *owned;
  cache.emplace(key, std::move(owned));
  return ref;
}

namespace {

// Count of y in E at distance t from the point with code xcode. Uses the
// translated sphere when it is the smaller side, otherwise scans E.
std::uint64_t degree_one(const PointSet& E, const PointSet* S, std::uint64_t t_enc,
                         std::uint64_t xcode) {
  const Space& sp = E.space();
  const Field& f = *sp.field;
  std::uint64_t count = 0;
  if (S) {
    std::vector<std::uint64_t> cx(sp.dim), cs(sp.dim), sum(sp.dim);
    sp.decode(xcode, cx);
    for (std::size_t i = 0; i < S->size(); ++i) {
      sp.decode(S->code_at(i), cs);
      for (unsigned j = 0; j < sp.dim; ++j) sum[j] = f.add(cs[j], cx[j]);
      if (E.contains_code(sp.encode(sum))) ++count;
    }
    return count;
  }
  std::vector<std::uint64_t> ca(sp.dim), cb(sp.dim);
  for (std::size_t i = 0; i < E.size(); ++i)
    if (dist_code(sp, xcode, E.code_at(i), ca, cb) == t_enc) ++count;
  return count;
}

const PointSet* sphere_if_cheaper(const PointSet& E, const Scalar& t) {
  const Space& sp = E.space();
  if (sp.volume() > kEnumerationMaxVolume) return nullptr;
  const PointSet& S = sphere(sp.field, sp.dim, t);
  return S.size() < E.size() ? &S : nullptr;
}

}  // namespace

std::uint64_t edge_degree(const PointSet& E, const Scalar& t, const Point& x) {
  if (&t.field() != E.space().field.get()) fail(Errc::field_mismatch, "length from a different field");
  if (t.is_zero()) fail(Errc::zero_distance, "edge degree requires t != 0");
  if (x.space() != E.space()) fail(Errc::space_mismatch, "center from a different space");
  return degree_one(E, sphere_if_cheaper(E, t), t.encoding(), x.code());
}

std::vector<std::uint64_t> all_edge_degrees(const PointSet& E, const Scalar& t) {
  if (&t.field() != E.space().field.get()) fail(Errc::field_mismatch, "length from a different field");
  if (t.is_zero()) fail(Errc::zero_distance, "edge degree requires t != 0");
  const PointSet* S = sphere_if_cheaper(E, t);
  std::vector<std::uint64_t> deg(E.size(), 0);
  parallel_for(E.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) deg[i] = degree_one(E, S, t.encoding(), E.code_at(i));
  });
  return deg;
}

std::uint64_t pair_count(const PointSet& E, const Scalar& t) {
  if (t.is_zero()) fail(Errc::zero_distance, "pair count requires t != 0");
  auto deg = all_edge_degrees(E, t);
  std::uint64_t total = 0;
  for (std::uint64_t d : deg) total += d;
  return total;
}

PointSet isotropic_line(const std::shared_ptr<const Field>& field) {
  const Field& f = *field;
  auto i = f.sqrt(f.neg(1));
  if (!i) fail(Errc::no_sqrt_minus_one, "-1 is not a square in F_" + std::to_string(f.q()));
  Space sp(field, 2);
  std::vector<std::uint64_t> codes;
  codes.reserve(f.q());
  for (std::uint64_t t = 0; t < f.q(); ++t) {
    std::uint64_t c[2] = {t, f.mul(*i, t)};
    codes.push_back(sp.encode(c));
  }
  return PointSet(sp, std::move(codes));
}

void write_point_set(std::ostream& os, const PointSet& E,
                     const std::vector<std::string>& header_comments) {
  const Space& sp = E.space();
  os << sp.q() << ' ' << sp.dim << '\n';
  for (const auto& c : header_comments) os << "# " << c << '\n';
  for (std::size_t i = 0; i < E.size(); ++i) os << E.at(i).str() << '\n';
}

PointSet read_point_set(std::istream& is) {
  std::string line;
  std::uint64_t q = 0;
  unsigned d = 0;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream head(line);
    if (!(head >> q >> d)) fail(Errc::io_error, "malformed header line");
    break;
  }
  if (q == 0) fail(Errc::io_error, "missing header line");
  auto field = Field::make(q);
  Space sp(field, d);
  std::vector<std::uint64_t> codes;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    std::vector<std::uint64_t> c(d);
    std::string tok;
    for (unsigned i = 0; i < d; ++i) {
      if (!(row >> tok)) fail(Errc::io_error, "point line with too few coordinates");
      c[i] = field->parse(tok);
    }
    if (row >> tok) fail(Errc::io_error, "point line with too many coordinates");
    codes.push_back(sp.encode(c));
  }
  return PointSet(sp, std::move(codes));
}

void save_point_set(const std::string& path, const PointSet& E,
                    const std::vector<std::string>& header_comments) {
  std::ofstream os(path);
  if (!os) fail(Errc::io_error, "cannot open " + path + " for writing");
  write_point_set(os, E, header_comments);
}

PointSet load_point_set(const std::string& path) {
  std::ifstream is(path);
  if (!is) fail(Errc::io_error, "cannot open " + path);
  return read_point_set(is);
}

}  // namespace ffembed

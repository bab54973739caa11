#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ffembed/field.hpp"

namespace ffembed {

// Ambient space F_q^d. Copyable value; two spaces are equal when they share
// the same Field instance and dimension.
struct Space {
  std::shared_ptr<const Field> field;
  unsigned dim = 0;

  Space() = default;
  Space(std::shared_ptr<const Field> f, unsigned d);

  std::uint64_t q() const { return field->q(); }
  // q^d; construction rejects spaces beyond the enumeration budget (2^26).
  std::uint64_t volume() const { return volume_; }

  std::uint64_t encode(std::span<const std::uint64_t> coords) const;
  void decode(std::uint64_t code, std::span<std::uint64_t> out) const;

  bool operator==(const Space& o) const { return field.get() == o.field.get() && dim == o.dim; }
  bool operator!=(const Space& o) const { return !(*this == o); }

 private:
  std::uint64_t volume_ = 0;
};

class Point {
 public:
  Point() = default;
  Point(Space sp, std::vector<std::uint64_t> coord_encodings);
  static Point from_code(const Space& sp, std::uint64_t code);

  const Space& space() const { return sp_; }
  unsigned dim() const { return sp_.dim; }
  Scalar coord(unsigned i) const;
  std::uint64_t coord_encoding(unsigned i) const { return c_[i]; }
  std::uint64_t code() const;

  bool operator==(const Point& o) const;
  bool operator<(const Point& o) const;  // lexicographic on encodings

  std::string str() const;

 private:
  Space sp_;
  std::vector<std::uint64_t> c_;
};

// Deduplicated set of points in canonical (lexicographic) order. Immutable
// after construction. Membership is answered through a bitset over point
// codes when q^d <= 2^24 and by binary search otherwise.
class PointSet {
 public:
  PointSet() = default;
  PointSet(Space sp, std::vector<std::uint64_t> codes);  // dedups and sorts
  static PointSet from_points(const Space& sp, const std::vector<Point>& pts);
  static PointSet full_space(const Space& sp);

  const Space& space() const { return sp_; }
  std::size_t size() const { return codes_.size(); }
  bool empty() const { return codes_.empty(); }
  const std::vector<std::uint64_t>& codes() const { return codes_; }
  Point at(std::size_t i) const;
  std::uint64_t code_at(std::size_t i) const { return codes_[i]; }
  bool contains_code(std::uint64_t code) const;
  bool contains(const Point& p) const;
  std::optional<std::size_t> index_of_code(std::uint64_t code) const;

  PointSet translate(const Point& v) const;

 private:
  Space sp_;
  std::vector<std::uint64_t> codes_;
  std::vector<std::uint64_t> bits_;  // present iff bitset mode
};

Scalar norm(const Point& x);
Scalar dist(const Point& x, const Point& y);

// Exact set of pairwise distances {||x-y|| : x,y in E}; error on empty E.
std::vector<Scalar> distance_set(const PointSet& E);

// Number of ordered pairs (x,y) in E x E with ||x-y|| = t, t != 0.
std::uint64_t pair_count(const PointSet& E, const Scalar& t);

// Number of y in E with ||x-y|| = t; x need not lie in E.
std::uint64_t edge_degree(const PointSet& E, const Scalar& t, const Point& x);
// Degrees for every point of E in one pass (parallel over points).
std::vector<std::uint64_t> all_edge_degrees(const PointSet& E, const Scalar& t);

// All x in F_q^d with ||x|| = t, by enumeration; cached per (q, d, t).
const PointSet& sphere(const std::shared_ptr<const Field>& field, unsigned d, const Scalar& t);

// The q points (t, i*t) with i the canonical square root of -1; requires
// q = 1 mod 4.
PointSet isotropic_line(const std::shared_ptr<const Field>& field);

// Text format: line 1 "q d", optional '#' comment lines, then one point per
// line as d coordinate tokens separated by single spaces.
void write_point_set(std::ostream& os, const PointSet& E,
                     const std::vector<std::string>& header_comments = {});
PointSet read_point_set(std::istream& is);
void save_point_set(const std::string& path, const PointSet& E,
                    const std::vector<std::string>& header_comments = {});
PointSet load_point_set(const std::string& path);

}  // namespace ffembed

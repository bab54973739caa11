#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ffembed/field.hpp"

namespace ffembed {

struct GraphEdge {
  std::uint32_t u, v;  // u < v
  Scalar length;       // nonzero
};

// Distance graph: labeled vertices [0, n), edges carrying nonzero lengths in
// F_q^*, and an optional distinguished base vertex. Immutable value object.
//
// Canonical vertex numberings of the constructors:
//   star(k):                0 = center (base), 1..k = leaves
//   chain(m):               0..m along the path, base = 0
//   simplex(m):             0..m, base = 0
//   chain_of_simplices(k,m): chain nodes at 0, m, 2m, ..., km; simplex j
//                           spans {jm, ..., (j+1)m}; base = 0
//   tree_of_simplices:      skeleton nodes keep their indices 0..l, interior
//                           vertices appended per skeleton edge in input
//                           order; base = 0
//   holder_extension:       original vertices keep their indices; copy layer
//                           i (1-based) maps the j-th smallest vertex of S to
//                           |V| + (i-1)|S| + j
//   holder_chain(k,m):      0 = left endpoint, path i interior vertices
//                           1+i(m-1) .. (i+1)(m-1), right endpoint = k(m-1)+1;
//                           base = 0
class DistanceGraph {
 public:
  DistanceGraph() = default;
  DistanceGraph(std::uint32_t n_vertices, std::vector<GraphEdge> edges,
                std::optional<std::uint32_t> base_vertex = std::nullopt);

  std::uint32_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<GraphEdge>& edges() const { return edges_; }
  std::optional<std::uint32_t> base_vertex() const { return base_; }
  DistanceGraph with_base(std::uint32_t v) const;

  std::uint32_t degree(std::uint32_t v) const;
  std::uint32_t max_degree() const;
  bool is_connected() const { return connected_; }
  // Field of the edge lengths; nullptr for edgeless graphs.
  const Field* field() const { return field_; }

  // Induced subgraph on the complement of `removed` (vertices renumbered in
  // increasing order of surviving original indices; base dropped if removed).
  DistanceGraph remove_vertices(const std::vector<std::uint32_t>& removed) const;

 private:
  std::uint32_t n_ = 0;
  std::vector<GraphEdge> edges_;
  std::optional<std::uint32_t> base_;
  bool connected_ = true;
  const Field* field_ = nullptr;
};

struct HolderSpec {
  DistanceGraph base;                    // H
  std::vector<std::uint32_t> duplicated; // S, nonempty subset of V(H)
  std::uint32_t fold = 2;                // k >= 2
};

DistanceGraph star(unsigned k, const Scalar& t);
DistanceGraph chain(unsigned m, const Scalar& t);
DistanceGraph simplex(unsigned m, const Scalar& t);
DistanceGraph chain_of_simplices(unsigned k, unsigned m, const Scalar& t);
DistanceGraph tree_of_simplices(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& skeleton,
                                unsigned m, const Scalar& t);
DistanceGraph holder_extension(const HolderSpec& spec);
// k internally disjoint paths of length m between two endpoints. k = 2 (a
// 2m-cycle) is rejected unless allow_cycle is set.
DistanceGraph holder_chain(unsigned k, unsigned m, const Scalar& t, bool allow_cycle = false);

// Text format: line 1 "n_vertices base_vertex" (base -1 when unset), then
// one "u v lambda" line per edge in canonical order.
void write_graph(std::ostream& os, const DistanceGraph& g);
DistanceGraph read_graph(std::istream& is, const std::shared_ptr<const Field>& field);

}  // namespace ffembed

#include "ffembed/graph.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace ffembed {

namespace {

struct Dsu {
  std::vector<std::uint32_t> parent;
  explicit Dsu(std::uint32_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }
};

}  // namespace

DistanceGraph::DistanceGraph(std::uint32_t n_vertices, std::vector<GraphEdge> edges,
                             std::optional<std::uint32_t> base_vertex)
    : n_(n_vertices), edges_(std::move(edges)), base_(base_vertex) {
  for (auto& e : edges_) {
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u == e.v) fail(Errc::bad_params, "self-loop");
    if (e.v >= n_) fail(Errc::bad_params, "edge endpoint out of range");
    if (e.length.is_zero()) fail(Errc::bad_params, "zero edge length");
    if (!field_) field_ = &e.length.field();
    if (field_ != &e.length.field()) fail(Errc::field_mismatch, "edge lengths from different fields");
  }
  std::sort(edges_.begin(), edges_.end(), [](const GraphEdge& a, const GraphEdge& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  for (std::size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i - 1].u == edges_[i].u && edges_[i - 1].v == edges_[i].v)
      fail(Errc::bad_params, "duplicate edge");
  if (base_ && *base_ >= n_) fail(Errc::bad_params, "base vertex out of range");
  if (n_ > 0) {
    Dsu dsu(n_);
    std::uint32_t comps = n_;
    for (const auto& e : edges_)
      if (dsu.unite(e.u, e.v)) --comps;
    connected_ = comps == 1;
  }
}

DistanceGraph DistanceGraph::with_base(std::uint32_t v) const {
  DistanceGraph g = *this;
  if (v >= n_) fail(Errc::bad_params, "base vertex out of range");
  g.base_ = v;
  return g;
}

std::uint32_t DistanceGraph::degree(std::uint32_t v) const {
  if (v >= n_) fail(Errc::bad_params, "vertex out of range");
  std::uint32_t d = 0;
  for (const auto& e : edges_) d += (e.u == v) + (e.v == v);
  return d;
}

std::uint32_t DistanceGraph::max_degree() const {
  std::vector<std::uint32_t> deg(n_, 0);
  for (const auto& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

DistanceGraph DistanceGraph::remove_vertices(const std::vector<std::uint32_t>& removed) const {
  std::vector<char> gone(n_, 0);
  for (std::uint32_t v : removed) {
    if (v >= n_) fail(Errc::bad_params, "removed vertex out of range");
    gone[v] = 1;
  }
  std::vector<std::uint32_t> remap(n_, 0);
  std::uint32_t next = 0;
  for (std::uint32_t v = 0; v < n_; ++v)
    if (!gone[v]) remap[v] = next++;
  std::vector<GraphEdge> kept;
  for (const auto& e : edges_)
    if (!gone[e.u] && !gone[e.v]) kept.push_back({remap[e.u], remap[e.v], e.length});
  std::optional<std::uint32_t> base;
  if (base_ && !gone[*base_]) base = remap[*base_];
  return DistanceGraph(next, std::move(kept), base);
}

DistanceGraph star(unsigned k, const Scalar& t) {
  if (k < 1) fail(Errc::bad_params, "star requires k >= 1");
  if (t.is_zero()) fail(Errc::bad_params, "star requires t != 0");
  std::vector<GraphEdge> edges;
  for (unsigned i = 1; i <= k; ++i) edges.push_back({0, i, t});
  return DistanceGraph(k + 1, std::move(edges), 0);
}

DistanceGraph chain(unsigned m, const Scalar& t) {
  if (m < 1) fail(Errc::bad_params, "chain requires m >= 1");
  if (t.is_zero()) fail(Errc::bad_params, "chain requires t != 0");
  std::vector<GraphEdge> edges;
  for (unsigned i = 0; i < m; ++i) edges.push_back({i, i + 1, t});
  return DistanceGraph(m + 1, std::move(edges), 0);
}

DistanceGraph simplex(unsigned m, const Scalar& t) {
  if (m < 1) fail(Errc::bad_params, "simplex requires m >= 1");
  if (t.is_zero()) fail(Errc::bad_params, "simplex requires t != 0");
  std::vector<GraphEdge> edges;
  for (unsigned i = 0; i <= m; ++i)
    for (unsigned j = i + 1; j <= m; ++j) edges.push_back({i, j, t});
  return DistanceGraph(m + 1, std::move(edges), 0);
}

DistanceGraph chain_of_simplices(unsigned k, unsigned m, const Scalar& t) {
  if (k < 1 || m < 2) fail(Errc::bad_params, "chain of simplices requires k >= 1, m >= 2");
  if (t.is_zero()) fail(Errc::bad_params, "chain of simplices requires t != 0");
  std::vector<GraphEdge> edges;
  for (unsigned s = 0; s < k; ++s) {
    unsigned lo = s * m;
    for (unsigned i = 0; i <= m; ++i)
      for (unsigned j = i + 1; j <= m; ++j) edges.push_back({lo + i, lo + j, t});
  }
  return DistanceGraph(m * k + 1, std::move(edges), 0);
}

DistanceGraph tree_of_simplices(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& skeleton,
                                unsigned m, const Scalar& t) {
  if (skeleton.empty()) fail(Errc::bad_params, "skeleton must have at least one edge");
  if (m < 2) fail(Errc::bad_params, "tree of simplices requires m >= 2");
  if (t.is_zero()) fail(Errc::bad_params, "tree of simplices requires t != 0");
  std::uint32_t ell = static_cast<std::uint32_t>(skeleton.size());
  std::uint32_t nodes = ell + 1;
  for (auto [u, v] : skeleton)
    if (u >= nodes || v >= nodes || u == v)
      fail(Errc::not_a_tree, "skeleton vertices must be 0..#edges without self-loops");
  Dsu dsu(nodes);
  for (auto [u, v] : skeleton)
    if (!dsu.unite(u, v)) fail(Errc::not_a_tree, "skeleton has a cycle");
  // nodes == edges + 1 and acyclic => connected tree

  std::vector<GraphEdge> edges;
  std::uint32_t next_interior = nodes;
  for (auto [u, v] : skeleton) {
    std::vector<std::uint32_t> verts = {u, v};
    for (unsigned i = 0; i + 1 < m; ++i) verts.push_back(next_interior++);
    for (std::size_t i = 0; i < verts.size(); ++i)
      for (std::size_t j = i + 1; j < verts.size(); ++j) edges.push_back({verts[i], verts[j], t});
  }
  return DistanceGraph(m * ell + 1, std::move(edges), 0);
}

DistanceGraph holder_extension(const HolderSpec& spec) {
  const DistanceGraph& h = spec.base;
  if (spec.fold < 2) fail(Errc::bad_params, "Holder extension requires fold >= 2");
  if (spec.duplicated.empty()) fail(Errc::bad_params, "duplicated set must be nonempty");
  std::vector<char> in_s(h.vertex_count(), 0);
  for (std::uint32_t v : spec.duplicated) {
    if (v >= h.vertex_count()) fail(Errc::bad_params, "duplicated vertex out of range");
    in_s[v] = 1;
  }
  std::vector<std::uint32_t> s_sorted;
  for (std::uint32_t v = 0; v < h.vertex_count(); ++v)
    if (in_s[v]) s_sorted.push_back(v);
  std::vector<std::uint32_t> rank(h.vertex_count(), 0);
  for (std::uint32_t i = 0; i < s_sorted.size(); ++i) rank[s_sorted[i]] = i;

  std::uint32_t nv = h.vertex_count();
  std::uint32_t ns = static_cast<std::uint32_t>(s_sorted.size());
  std::uint32_t total = nv + (spec.fold - 1) * ns;
  auto copy_index = [&](std::uint32_t layer, std::uint32_t orig) {
    return nv + (layer - 1) * ns + rank[orig];
  };

  std::vector<GraphEdge> edges = h.edges();
  for (std::uint32_t layer = 1; layer < spec.fold; ++layer) {
    for (const auto& e : h.edges()) {
      bool us = in_s[e.u], vs = in_s[e.v];
      if (us && vs)
        edges.push_back({copy_index(layer, e.u), copy_index(layer, e.v), e.length});
      else if (us)
        edges.push_back({copy_index(layer, e.u), e.v, e.length});
      else if (vs)
        edges.push_back({e.u, copy_index(layer, e.v), e.length});
      // edges inside V \ S are not duplicated
    }
  }
  return DistanceGraph(total, std::move(edges), h.base_vertex());
}

DistanceGraph holder_chain(unsigned k, unsigned m, const Scalar& t, bool allow_cycle) {
  if (m < 2) fail(Errc::bad_params, "holder chain requires m >= 2");
  if (k < 3 && !(k == 2 && allow_cycle))
    fail(Errc::bad_params, "holder chain requires k >= 3 (k = 2 only with allow_cycle)");
  if (t.is_zero()) fail(Errc::bad_params, "holder chain requires t != 0");
  std::uint32_t right = k * (m - 1) + 1;
  std::vector<GraphEdge> edges;
  for (unsigned path = 0; path < k; ++path) {
    std::uint32_t first = 1 + path * (m - 1);
    edges.push_back({0, first, t});
    for (unsigned i = 0; i + 1 < m - 1; ++i) edges.push_back({first + i, first + i + 1, t});
    edges.push_back({first + (m - 2), right, t});
  }
  return DistanceGraph(right + 1, std::move(edges), 0);
}

void write_graph(std::ostream& os, const DistanceGraph& g) {
  os << g.vertex_count() << ' ' << (g.base_vertex() ? static_cast<long long>(*g.base_vertex()) : -1)
     << '\n';
  for (const auto& e : g.edges()) os << e.u << ' ' << e.v << ' ' << e.length.str() << '\n';
}

DistanceGraph read_graph(std::istream& is, const std::shared_ptr<const Field>& field) {
  std::string line;
  std::uint32_t n = 0;
  long long base = -1;
  bool have_header = false;
  std::vector<GraphEdge> edges;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    if (!have_header) {
      if (!(row >> n >> base)) fail(Errc::io_error, "malformed graph header");
      have_header = true;
      continue;
    }
    std::uint32_t u, v;
    std::string tok;
    if (!(row >> u >> v >> tok)) fail(Errc::io_error, "malformed edge line");
    edges.push_back({u, v, Scalar(field.get(), field->parse(tok))});
  }
  if (!have_header) fail(Errc::io_error, "missing graph header");
  std::optional<std::uint32_t> b;
  if (base >= 0) b = static_cast<std::uint32_t>(base);
  return DistanceGraph(n, std::move(edges), b);
}

}  // namespace ffembed

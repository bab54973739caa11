#include "ffembed/count.hpp"

#include <algorithm>
#include <map>
#include <atomic>
#include <memory>
#include <numeric>
#include <thread>

namespace ffembed {

namespace {

constexpr std::uint64_t kEnumerationMaxVolume = 1ull << 26;

struct Budget {
  std::uint64_t limit;
  std::atomic<std::uint64_t> used{0};
  void charge(std::uint64_t n = 1) {
    if (used.fetch_add(n, std::memory_order_relaxed) + n > limit)
      fail(Errc::budget_exceeded,
           "work budget of " + std::to_string(limit) + " expansions exceeded");
  }
};

// Decoded coordinates of every point of E, for O(d) distance tests between
// point indices.
struct SetView {
  const PointSet& E;
  const Field& f;
  unsigned d;
  std::vector<std::uint64_t> coords;

  explicit SetView(const PointSet& set)
      : E(set), f(*set.space().field), d(set.space().dim) {
    coords.resize(set.size() * d);
    std::vector<std::uint64_t> c(d);
    for (std::size_t i = 0; i < set.size(); ++i) {
      set.space().decode(set.code_at(i), c);
      std::copy(c.begin(), c.end(), coords.begin() + static_cast<std::ptrdiff_t>(i * d));
    }
  }

  bool at_distance(std::uint32_t i, std::uint32_t j, std::uint64_t t_enc) const {
    const std::uint64_t* a = &coords[std::size_t(i) * d];
    const std::uint64_t* b = &coords[std::size_t(j) * d];
    std::uint64_t acc = 0;
    for (unsigned x = 0; x < d; ++x) {
      std::uint64_t dc = f.sub(a[x], b[x]);
      acc = f.add(acc, f.mul(dc, dc));
    }
    return acc == t_enc;
  }
};

struct LengthAdj {
  std::vector<std::uint32_t> offsets;  // size N+1
  std::vector<std::uint32_t> nbrs;     // sorted within each row
  std::uint32_t max_deg = 0;

  std::size_t row_begin(std::uint32_t i) const { return offsets[i]; }
  std::size_t row_end(std::uint32_t i) const { return offsets[i + 1]; }
  std::uint32_t deg(std::uint32_t i) const { return offsets[i + 1] - offsets[i]; }
};

LengthAdj build_adjacency(const SetView& view, std::uint64_t t_enc, Budget& budget) {
  const PointSet& E = view.E;
  const Space& sp = E.space();
  std::size_t n = E.size();
  std::vector<std::vector<std::uint32_t>> rows(n);
  const PointSet* S = nullptr;
  if (sp.volume() <= kEnumerationMaxVolume) {
    const PointSet& sph = sphere(sp.field, sp.dim, Scalar(&view.f, t_enc));
    if (sph.size() < n) S = &sph;
  }
  if (S) {
    std::vector<std::uint64_t> cs(sp.dim), sum(sp.dim);
    std::vector<std::uint64_t> sphere_coords(S->size() * sp.dim);
    std::vector<std::uint64_t> c(sp.dim);
    for (std::size_t i = 0; i < S->size(); ++i) {
      sp.decode(S->code_at(i), c);
      std::copy(c.begin(), c.end(), sphere_coords.begin() + static_cast<std::ptrdiff_t>(i * sp.dim));
    }
    for (std::size_t i = 0; i < n; ++i) {
      budget.charge(S->size());
      const std::uint64_t* x = &view.coords[i * sp.dim];
      for (std::size_t s = 0; s < S->size(); ++s) {
        const std::uint64_t* off = &sphere_coords[s * sp.dim];
        for (unsigned j = 0; j < sp.dim; ++j) sum[j] = view.f.add(x[j], off[j]);
        auto idx = E.index_of_code(sp.encode(sum));
        if (idx) rows[i].push_back(static_cast<std::uint32_t>(*idx));
      }
      std::sort(rows[i].begin(), rows[i].end());
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      budget.charge(n);
      for (std::size_t j = 0; j < n; ++j)
        if (view.at_distance(static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), t_enc))
          rows[i].push_back(static_cast<std::uint32_t>(j));
    }
  }
  LengthAdj adj;
  adj.offsets.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) adj.offsets[i + 1] = adj.offsets[i] + static_cast<std::uint32_t>(rows[i].size());
  adj.nbrs.reserve(adj.offsets[n]);
  for (auto& r : rows) adj.nbrs.insert(adj.nbrs.end(), r.begin(), r.end());
  for (std::size_t i = 0; i < n; ++i) adj.max_deg = std::max(adj.max_deg, adj.deg(static_cast<std::uint32_t>(i)));
  return adj;
}

struct BackEdge {
  std::uint32_t pos;       // position of the earlier endpoint in the order
  std::uint64_t length;    // edge length encoding
};

// Greedy most-constrained-first vertex order: repeatedly take the unplaced
// vertex with the most edges into the placed set (ties: larger total degree,
// then smaller index). New components start at their max-degree vertex.
std::vector<std::uint32_t> greedy_order(const DistanceGraph& g,
                                        std::optional<std::uint32_t> forced_first) {
  std::uint32_t n = g.vertex_count();
  std::vector<std::uint32_t> deg(n, 0);
  for (const auto& e : g.edges()) {
    ++deg[e.u];
    ++deg[e.v];
  }
  std::vector<char> placed(n, 0);
  std::vector<std::uint32_t> back(n, 0), order;
  order.reserve(n);
  auto place = [&](std::uint32_t v) {
    placed[v] = 1;
    order.push_back(v);
    for (const auto& e : g.edges()) {
      if (e.u == v && !placed[e.v]) ++back[e.v];
      if (e.v == v && !placed[e.u]) ++back[e.u];
    }
  };
  if (forced_first) place(*forced_first);
  while (order.size() < n) {
    std::uint32_t best = n;
    for (std::uint32_t v = 0; v < n; ++v) {
      if (placed[v]) continue;
      if (best == n || back[v] > back[best] ||
          (back[v] == back[best] && (deg[v] > deg[best] || (deg[v] == deg[best] && v < best))))
        best = v;
    }
    place(best);
  }
  return order;
}

// Read-only search setup shared by every worker: vertex order, back edges,
// per-length adjacency, and the candidate-generator edge per position.
struct SearchContext {
  const SetView& view;
  std::uint32_t n = 0, npts = 0;
  std::vector<std::uint32_t> order;
  std::vector<std::vector<BackEdge>> back;
  std::vector<int> gen;
  std::map<std::uint64_t, LengthAdj> lengths;

  SearchContext(const DistanceGraph& g, const SetView& v, Budget& budget,
                std::optional<std::uint32_t> forced_first)
      : view(v) {
    n = g.vertex_count();
    npts = static_cast<std::uint32_t>(v.E.size());
    order = greedy_order(g, forced_first);
    std::vector<std::uint32_t> pos_of(n, 0);
    for (std::uint32_t p = 0; p < n; ++p) pos_of[order[p]] = p;
    back.assign(n, {});
    for (const auto& e : g.edges()) {
      std::uint32_t pu = pos_of[e.u], pv = pos_of[e.v];
      if (pu > pv) std::swap(pu, pv);
      back[pv].push_back({pu, e.length.encoding()});
      lengths.insert({e.length.encoding(), LengthAdj{}});
    }
    for (auto& [enc, adj] : lengths) adj = build_adjacency(v, enc, budget);
    gen.assign(n, -1);
    for (std::uint32_t p = 0; p < n; ++p) {
      std::uint32_t best_deg = 0;
      for (std::size_t b = 0; b < back[p].size(); ++b) {
        std::uint32_t md = lengths.at(back[p][b].length).max_deg;
        if (gen[p] < 0 || md < best_deg) {
          gen[p] = static_cast<int>(b);
          best_deg = md;
        }
      }
    }
  }

  // Upper bound on the number of leaves of the search tree.
  BigInt leaf_estimate() const {
    BigInt est = 1;
    for (std::uint32_t p = 0; p < n; ++p) {
      if (back[p].empty()) {
        est *= npts;
      } else {
        est *= lengths.at(back[p][static_cast<std::size_t>(gen[p])].length).max_deg;
      }
    }
    return est;
  }
};

// One worker's mutable search state. Workers split the candidate range of
// position 0 (always a component root, so its candidates are all points).
class EmbedSearch {
 public:
  EmbedSearch(const SearchContext& ctx, Budget& budget) : ctx_(ctx), budget_(budget) {
    assigned_.assign(ctx.n, 0);
    occupancy_.assign(ctx.npts, 0);
  }

  void run_range(std::uint32_t lo, std::uint32_t hi, std::vector<BigInt>* profile) {
    for (std::uint32_t c = lo; c < hi; ++c) {
      budget_.charge();
      if (ctx_.n == 1) {
        total_ += 1;
        nondeg_ += 1;
        if (profile) (*profile)[c] += 1;
        continue;
      }
      BigInt before = total_;
      assign(0, c);
      search(1);
      unassign(0, c);
      if (profile) (*profile)[c] += total_ - before;
    }
  }

  const BigInt& total() const { return total_; }
  const BigInt& nondegenerate() const { return nondeg_; }

 private:
  template <typename Fn>
  void for_candidates(std::uint32_t pos, const Fn& fn) {
    if (ctx_.back[pos].empty()) {
      for (std::uint32_t c = 0; c < ctx_.npts; ++c) {
        budget_.charge();
        fn(c);
      }
      return;
    }
    const BackEdge& gen = ctx_.back[pos][static_cast<std::size_t>(ctx_.gen[pos])];
    const LengthAdj& adj = ctx_.lengths.at(gen.length);
    std::uint32_t anchor = assigned_[gen.pos];
    for (std::size_t s = adj.row_begin(anchor); s < adj.row_end(anchor); ++s) {
      budget_.charge();
      std::uint32_t c = adj.nbrs[s];
      bool ok = true;
      for (std::size_t b = 0; b < ctx_.back[pos].size(); ++b) {
        if (static_cast<int>(b) == ctx_.gen[pos]) continue;
        const BackEdge& be = ctx_.back[pos][b];
        if (!ctx_.view.at_distance(assigned_[be.pos], c, be.length)) {
          ok = false;
          break;
        }
      }
      if (ok) fn(c);
    }
  }

  void assign(std::uint32_t pos, std::uint32_t c) {
    assigned_[pos] = c;
    if (occupancy_[c]++ > 0) ++collisions_;
  }
  void unassign(std::uint32_t pos, std::uint32_t c) {
    (void)pos;
    if (--occupancy_[c] > 0) --collisions_;
  }

  void search(std::uint32_t pos) {
    if (pos == ctx_.n - 1) {
      std::uint64_t cnt = 0, cnt_free = 0;
      for_candidates(pos, [&](std::uint32_t c) {
        ++cnt;
        if (occupancy_[c] == 0) ++cnt_free;
      });
      total_ += cnt;
      if (collisions_ == 0) nondeg_ += cnt_free;
      return;
    }
    for_candidates(pos, [&](std::uint32_t c) {
      assign(pos, c);
      search(pos + 1);
      unassign(pos, c);
    });
  }

  const SearchContext& ctx_;
  Budget& budget_;
  std::vector<std::uint32_t> assigned_;
  std::vector<std::uint32_t> occupancy_;
  std::uint32_t collisions_ = 0;
  BigInt total_ = 0, nondeg_ = 0;
};

struct SearchTotals {
  BigInt total, nondeg;
};

// Splits the first position's candidates across workers; totals are summed
// in chunk order, so the aggregate is schedule-independent. Profile slots
// are written only by the owning worker.
SearchTotals run_search(const SearchContext& ctx, Budget& budget, unsigned threads,
                        std::vector<BigInt>* profile) {
  if (ctx.n == 0) return {BigInt(1), BigInt(1)};
  unsigned hw = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  unsigned parts = static_cast<unsigned>(
      std::min<std::uint64_t>(hw, std::max<std::uint64_t>(1, ctx.npts)));
  if (parts <= 1 || ctx.npts < 2) {
    EmbedSearch worker(ctx, budget);
    worker.run_range(0, ctx.npts, profile);
    return {worker.total(), worker.nondegenerate()};
  }
  std::vector<std::unique_ptr<EmbedSearch>> workers;
  std::vector<std::exception_ptr> errors(parts);
  std::vector<std::thread> pool;
  std::uint32_t chunk = (ctx.npts + parts - 1) / parts;
  for (unsigned i = 0; i < parts; ++i) {
    workers.push_back(std::make_unique<EmbedSearch>(ctx, budget));
    std::uint32_t lo = i * chunk, hi = std::min(ctx.npts, lo + chunk);
    if (lo >= hi) break;
    EmbedSearch* w = workers.back().get();
    pool.emplace_back([w, lo, hi, profile, &errors, i] {
      try {
        w->run_range(lo, hi, profile);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  SearchTotals out{BigInt(0), BigInt(0)};
  for (const auto& w : workers) {
    out.total += w->total();
    out.nondeg += w->nondegenerate();
  }
  return out;
}

void require_compatible(const DistanceGraph& g, const PointSet& E) {
  if (g.field() && g.field() != E.space().field.get())
    fail(Errc::field_mismatch, "graph lengths and point set use different fields");
}

BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

}  // namespace

const BigInt& BaseProfile::at(const Point& p) const {
  auto idx = set_->index_of_code(p.code());
  if (!idx) fail(Errc::bad_params, "point not in the profiled set");
  return counts_[*idx];
}

BigInt BaseProfile::total() const {
  BigInt t = 0;
  for (const auto& c : counts_) t += c;
  return t;
}

EmbeddingCount count_all(const DistanceGraph& g, const PointSet& E, const CountOptions& opts) {
  require_compatible(g, E);
  if (g.vertex_count() == 0) return {BigInt(1), BigInt(1), BigInt(0)};
  if (E.empty()) return {BigInt(0), BigInt(0), BigInt(0)};
  Budget budget{opts.budget};
  SetView view(E);
  SearchContext ctx(g, view, budget, std::nullopt);
  BigInt est = ctx.leaf_estimate();
  if (est > opts.budget)
    fail(Errc::budget_exceeded, "estimated work " + est.str() + " exceeds budget " +
                                    std::to_string(opts.budget));
  SearchTotals totals = run_search(ctx, budget, opts.threads, nullptr);
  EmbeddingCount out;
  out.total = totals.total;
  out.nondegenerate = totals.nondeg;
  out.degenerate = out.total - out.nondegenerate;
  return out;
}

BigInt total_embeddings(const DistanceGraph& g, const PointSet& E, const CountOptions& opts) {
  require_compatible(g, E);
  if (g.vertex_count() == 0) return BigInt(1);
  if (E.empty()) return BigInt(0);
  // factorize over connected components
  std::vector<std::uint32_t> comp(g.vertex_count());
  std::iota(comp.begin(), comp.end(), 0);
  std::function<std::uint32_t(std::uint32_t)> find = [&](std::uint32_t x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (const auto& e : g.edges()) comp[find(e.u)] = find(e.v);
  std::map<std::uint32_t, std::vector<std::uint32_t>> groups;
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) groups[find(v)].push_back(v);

  BigInt product = 1;
  for (const auto& [root, verts] : groups) {
    if (verts.size() == 1) {
      product *= static_cast<std::uint64_t>(E.size());
      continue;
    }
    std::vector<char> keep(g.vertex_count(), 0);
    for (std::uint32_t v : verts) keep[v] = 1;
    std::vector<std::uint32_t> removed;
    for (std::uint32_t v = 0; v < g.vertex_count(); ++v)
      if (!keep[v]) removed.push_back(v);
    EmbeddingCount c = count_all(g.remove_vertices(removed), E, opts);
    product *= c.total;
    if (product == 0) return product;
  }
  return product;
}

BaseProfile base_profile(const DistanceGraph& g, const PointSet& E, const CountOptions& opts) {
  require_compatible(g, E);
  if (!g.base_vertex()) fail(Errc::bad_params, "profile requires a base vertex");
  std::vector<BigInt> counts(E.size(), BigInt(0));
  if (g.vertex_count() == 0 || E.empty()) return BaseProfile(&E, std::move(counts));
  Budget budget{opts.budget};
  SetView view(E);
  SearchContext ctx(g, view, budget, g.base_vertex());
  BigInt est = ctx.leaf_estimate();
  if (est > opts.budget)
    fail(Errc::budget_exceeded, "estimated work " + est.str() + " exceeds budget " +
                                    std::to_string(opts.budget));
  run_search(ctx, budget, opts.threads, &counts);
  return BaseProfile(&E, std::move(counts));
}

std::optional<std::vector<Point>> first_embedding(const DistanceGraph& g, const PointSet& E,
                                                  bool injective, const CountOptions& opts) {
  require_compatible(g, E);
  std::uint32_t n = g.vertex_count();
  if (n == 0) return std::vector<Point>{};
  if (E.empty()) return std::nullopt;
  Budget budget{opts.budget};
  SetView view(E);
  // canonical order: vertices by index, candidate points by canonical index
  std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> back(n);
  for (const auto& e : g.edges()) back[e.v].push_back({e.u, e.length.encoding()});
  std::vector<std::uint32_t> assigned(n, 0);
  std::vector<char> used(E.size(), 0);
  std::function<bool(std::uint32_t)> rec = [&](std::uint32_t v) -> bool {
    if (v == n) return true;
    for (std::uint32_t c = 0; c < E.size(); ++c) {
      budget.charge();
      if (injective && used[c]) continue;
      bool ok = true;
      for (const auto& [u, len] : back[v]) {
        if (!view.at_distance(assigned[u], c, len)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      assigned[v] = c;
      used[c] = 1;
      if (rec(v + 1)) return true;
      used[c] = 0;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  std::vector<Point> out;
  out.reserve(n);
  for (std::uint32_t v = 0; v < n; ++v) out.push_back(E.at(assigned[v]));
  return out;
}

BigInt chain_homomorphism_count(unsigned m, const Scalar& t, const PointSet& E,
                                const CountOptions& opts) {
  if (m < 1) fail(Errc::bad_params, "chain length must be >= 1");
  if (t.is_zero()) fail(Errc::zero_distance, "chain length t must be nonzero");
  if (&t.field() != E.space().field.get())
    fail(Errc::field_mismatch, "length from a different field");
  if (E.empty()) return BigInt(0);
  Budget budget{opts.budget};
  SetView view(E);
  LengthAdj adj = build_adjacency(view, t.encoding(), budget);
  std::size_t n = E.size();
  std::vector<BigInt> w(n, BigInt(1)), next(n);
  for (unsigned step = 0; step < m; ++step) {
    budget.charge(adj.nbrs.size());
    for (std::size_t y = 0; y < n; ++y) {
      BigInt acc = 0;
      for (std::size_t s = adj.row_begin(static_cast<std::uint32_t>(y));
           s < adj.row_end(static_cast<std::uint32_t>(y)); ++s)
        acc += w[adj.nbrs[s]];
      next[y] = std::move(acc);
    }
    std::swap(w, next);
  }
  BigInt total = 0;
  for (const auto& v : w) total += v;
  return total;
}

namespace {

// Unordered cliques of size `need` inside the sorted candidate list, where
// adjacency is membership in the rows of `adj`.
BigInt count_cliques(const LengthAdj& adj, const std::vector<std::uint32_t>& cand, unsigned need,
                     Budget& budget) {
  if (need == 0) return 1;
  if (cand.size() < need) return 0;
  if (need == 1) return BigInt(cand.size());
  BigInt sum = 0;
  for (std::size_t i = 0; i + need <= cand.size(); ++i) {
    budget.charge();
    std::uint32_t v = cand[i];
    std::vector<std::uint32_t> next;
    auto rb = adj.nbrs.begin() + static_cast<std::ptrdiff_t>(adj.row_begin(v));
    auto re = adj.nbrs.begin() + static_cast<std::ptrdiff_t>(adj.row_end(v));
    std::set_intersection(cand.begin() + static_cast<std::ptrdiff_t>(i + 1), cand.end(), rb, re,
                          std::back_inserter(next));
    sum += count_cliques(adj, next, need - 1, budget);
  }
  return sum;
}

}  // namespace

SimplexPairTable simplex_pair_table(unsigned m, const Scalar& t, const PointSet& E,
                                    const CountOptions& opts) {
  if (m < 2) fail(Errc::bad_params, "simplex pair table requires m >= 2");
  if (t.is_zero()) fail(Errc::zero_distance, "simplex edge length must be nonzero");
  if (&t.field() != E.space().field.get())
    fail(Errc::field_mismatch, "length from a different field");
  Budget budget{opts.budget};
  SetView view(E);
  LengthAdj adj = build_adjacency(view, t.encoding(), budget);
  std::size_t n = E.size();
  std::vector<BigInt> values(adj.nbrs.size(), BigInt(0));
  BigInt perms = factorial(m - 1);
  std::vector<std::uint32_t> common;
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::size_t s = adj.row_begin(i); s < adj.row_end(i); ++s) {
      std::uint32_t j = adj.nbrs[s];
      if (j < i) continue;  // fill i < j, mirror afterwards
      common.clear();
      auto ib = adj.nbrs.begin() + static_cast<std::ptrdiff_t>(adj.row_begin(i));
      auto ie = adj.nbrs.begin() + static_cast<std::ptrdiff_t>(adj.row_end(i));
      auto jb = adj.nbrs.begin() + static_cast<std::ptrdiff_t>(adj.row_begin(j));
      auto je = adj.nbrs.begin() + static_cast<std::ptrdiff_t>(adj.row_end(j));
      std::set_intersection(ib, ie, jb, je, std::back_inserter(common));
      budget.charge(common.size() + 1);
      values[s] = count_cliques(adj, common, m - 1, budget) * perms;
      // mirror into (j, i)
      auto row_b = adj.nbrs.begin() + static_cast<std::ptrdiff_t>(adj.row_begin(j));
      auto row_e = adj.nbrs.begin() + static_cast<std::ptrdiff_t>(adj.row_end(j));
      auto it = std::lower_bound(row_b, row_e, i);
      values[static_cast<std::size_t>(it - adj.nbrs.begin())] = values[s];
    }
  }
  return SimplexPairTable(&E, std::move(adj.offsets), std::move(adj.nbrs), std::move(values));
}

BigInt SimplexPairTable::at(std::size_t i, std::size_t j) const {
  auto b = nbrs_.begin() + offsets_[i];
  auto e = nbrs_.begin() + offsets_[i + 1];
  auto it = std::lower_bound(b, e, static_cast<std::uint32_t>(j));
  if (it == e || *it != j) return BigInt(0);
  return values_[static_cast<std::size_t>(it - nbrs_.begin())];
}

BaseProfile simplex_base_profile(unsigned m, const Scalar& t, const PointSet& E,
                                 const CountOptions& opts) {
  if (m < 1) fail(Errc::bad_params, "simplex profile requires m >= 1");
  if (m == 1) {
    auto deg = all_edge_degrees(E, t);
    std::vector<BigInt> counts(deg.begin(), deg.end());
    return BaseProfile(&E, std::move(counts));
  }
  SimplexPairTable h = simplex_pair_table(m, t, E, opts);
  std::vector<BigInt> counts(E.size(), BigInt(0));
  for (std::size_t i = 0; i < E.size(); ++i)
    for (std::size_t s = h.neighbor_begin(i); s < h.neighbor_end(i); ++s) counts[i] += h.value(s);
  return BaseProfile(&E, std::move(counts));
}

ChainOfSimplicesCount simplex_chain_count(unsigned k, unsigned m, const Scalar& t,
                                          const PointSet& E, const CountOptions& opts) {
  if (k < 1) fail(Errc::bad_params, "chain of simplices requires k >= 1");
  SimplexPairTable h = simplex_pair_table(m, t, E, opts);
  std::size_t n = E.size();
  // profile by the far chain node; equals the base profile by the mirror
  // symmetry of the chain (the pair table is symmetric)
  std::vector<BigInt> p(n, BigInt(0)), next(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t s = h.neighbor_begin(i); s < h.neighbor_end(i); ++s) p[i] += h.value(s);
  Budget budget{opts.budget};
  for (unsigned step = 1; step < k; ++step) {
    for (std::size_t y = 0; y < n; ++y) {
      BigInt acc = 0;
      for (std::size_t s = h.neighbor_begin(y); s < h.neighbor_end(y); ++s) {
        budget.charge();
        acc += p[h.neighbor(s)] * h.value(s);
      }
      next[y] = std::move(acc);
    }
    std::swap(p, next);
  }
  ChainOfSimplicesCount out;
  out.total = 0;
  for (const auto& v : p) out.total += v;
  out.profile = BaseProfile(&E, std::move(p));
  return out;
}

Rational holder_lower_bound(const DistanceGraph& h, const std::vector<std::uint32_t>& duplicated,
                            unsigned k, const PointSet& E, const CountOptions& opts) {
  if (k < 1) fail(Errc::bad_params, "fold must be >= 1");
  BigInt n_h = total_embeddings(h, E, opts);
  if (k == 1) return Rational(n_h);
  if (n_h == 0) return Rational(0);
  BigInt n_rem = total_embeddings(h.remove_vertices(duplicated), E, opts);
  if (n_rem == 0) return Rational(0);
  BigInt num = boost::multiprecision::pow(n_h, k);
  BigInt den = boost::multiprecision::pow(n_rem, k - 1);
  return Rational(num, den);
}

}  // namespace ffembed

// ffembed: batch front door for generating point sets, counting distance
// graph embeddings, building refinement subsets, and auditing the inequality
// catalog. Text outputs only; identical configs and seeds give byte-identical
// artifacts.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "ffembed/audit.hpp"
#include "ffembed/corpus.hpp"
#include "ffembed/count.hpp"
#include "ffembed/field.hpp"
#include "ffembed/graph.hpp"
#include "ffembed/refine.hpp"
#include "ffembed/rng.hpp"
#include "ffembed/space.hpp"

namespace {

using namespace ffembed;

constexpr const char* kCsvHeader = "q,d,t,density,size,graph,total,nondeg,degen,bound,verdict";

struct CommonArgs {
  std::uint64_t q = 0;
  unsigned d = 2;
  std::string t;
  std::string gen = "full";
  std::string set_path;
  std::string density = "1";
  std::optional<std::uint64_t> seed;
  std::uint64_t budget = 1'000'000'000ull;
  std::string out;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

unsigned parse_unsigned(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    unsigned long v = std::stoul(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return static_cast<unsigned>(v);
  } catch (const std::exception&) {
    fail(Errc::bad_params, std::string("malformed ") + what + ": " + s);
  }
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> parse_skeleton(const std::string& s) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (const std::string& part : split(s, '+')) {
    auto uv = split(part, '-');
    if (uv.size() != 2) fail(Errc::bad_params, "skeleton edges look like u-v joined by +");
    edges.push_back({parse_unsigned(uv[0], "skeleton vertex"), parse_unsigned(uv[1], "skeleton vertex")});
  }
  return edges;
}

Scalar parse_scalar(const std::shared_ptr<const Field>& field, const std::string& tok) {
  return Scalar(field.get(), field->parse(tok));
}

DistanceGraph parse_graph(const std::string& spec, const std::shared_ptr<const Field>& field,
                          const std::string& t_str) {
  auto parts = split(spec, ':');
  const std::string& family = parts[0];
  if (family == "file") {
    if (parts.size() != 2) fail(Errc::bad_params, "graph file spec: file:<path>");
    std::ifstream is(parts[1]);
    if (!is) fail(Errc::io_error, "cannot open graph file " + parts[1]);
    return read_graph(is, field);
  }
  if (t_str.empty()) fail(Errc::missing_param, "--t is required for graph families");
  Scalar t = parse_scalar(field, t_str);
  if (family == "star" && parts.size() == 2) return star(parse_unsigned(parts[1], "k"), t);
  if (family == "chain" && parts.size() == 2) return chain(parse_unsigned(parts[1], "m"), t);
  if (family == "simplex" && parts.size() == 2) return simplex(parse_unsigned(parts[1], "m"), t);
  if (family == "schain" && parts.size() == 3)
    return chain_of_simplices(parse_unsigned(parts[1], "k"), parse_unsigned(parts[2], "m"), t);
  if (family == "hchain" && parts.size() == 3)
    return holder_chain(parse_unsigned(parts[1], "k"), parse_unsigned(parts[2], "m"), t);
  if (family == "stree" && parts.size() == 3)
    return tree_of_simplices(parse_skeleton(parts[2]), parse_unsigned(parts[1], "m"), t);
  fail(Errc::bad_params,
       "graph spec: star:k | chain:m | simplex:m | schain:k:m | hchain:k:m | stree:m:u-v+u-v | file:path");
}

PointSet make_set(const CommonArgs& a) {
  if (!a.set_path.empty()) return load_point_set(a.set_path);
  if (a.q == 0) fail(Errc::missing_param, "--q is required");
  auto field = Field::make(a.q);
  Space sp(field, a.d);
  if (a.gen == "full") return PointSet::full_space(sp);
  if (a.gen == "isotropic") {
    if (a.d != 2) fail(Errc::bad_params, "isotropic generator requires d = 2");
    return isotropic_line(field);
  }
  if (a.gen == "sphere") {
    if (a.t.empty()) fail(Errc::missing_param, "sphere generator requires --t");
    return sphere(field, a.d, parse_scalar(field, a.t));
  }
  if (a.gen == "random" || a.gen == "product") {
    if (!a.seed) fail(Errc::missing_param, "randomized generators require --seed");
    Rational density = parse_rational(a.density);
    return a.gen == "random" ? random_subset(sp, density, *a.seed)
                             : product_subset(sp, density, *a.seed);
  }
  fail(Errc::bad_params, "generator: full | random | sphere | isotropic | product");
}

std::ostream& open_out(const CommonArgs& a, std::ofstream& file) {
  if (a.out.empty()) return std::cout;
  file.open(a.out);
  if (!file) fail(Errc::io_error, "cannot open " + a.out + " for writing");
  return file;
}

Rational set_density(const PointSet& E) {
  return Rational(E.size()) / Rational(E.space().volume());
}

void csv_count_row(std::ostream& os, const PointSet& E, const std::string& t_str,
                   const Rational& density, const std::string& graph_spec,
                   const EmbeddingCount& c, const std::string& bound, const std::string& verdict) {
  os << E.space().q() << ',' << E.space().dim << ',' << t_str << ',' << to_string(density) << ','
     << E.size() << ',' << graph_spec << ',' << c.total << ',' << c.nondegenerate << ','
     << c.degenerate << ',' << bound << ',' << verdict << '\n';
}

// statistically correct count |E|^v / q^e
std::string statistical_bound(const DistanceGraph& g, const PointSet& E) {
  Rational b = rational_pow(Rational(E.size()), g.vertex_count()) /
               rational_pow(Rational(E.space().q()), static_cast<long long>(g.edge_count()));
  return to_string(b);
}

AuditParams build_audit_params(const std::shared_ptr<const Field>& field, const std::string& t_str,
                               const std::string& graph_spec, const std::string& lengths,
                               const std::string& duplicated, const std::string& skeleton,
                               const std::string& epsilon, const std::string& delta,
                               const std::string& lambda, const std::string& lambda1,
                               const std::string& lambda2, const std::string& lambda_prime,
                               const std::string& c2, const std::string& n_threshold,
                               bool sandwich_declared, std::optional<unsigned> m,
                               std::optional<unsigned> k, std::optional<unsigned> n,
                               const std::string& branch, const std::string& variant) {
  AuditParams p;
  if (!t_str.empty()) p.t = parse_scalar(field, t_str);
  if (!graph_spec.empty()) p.graph = parse_graph(graph_spec, field, t_str);
  for (const std::string& tok : split(lengths, ' '))
    if (!tok.empty()) p.lengths.push_back(parse_scalar(field, tok));
  for (const std::string& tok : split(duplicated, ' '))
    if (!tok.empty()) p.duplicated.push_back(parse_unsigned(tok, "duplicated vertex"));
  if (!skeleton.empty()) p.skeleton = parse_skeleton(skeleton);
  if (!epsilon.empty()) p.epsilon = parse_rational(epsilon);
  if (!delta.empty()) p.delta = parse_rational(delta);
  if (!lambda.empty()) p.lambda = parse_rational(lambda);
  if (!lambda1.empty()) p.lambda1 = parse_rational(lambda1);
  if (!lambda2.empty()) p.lambda2 = parse_rational(lambda2);
  if (!lambda_prime.empty()) p.lambda_prime = parse_rational(lambda_prime);
  if (!c2.empty()) p.c_squared = parse_rational(c2);
  if (!n_threshold.empty()) p.n_threshold = parse_rational(n_threshold);
  p.sandwich_declared = sandwich_declared;
  p.m = m;
  p.k = k;
  p.n = n;
  p.branch = branch;
  p.variant = variant;
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact embedding counts of distance graphs over finite fields"};
  app.require_subcommand(1);

  CommonArgs a;
  if (const char* env = std::getenv("FFEMBED_BUDGET")) a.budget = std::strtoull(env, nullptr, 10);

  std::string graph_spec, audit_id, lengths, duplicated, skeleton, epsilon, delta;
  std::string lambda, lambda1, lambda2, lambda_prime, c2, n_threshold, branch, variant;
  std::string density_from = "1", density_to = "1", density_step = "1";
  bool sandwich_declared = false, corpus = false;
  std::optional<unsigned> m_param, k_param, n_param;

  auto add_common = [&](CLI::App* cmd, bool with_gen) {
    cmd->add_option("--q", a.q, "field size (odd prime power)");
    cmd->add_option("--d", a.d, "dimension");
    cmd->add_option("--t", a.t, "edge length (canonical scalar token)");
    cmd->add_option("--budget", a.budget, "work budget in node expansions");
    cmd->add_option("--out", a.out, "output path (default: stdout)");
    if (with_gen) {
      cmd->add_option("--set", a.set_path, "point-set file to load");
      cmd->add_option("--gen", a.gen, "generator: full|random|sphere|isotropic|product");
      cmd->add_option("--density", a.density, "density in (0,1] for random/product");
      cmd->add_option("--seed", a.seed, "seed for randomized generators");
    }
  };

  CLI::App* gen = app.add_subcommand("gen", "generate a point set file");
  add_common(gen, true);

  CLI::App* count_cmd = app.add_subcommand("count", "count embeddings of a graph in a set");
  add_common(count_cmd, true);
  count_cmd->add_option("--graph", graph_spec, "graph family spec")->required();

  CLI::App* profile = app.add_subcommand("profile", "per-base-point embedding counts");
  add_common(profile, true);
  profile->add_option("--graph", graph_spec, "graph family spec")->required();

  CLI::App* shave = app.add_subcommand("shave", "two-sided degree shaving");
  add_common(shave, true);
  shave->add_option("--lambda", lambda, "cap multiplier")->required();
  shave->add_option("--c2", c2, "C^2 for the size hypothesis");

  CLI::App* audit_cmd = app.add_subcommand("audit", "audit a theorem on a concrete instance");
  add_common(audit_cmd, true);
  audit_cmd->add_option("--id", audit_id, "theorem id");
  audit_cmd->add_flag("--corpus", corpus, "run the whole regression corpus");
  audit_cmd->add_option("--graph", graph_spec, "graph parameter");
  audit_cmd->add_option("--lengths", lengths, "length set L (space separated)");
  audit_cmd->add_option("--duplicated", duplicated, "duplicated vertex set (space separated)");
  audit_cmd->add_option("--skeleton", skeleton, "tree skeleton edges u-v+u-v");
  audit_cmd->add_option("--epsilon", epsilon, "epsilon");
  audit_cmd->add_option("--delta", delta, "delta");
  audit_cmd->add_option("--lambda", lambda, "lambda");
  audit_cmd->add_option("--lambda1", lambda1, "lambda1");
  audit_cmd->add_option("--lambda2", lambda2, "lambda2");
  audit_cmd->add_option("--lambda-prime", lambda_prime, "lambda'");
  audit_cmd->add_option("--c2", c2, "C^2");
  audit_cmd->add_option("--n-threshold", n_threshold, "declared sandwich threshold");
  audit_cmd->add_flag("--sandwich-declared", sandwich_declared, "declare the sandwich hypothesis");
  audit_cmd->add_option("--m", m_param, "m");
  audit_cmd->add_option("--k", k_param, "k");
  audit_cmd->add_option("--n", n_param, "n");
  audit_cmd->add_option("--branch", branch, "sub-branch (explicit|asymptotic)");
  audit_cmd->add_option("--variant", variant, "sub-variant (count|degenerate)");

  CLI::App* sweep = app.add_subcommand("sweep", "density sweep with CSV output");
  add_common(sweep, true);
  sweep->add_option("--graph", graph_spec, "graph family spec")->required();
  sweep->add_option("--density-from", density_from, "first density");
  sweep->add_option("--density-to", density_to, "last density");
  sweep->add_option("--density-step", density_step, "density increment");
  sweep->add_option("--id", audit_id, "optional theorem id per row");

  CLI11_PARSE(app, argc, argv);

  try {
    CountOptions opts;
    opts.budget = a.budget;
    std::ofstream file;

    if (gen->parsed()) {
      PointSet E = make_set(a);
      std::ostream& os = open_out(a, file);
      write_point_set(os, E);
      return 0;
    }

    if (count_cmd->parsed() || profile->parsed()) {
      PointSet E = make_set(a);
      auto field = E.space().field;
      DistanceGraph g = parse_graph(graph_spec, field, a.t);
      std::ostream& os = open_out(a, file);
      if (count_cmd->parsed()) {
        EmbeddingCount c = count_all(g, E, opts);
        os << kCsvHeader << '\n';
        csv_count_row(os, E, a.t, set_density(E), graph_spec, c, statistical_bound(g, E), "");
      } else {
        BaseProfile prof = base_profile(g, E, opts);
        os << "# profile graph=" << graph_spec << " size=" << E.size() << '\n';
        for (std::size_t i = 0; i < E.size(); ++i)
          os << E.at(i).str() << ' ' << prof.at_index(i) << '\n';
      }
      return 0;
    }

    if (shave->parsed()) {
      PointSet E = make_set(a);
      auto field = E.space().field;
      if (a.t.empty()) fail(Errc::missing_param, "--t is required");
      std::optional<Rational> c2_opt;
      if (!c2.empty()) c2_opt = parse_rational(c2);
      ShaveResult r = shave_one_edge(E, parse_scalar(field, a.t), parse_rational(lambda), c2_opt);
      std::ostream& os = open_out(a, file);
      write_shave_result(os, r);
      return 0;
    }

    if (audit_cmd->parsed()) {
      PointSet E = make_set(a);
      auto field = E.space().field;
      std::ostream& os = open_out(a, file);
      if (corpus) {
        for (const TheoremReport& r : run_regression_corpus(E.space().q(), opts)) os << to_text(r);
        return 0;
      }
      auto id = theorem_id_from_name(audit_id);
      if (!id) fail(Errc::bad_params, "unknown theorem id: " + audit_id);
      AuditParams p = build_audit_params(field, a.t, graph_spec, lengths, duplicated, skeleton,
                                         epsilon, delta, lambda, lambda1, lambda2, lambda_prime,
                                         c2, n_threshold, sandwich_declared, m_param, k_param,
                                         n_param, branch, variant);
      os << to_text(audit(*id, E, p, opts));
      return 0;
    }

    if (sweep->parsed()) {
      if (a.q == 0) fail(Errc::missing_param, "--q is required");
      if (!a.seed) fail(Errc::missing_param, "sweep requires --seed");
      auto field = Field::make(a.q);
      Space sp(field, a.d);
      DistanceGraph g = parse_graph(graph_spec, field, a.t);
      std::optional<TheoremId> id;
      if (!audit_id.empty()) {
        id = theorem_id_from_name(audit_id);
        if (!id) fail(Errc::bad_params, "unknown theorem id: " + audit_id);
      }
      std::ostream& os = open_out(a, file);
      os << kCsvHeader << '\n';
      Rational from = parse_rational(density_from), to = parse_rational(density_to),
               step = parse_rational(density_step);
      if (step <= 0) fail(Errc::bad_params, "density step must be positive");
      for (Rational dens = from; dens <= to; dens += step) {
        PointSet E = random_subset(sp, dens, *a.seed);
        EmbeddingCount c = count_all(g, E, opts);
        std::string bound = statistical_bound(g, E), verdict;
        if (id) {
          AuditParams p = build_audit_params(field, a.t, graph_spec, lengths, duplicated, skeleton,
                                             epsilon, delta, lambda, lambda1, lambda2, lambda_prime,
                                             c2, n_threshold, sandwich_declared, m_param, k_param,
                                             n_param, branch, variant);
          TheoremReport r = audit(*id, E, p, opts);
          bound = r.rhs_lo + ".." + r.rhs_hi;
          verdict = verdict_name(r.verdict);
        }
        csv_count_row(os, E, a.t, dens, graph_spec, c, bound, verdict);
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

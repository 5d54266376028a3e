// dihyp: analyze directed graphs for strong hyperbolicity, tessellate
// parallel paths, build Cayley balls, and run word-problem / Green's
// relation / Dehn-function queries on finitely presented monoids.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "dihyp/serialize.hpp"

namespace {

using namespace dihyp;

constexpr int kExitOk = 0;
constexpr int kExitPropertyFail = 1;
constexpr int kExitInputError = 2;
constexpr int kExitUnknown = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Timer {
 public:
  double elapsed_ms() const {
    auto dt = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double, std::milli>(dt).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

// Shared monoid-input options: a built-in spec like "bicyclic" or
// "mi(1,3)", or a presentation file.
struct MonoidInput {
  std::string builtin_spec;
  std::string presentation_file;
  long long search_cap = 2000000;

  void add_to(CLI::App* cmd) {
    auto* b = cmd->add_option("--builtin", builtin_spec,
                              "built-in monoid, e.g. free(2), bicyclic, "
                              "polycyclic(2), mi(1,3), jnotd");
    auto* p = cmd->add_option("--presentation", presentation_file,
                              "presentation file (generators: ... ; w1 = w2)");
    cmd->add_option("--cap", search_cap,
                    "state cap for search-based word-problem oracles");
    b->excludes(p);
  }

  bool given() const {
    return !builtin_spec.empty() || !presentation_file.empty();
  }

  // Resolves to an oracle: built-ins carry their own; file presentations
  // use the rewriting oracle when confluent, else capped bidirectional
  // search.
  std::pair<MonoidPresentation, OraclePtr> resolve() const {
    if (!builtin_spec.empty()) {
      Builtin b = builtin(builtin_spec);
      return {b.pres, b.oracle};
    }
    if (presentation_file.empty())
      throw InputError("need --builtin or --presentation");
    MonoidPresentation pres = parse_presentation(read_file(presentation_file));
    RewritingSystem rs = RewritingSystem::orient_and_check(pres);
    if (rs.status() == ConfluenceStatus::checked)
      return {pres, std::make_shared<RewritingOracle>(std::move(rs))};
    return {pres, std::make_shared<BoundedSearchOracle>(pres, search_cap)};
  }
};

int resolve_threads(int threads_flag) {
  if (threads_flag > 0) return threads_flag;
  if (const char* env = std::getenv("DIHYP_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return 1;
}

Path parse_path(const Digraph& g, const std::string& text) {
  Path p;
  std::string token;
  std::istringstream in(text);
  std::string normalized = text;
  for (char& c : normalized)
    if (c == ',') c = ' ';
  std::istringstream tokens(normalized);
  while (tokens >> token) p.v.push_back(g.vertex(token));
  if (p.v.empty()) throw InputError("empty path");
  if (!p.valid_in(g)) throw InputError("not an edge path: " + text);
  return p;
}

void emit(const Json& report) { std::cout << report.dump(2) << "\n"; }

// ---------------------------------------------------------------- analyze

int cmd_analyze(const std::string& graph_file, const MonoidInput& monoid,
                int radius, int margin, long long delta_flag, bool delta_given,
                int threads) {
  Timer timer;
  Json inputs;
  Digraph g;
  ThinnessOptions opts;
  opts.threads = threads;
  opts.margin = margin;
  if (!graph_file.empty()) {
    g = parse_digraph(read_file(graph_file));
    inputs["graph_file"] = graph_file;
  } else if (monoid.given()) {
    auto [pres, oracle] = monoid.resolve();
    CayleyBall ball = cayley_ball(*oracle, radius);
    g = ball.graph;
    opts.root = ball.identity;
    opts.radius = radius;
    inputs["monoid"] = monoid.builtin_spec.empty() ? monoid.presentation_file
                                                   : monoid.builtin_spec;
    inputs["radius"] = radius;
  } else {
    throw InputError("analyze needs --graph or a monoid input");
  }
  inputs["fingerprint"] = g.fingerprint();

  ThinnessReport report = min_hyperbolicity_constant(g, opts);

  Json payload;
  payload["thinness"] = thinness_report_to_json(g, report);
  SccDecomposition scc = strongly_connected_components(g);
  Json scc_json;
  scc_json["count"] = scc.classes.size();
  std::size_t largest = 0;
  for (const auto& cls : scc.classes) largest = std::max(largest, cls.size());
  scc_json["largest"] = largest;
  payload["scc"] = std::move(scc_json);
  DegreeBounds deg = degree_bounds(g);
  payload["max_indegree"] = deg.max_indegree;
  payload["max_outdegree"] = deg.max_outdegree;

  bool fails = false;
  if (delta_given) {
    bool holds = report.delta_star <= ExtDistance::of(delta_flag);
    payload["delta_checked"] = delta_flag;
    payload["holds"] = holds;
    fails = !holds;
  }

  Json params;
  params["margin"] = margin;
  if (delta_given) params["delta"] = delta_flag;
  emit(run_report("analyze", inputs, params, payload, timer.elapsed_ms()));
  return fails ? kExitPropertyFail : kExitOk;
}

// --------------------------------------------------------------- constants

int cmd_constants(long long alpha, long long delta,
                  std::optional<long long> a_size) {
  Timer timer;
  ConstantsReport quasi = quasi_constants(alpha, delta);
  Json payload;
  payload["quasi"] = constants_report_to_json(quasi);
  if (a_size) {
    GreensConstants gc = greens_constants(*a_size, alpha, delta);
    Json greens = greens_constants_to_json(gc);
    Json tables;
    tables["C"] = Json::array();
    for (long long s = 0; s <= 4; ++s)
      tables["C"].push_back(rational_str(gc.C(s)));
    tables["D"] = Json::array();
    tables["E"] = Json::array();
    tables["F"] = Json::array();
    for (long long u = 0; u <= 3; ++u) {
      Json d_row = Json::array(), e_row = Json::array(), f_row = Json::array();
      for (long long v = 0; v <= 3; ++v) {
        d_row.push_back(rational_str(gc.D(u, v)));
        e_row.push_back(rational_str(gc.E(u, v)));
        f_row.push_back(rational_str(gc.F(u, v)));
      }
      tables["D"].push_back(std::move(d_row));
      tables["E"].push_back(std::move(e_row));
      tables["F"].push_back(std::move(f_row));
    }
    greens["tables"] = std::move(tables);
    payload["greens"] = std::move(greens);
  }
  Json inputs;
  inputs["alpha"] = alpha;
  inputs["delta"] = delta;
  if (a_size) inputs["alphabet_size"] = *a_size;
  emit(run_report("constants", inputs, Json::object(), payload,
                  timer.elapsed_ms()));
  return kExitOk;
}

// -------------------------------------------------------------- tessellate

int cmd_tessellate(const std::string& graph_file, const std::string& p_text,
                   const std::string& q_text, long long delta,
                   std::optional<long long> size_bound, bool replay,
                   int threads) {
  Timer timer;
  Digraph g = parse_digraph(read_file(graph_file));
  DistanceMatrix dm = DistanceMatrix::compute(g, threads);
  Path p = parse_path(g, p_text);
  Path q = parse_path(g, q_text);

  Json payload;
  TessellationCertificate cert;
  if (size_bound) {
    TessellationCertificate flat = tessellate_parallel_paths(g, dm, p, q);
    // Refine every triangle that exceeds the target size.
    cert.top = flat.top;
    cert.bottom = flat.bottom;
    Json summaries = Json::array();
    // Tessellate each filling triangle to the requested size and splice
    // the refined replay steps in place of the flat one-cell steps.
    std::vector<BoundedTessellation> refined;
    refined.reserve(flat.triangles.size());
    for (const GeodesicTriangle& t : flat.triangles)
      refined.push_back(tessellate_triangle_to_size(g, dm, t, delta,
                                                    *size_bound));
    std::vector<std::size_t> offset(flat.triangles.size());
    for (std::size_t i = 0; i < refined.size(); ++i) {
      offset[i] = cert.triangles.size();
      for (const GeodesicTriangle& t : refined[i].certificate.triangles)
        cert.triangles.push_back(t);
      Json s;
      s["triangle"] = i;
      s["initial_size"] = flat.triangles[i].size();
      s["triangle_count"] = refined[i].certificate.triangles.size();
      s["count_bound"] = refined[i].count_bound;
      summaries.push_back(std::move(s));
    }
    for (const CertStep& fs : flat.steps) {
      const TessellationCertificate& sub =
          refined[fs.tri].certificate;
      // The flat step applies triangle fs.tri (or its inverse) in context
      // (prefix, suffix); replay the refinement inside that context.
      std::vector<CertStep> local(sub.steps);
      if (fs.inverted) {
        std::reverse(local.begin(), local.end());
        for (CertStep& s : local) s.inverted = !s.inverted;
      }
      for (CertStep& s : local) {
        s.tri += offset[fs.tri];
        s.prefix = fs.prefix.compose(s.prefix);
        s.suffix = s.suffix.compose(fs.suffix);
        cert.steps.push_back(std::move(s));
      }
    }
    payload["refinement"] = std::move(summaries);
    payload["size_bound"] = *size_bound;
  } else {
    cert = tessellate_parallel_paths(g, dm, p, q);
    payload["count_within_filling_bound"] =
        cert.triangles.size() <= static_cast<std::size_t>(p.length()) +
                                     static_cast<std::size_t>(q.length()) + 1;
    payload["size_within_filling_bound"] =
        cert.max_size() <= 2 * (p.length() + q.length());
  }
  payload["certificate"] = certificate_to_json(g, cert);
  bool verified = true;
  if (replay) {
    verified = verify_certificate(g, dm, cert);
    payload["replay_ok"] = verified;
  }

  Json inputs;
  inputs["graph_file"] = graph_file;
  inputs["fingerprint"] = g.fingerprint();
  inputs["p"] = p_text;
  inputs["q"] = q_text;
  Json params;
  params["delta"] = delta;
  if (size_bound) params["size_bound"] = *size_bound;
  params["replay"] = replay;
  emit(run_report("tessellate", inputs, params, payload, timer.elapsed_ms()));
  return verified ? kExitOk : kExitPropertyFail;
}

// ------------------------------------------------------------------ cayley

int cmd_cayley(const MonoidInput& monoid, int radius,
               const std::string& format, const std::string& output) {
  Timer timer;
  auto [pres, oracle] = monoid.resolve();
  CayleyBall ball = cayley_ball(*oracle, radius);
  std::string exported;
  if (format == "dot") {
    exported = ball.graph.to_dot();
  } else if (format == "json") {
    exported = cayley_ball_to_json(ball).dump(2) + "\n";
  } else {
    throw InputError("unknown format: " + format + " (use dot or json)");
  }
  if (output.empty()) {
    std::cout << exported;
  } else {
    std::ofstream out(output, std::ios::binary);
    if (!out) throw InputError("cannot write file: " + output);
    out << exported;
    Json inputs;
    inputs["monoid"] = monoid.builtin_spec.empty() ? monoid.presentation_file
                                                   : monoid.builtin_spec;
    Json params;
    params["radius"] = radius;
    params["format"] = format;
    Json payload;
    payload["vertices"] = ball.graph.vertex_count();
    payload["edges"] = ball.graph.edges().size();
    payload["output"] = output;
    payload["fingerprint"] = ball.graph.fingerprint();
    emit(run_report("cayley", inputs, params, payload, timer.elapsed_ms()));
  }
  return kExitOk;
}

// ---------------------------------------------------------------------- wp

int cmd_wp(const MonoidInput& monoid, const std::string& u_text,
           const std::string& v_text) {
  Timer timer;
  auto [pres, oracle] = monoid.resolve();
  Word u = pres.parse_word(u_text);
  Word v = pres.parse_word(v_text);
  std::optional<bool> eq = oracle->equal(u, v);
  Json inputs;
  inputs["monoid"] = monoid.builtin_spec.empty() ? monoid.presentation_file
                                                 : monoid.builtin_spec;
  inputs["u"] = u_text;
  inputs["v"] = v_text;
  Json payload;
  payload["equal"] = eq ? Json(*eq) : Json("unknown");
  if (auto key = oracle->rep_key(u)) payload["nf_u"] = pres.word_str(*key);
  if (auto key = oracle->rep_key(v)) payload["nf_v"] = pres.word_str(*key);
  emit(run_report("wp", inputs, Json::object(), payload, timer.elapsed_ms()));
  if (!eq) return kExitUnknown;
  return kExitOk;
}

// -------------------------------------------------------------------greens

int cmd_greens(const MonoidInput& monoid, const std::string& relation,
               const std::string& u_text, const std::string& v_text,
               std::optional<long long> delta, std::optional<long long> alpha,
               bool cancellative, std::optional<long long> bound,
               long long budget, int unit_cap) {
  Timer timer;
  auto [pres, oracle] = monoid.resolve();
  Word u = pres.parse_word(u_text);
  Word v = pres.parse_word(v_text);

  std::optional<GreensConstants> constants;
  if (delta && alpha)
    constants = greens_constants(
        static_cast<long long>(pres.generators.size()), *alpha, *delta);

  GreensSearchOptions opts;
  opts.bound_override = bound;
  opts.state_budget = budget;

  Json payload;
  GreensVerdict verdict;
  if (relation == "leqR") {
    verdict = decide_leq_R(*oracle, constants, v, u, opts);
  } else if (relation == "leqL") {
    verdict = decide_leq_L(*oracle, constants, v, u, opts);
  } else if (relation == "leqJ") {
    verdict = decide_leq_J(*oracle, constants, v, u, opts);
  } else if (relation == "R" || relation == "L" || relation == "J" ||
             relation == "H") {
    EquivalenceVerdicts all = decide_equivalences(*oracle, constants, u, v,
                                                  opts);
    verdict = relation == "R"   ? all.R
              : relation == "L" ? all.L
              : relation == "J" ? all.J
                                : all.H;
  } else if (relation == "D") {
    if (!cancellative)
      throw InputError("the D decider requires --cancellative (it is only "
                       "sound for cancellative monoids)");
    std::vector<int> units = detect_unit_generators(*oracle, unit_cap);
    Json unit_names = Json::array();
    for (int g : units) unit_names.push_back(pres.generators[g]);
    payload["unit_generators"] = std::move(unit_names);
    verdict = decide_D_cancellative(*oracle, constants, units, u, v, opts);
  } else {
    throw InputError("unknown relation: " + relation);
  }
  payload["verdict"] = greens_verdict_to_json(pres, verdict);
  if (constants)
    payload["constants"] = greens_constants_to_json(*constants);

  Json inputs;
  inputs["monoid"] = monoid.builtin_spec.empty() ? monoid.presentation_file
                                                 : monoid.builtin_spec;
  inputs["relation"] = relation;
  inputs["u"] = u_text;
  inputs["v"] = v_text;
  Json params;
  if (delta) params["delta"] = *delta;
  if (alpha) params["alpha"] = *alpha;
  params["cancellative"] = cancellative;
  if (bound) params["bound"] = *bound;
  emit(run_report("greens", inputs, params, payload, timer.elapsed_ms()));
  if (verdict.kind == VerdictKind::unknown) return kExitUnknown;
  return kExitOk;
}

// -------------------------------------------------------------------- dehn

int cmd_dehn(const MonoidInput& monoid, int n, long long cap) {
  Timer timer;
  auto [pres, oracle] = monoid.resolve();
  DehnTable table = dehn_function_estimate(pres, n, cap);
  Json inputs;
  inputs["monoid"] = monoid.builtin_spec.empty() ? monoid.presentation_file
                                                 : monoid.builtin_spec;
  Json params;
  params["n"] = n;
  params["cap"] = cap;
  emit(run_report("dehn", inputs, params, dehn_table_to_json(table),
                  timer.elapsed_ms()));
  if (table.hit_cap) return kExitUnknown;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "dihyp: hyperbolicity, tessellation, and decision procedures for "
      "directed graphs and finitely presented monoids"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads,
                 "worker threads (default: DIHYP_THREADS or 1)");

  // analyze
  auto* analyze = app.add_subcommand(
      "analyze", "minimal strong hyperbolicity constant of a digraph");
  std::string an_graph;
  MonoidInput an_monoid;
  int an_radius = 4, an_margin = 0;
  long long an_delta = 0;
  analyze->add_option("--graph", an_graph, "digraph file (JSON or edge list)");
  an_monoid.add_to(analyze);
  analyze->add_option("--radius", an_radius, "Cayley-ball radius");
  analyze->add_option("--margin", an_margin,
                      "truncation margin for Cayley-ball analysis");
  auto* delta_opt =
      analyze->add_option("--delta", an_delta, "check delta* <= this value");

  // constants
  auto* constants = app.add_subcommand(
      "constants", "quasi-geodesic and search-bound constants");
  long long c_alpha = 1, c_delta = 0;
  std::optional<long long> c_asize;
  constants->add_option("--alpha", c_alpha, "degree/indegree bound")
      ->required();
  constants->add_option("--delta", c_delta, "hyperbolicity constant")
      ->required();
  constants->add_option("--alphabet", c_asize, "generating alphabet size");

  // tessellate
  auto* tessellate = app.add_subcommand(
      "tessellate", "fill the gap between two parallel paths");
  std::string t_graph, t_p, t_q;
  long long t_delta = 0;
  std::optional<long long> t_size;
  bool t_replay = false;
  tessellate->add_option("--graph", t_graph, "digraph file")->required();
  tessellate->add_option("-p,--path-p", t_p, "first path (vertex list)")
      ->required();
  tessellate->add_option("-q,--path-q", t_q, "second path (vertex list)")
      ->required();
  tessellate->add_option("--delta", t_delta, "hyperbolicity constant")
      ->required();
  tessellate->add_option("--size-bound", t_size,
                         "subdivide triangles to size <= this (needs > "
                         "8*delta+4)");
  tessellate->add_flag("--replay", t_replay, "re-verify the certificate");

  // cayley
  auto* cayley =
      app.add_subcommand("cayley", "right Cayley-graph ball of a monoid");
  MonoidInput cay_monoid;
  int cay_radius = 3;
  std::string cay_format = "json", cay_output;
  cay_monoid.add_to(cayley);
  cayley->add_option("--radius", cay_radius, "ball radius");
  cayley->add_option("--format", cay_format, "dot or json");
  cayley->add_option("-o,--output", cay_output, "output file (default stdout)");

  // wp
  auto* wp = app.add_subcommand("wp", "word problem query");
  MonoidInput wp_monoid;
  std::string wp_u, wp_v;
  wp_monoid.add_to(wp);
  wp->add_option("u", wp_u, "first word")->required();
  wp->add_option("v", wp_v, "second word")->required();

  // greens
  auto* greens = app.add_subcommand("greens", "Green's relation query");
  MonoidInput gr_monoid;
  std::string gr_rel, gr_u, gr_v;
  std::optional<long long> gr_delta, gr_alpha, gr_bound;
  bool gr_cancellative = false;
  long long gr_budget = 200000;
  int gr_unit_cap = 6;
  gr_monoid.add_to(greens);
  greens
      ->add_option("relation", gr_rel,
                   "one of R, L, J, H, D, leqR, leqL, leqJ")
      ->required();
  greens->add_option("u", gr_u, "first word")->required();
  greens->add_option("v", gr_v, "second word")->required();
  greens->add_option("--delta", gr_delta, "hyperbolicity constant");
  greens->add_option("--alpha", gr_alpha, "indegree bound");
  greens->add_flag("--cancellative", gr_cancellative,
                   "assert cancellativity (required for D)");
  greens->add_option("--bound", gr_bound, "override the search length bound");
  greens->add_option("--budget", gr_budget, "state budget");
  greens->add_option("--unit-cap", gr_unit_cap,
                     "inverse-word length cap for unit detection");

  // dehn
  auto* dehn = app.add_subcommand("dehn", "Dehn function table");
  MonoidInput dh_monoid;
  int dh_n = 6;
  long long dh_cap = 2000000;
  dh_monoid.add_to(dehn);
  dehn->add_option("-n", dh_n, "max total word-pair length");
  dehn->add_option("--area-cap", dh_cap, "state cap per area search");

  // examples
  auto* examples = app.add_subcommand("examples", "list built-in monoids");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    int nthreads = resolve_threads(threads);
    if (analyze->parsed())
      return cmd_analyze(an_graph, an_monoid, an_radius, an_margin, an_delta,
                         delta_opt->count() > 0, nthreads);
    if (constants->parsed()) return cmd_constants(c_alpha, c_delta, c_asize);
    if (tessellate->parsed())
      return cmd_tessellate(t_graph, t_p, t_q, t_delta, t_size, t_replay,
                            nthreads);
    if (cayley->parsed())
      return cmd_cayley(cay_monoid, cay_radius, cay_format, cay_output);
    if (wp->parsed()) return cmd_wp(wp_monoid, wp_u, wp_v);
    if (greens->parsed())
      return cmd_greens(gr_monoid, gr_rel, gr_u, gr_v, gr_delta, gr_alpha,
                        gr_cancellative, gr_bound, gr_budget, gr_unit_cap);
    if (dehn->parsed()) return cmd_dehn(dh_monoid, dh_n, dh_cap);
    if (examples->parsed()) {
      for (const std::string& line : builtin_names())
        std::cout << line << "\n";
      return kExitOk;
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const UnknownAtCap& e) {
    std::cerr << "undecided: " << e.what() << "\n";
    return kExitUnknown;
  }
  return kExitOk;
}

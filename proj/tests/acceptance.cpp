// Acceptance gate: one pass/fail line per criterion, exit 0 iff all pass.

#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "dihyp/greens.hpp"
#include "dihyp/serialize.hpp"
#include "dihyp/tessellation.hpp"
#include "oracle.hpp"

using namespace dihyp;

namespace {

int g_failures = 0;

void run(int number, const std::string& title,
         const std::function<bool(std::string&)>& body) {
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  if (!ok) ++g_failures;
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << number << ": "
            << title;
  if (!detail.empty()) std::cout << " [" << detail << "]";
  std::cout << std::endl;
}

std::vector<Digraph> hand_fixtures() {
  std::vector<Digraph> out;
  Digraph diamond;
  for (const char* n : {"a", "b", "c", "d"}) diamond.add_vertex(n);
  diamond.add_edge("a", "b");
  diamond.add_edge("a", "c");
  diamond.add_edge("b", "d");
  diamond.add_edge("c", "d");
  out.push_back(diamond);

  Digraph cyc;
  for (int i = 0; i < 6; ++i) cyc.add_vertex("c" + std::to_string(i));
  for (int i = 0; i < 6; ++i) cyc.add_edge(i, (i + 1) % 6);
  out.push_back(cyc);

  out.push_back(testutil::random_bidirected_tree(3, 8));
  out.push_back(adjoin_sink(diamond));

  Digraph two_cycle;
  two_cycle.add_vertex("x");
  two_cycle.add_vertex("y");
  two_cycle.add_edge("x", "y");
  two_cycle.add_edge("y", "x");
  out.push_back(two_cycle);
  return out;
}

long long delta_star_of(const Digraph& g, int threads = 4) {
  ThinnessOptions opts;
  opts.threads = threads;
  ThinnessReport rep = min_hyperbolicity_constant(g, opts);
  return rep.delta_star.value();
}

bool criterion1(std::string& detail) {
  int checked = 0;
  for (const Digraph& g : hand_fixtures()) {
    if (min_hyperbolicity_constant(g).delta_star !=
        testutil::brute_delta_star(g)) {
      detail = "fixture mismatch";
      return false;
    }
    ++checked;
  }
  const double probs[] = {0.15, 0.25, 0.35, 0.5};
  for (int i = 0; i < 200; ++i) {
    std::uint64_t seed = 1000 + i;
    int n = 4 + i % 5;  // 4..8 vertices
    Digraph g = testutil::random_digraph(seed, n, probs[i % 4]);
    ExtDistance got = min_hyperbolicity_constant(g).delta_star;
    ExtDistance want = testutil::brute_delta_star(g);
    if (got != want) {
      detail = "seed " + std::to_string(seed) + ": got " + got.str() +
               ", oracle " + want.str();
      return false;
    }
    ++checked;
  }
  detail = std::to_string(checked) + " instances";
  return true;
}

bool criterion2(std::string& detail) {
  struct Case {
    const char* spec;
    int radius;
    long long max_delta;
  };
  const Case cases[] = {
      {"free(2)", 6, 0},
      {"bicyclic", 6, 0},
      {"polycyclic(2)", 4, 1},
      {"mi(2)", 6, 0},
  };
  for (const Case& c : cases) {
    Builtin b = builtin(c.spec);
    CayleyBall ball = cayley_ball(*b.oracle, c.radius);
    long long got = delta_star_of(ball.graph);
    if (got > c.max_delta) {
      detail = std::string(c.spec) + " r=" + std::to_string(c.radius) +
               ": delta*=" + std::to_string(got) + " > " +
               std::to_string(c.max_delta);
      return false;
    }
  }
  detail = "free(2)/bicyclic/mi(2) = 0, polycyclic(2) <= 1";
  return true;
}

bool criterion3(std::string& detail) {
  std::vector<Digraph> fixtures = hand_fixtures();
  for (std::uint64_t seed = 40; seed < 48; ++seed)
    fixtures.push_back(testutil::random_digraph(seed, 6, 0.3));
  for (std::size_t i = 0; i < fixtures.size(); ++i) {
    const Digraph& g = fixtures[i];
    long long base = delta_star_of(g);
    long long sunk = delta_star_of(adjoin_sink(g));
    if (sunk > std::max<long long>(1, base) || base > sunk) {
      detail = "sink bounds fail on fixture " + std::to_string(i);
      return false;
    }
    SccDecomposition scc = strongly_connected_components(g);
    for (const auto& cls : scc.classes) {
      if (cls.size() < 2) continue;
      if (delta_star_of(induced_subgraph(g, cls)) > base) {
        detail = "SCC exceeds whole-graph delta* on fixture " +
                 std::to_string(i);
        return false;
      }
    }
    // Bounded spaces: delta* never exceeds the largest finite distance.
    DistanceMatrix dm = DistanceMatrix::compute(g);
    if (dm.max_finite().is_finite() &&
        base > dm.max_finite().value()) {
      detail = "bounded-space inequality fails on fixture " +
               std::to_string(i);
      return false;
    }
  }
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    Digraph t = testutil::random_bidirected_tree(seed, 4 + seed % 8);
    if (delta_star_of(t) != 0) {
      detail = "bidirected tree not 0-hyperbolic, seed " +
               std::to_string(seed);
      return false;
    }
  }
  return true;
}

bool criterion4(std::string& detail) {
  std::vector<Digraph> fixtures = hand_fixtures();
  for (std::uint64_t seed = 60; seed < 64; ++seed)
    fixtures.push_back(testutil::random_digraph(seed, 6, 0.35));
  long long triangles = 0, polygons = 0;
  for (const Digraph& g : fixtures) {
    DistanceMatrix dm = DistanceMatrix::compute(g);
    long long delta = delta_star_of(g);
    DegreeBounds deg = degree_bounds(g);
    long long alpha =
        std::max<long long>(1, std::max(deg.max_indegree, deg.max_outdegree));
    ConstantsReport c = quasi_constants(alpha, delta);
    QuasiReport tri = check_triangle_quasi_inequality(g, dm, c.lambda);
    if (!tri.violations.empty()) {
      detail = "triangle inequality violated";
      return false;
    }
    triangles += tri.checked;
    for (int n : {4, 5}) {
      QuasiReport poly =
          check_polygon_quasi_inequality(g, dm, c.K, n, 10000, 7);
      if (!poly.violations.empty()) {
        detail = "polygon inequality violated, n=" + std::to_string(n);
        return false;
      }
      polygons += poly.checked;
    }
  }
  detail = std::to_string(triangles) + " triangles, " +
           std::to_string(polygons) + " polygon samples";
  return true;
}

// Deterministic parallel-path pairs: the lex-least geodesic vs a detour
// through an out-neighbor off the geodesic.
std::vector<std::pair<Path, Path>> parallel_pairs(const Digraph& g,
                                                  const DistanceMatrix& dm,
                                                  int limit) {
  std::vector<std::pair<Path, Path>> out;
  for (int u = 0; u < g.vertex_count() && (int)out.size() < limit; ++u)
    for (int v = 0; v < g.vertex_count() && (int)out.size() < limit; ++v) {
      if (u == v || !dm.at(u, v).is_finite()) continue;
      Path geo = lex_least_geodesic(g, dm, u, v);
      for (int w : g.out_neighbors(u)) {
        if (w == u || w == v || !dm.at(w, v).is_finite()) continue;
        Path detour =
            Path{{u, w}}.compose(lex_least_geodesic(g, dm, w, v));
        if (detour == geo) continue;
        out.emplace_back(detour, geo);
        break;
      }
    }
  return out;
}

bool criterion5(std::string& detail) {
  std::vector<Digraph> fixtures = hand_fixtures();
  for (std::uint64_t seed = 70; seed < 110; ++seed)
    fixtures.push_back(testutil::random_digraph(seed, 7, 0.3));
  {
    Builtin bi = builtin("bicyclic");
    fixtures.push_back(cayley_ball(*bi.oracle, 5).graph);
    Builtin fr = builtin("free(2)");
    fixtures.push_back(cayley_ball(*fr.oracle, 4).graph);
  }

  long long instances = 0;
  std::vector<std::pair<Digraph, GeodesicTriangle>> triangle_pool;
  std::vector<long long> pool_delta;
  for (const Digraph& g : fixtures) {
    DistanceMatrix dm = DistanceMatrix::compute(g);
    long long delta = delta_star_of(g);
    for (const auto& [p, q] : parallel_pairs(g, dm, 16)) {
      TessellationCertificate cert = tessellate_parallel_paths(g, dm, p, q);
      if (cert.triangles.size() >
          static_cast<std::size_t>(p.length() + q.length() + 1)) {
        detail = "filling count bound violated";
        return false;
      }
      if (cert.max_size() > 2 * (p.length() + q.length())) {
        detail = "filling size bound violated";
        return false;
      }
      if (!verify_certificate(g, dm, cert)) {
        detail = "filling certificate does not replay";
        return false;
      }
      ++instances;
      for (const GeodesicTriangle& t : cert.triangles)
        if (t.size() >= 2 && triangle_pool.size() < 60) {
          triangle_pool.emplace_back(g, t);
          pool_delta.push_back(delta);
        }
      if (instances >= 500) break;
    }
    if (instances >= 500) break;
  }
  if (instances < 500) {
    detail = "only " + std::to_string(instances) + " filling instances";
    return false;
  }

  for (std::size_t i = 0; i < triangle_pool.size(); ++i) {
    const Digraph& g = triangle_pool[i].first;
    const GeodesicTriangle& t = triangle_pool[i].second;
    long long delta = pool_delta[i];
    DistanceMatrix dm = DistanceMatrix::compute(g);
    SubdivisionResult sub = subdivide_triangle(g, dm, t, delta);
    if (sub.triangles.size() > 5) {
      detail = "subdivision exceeds 5 triangles";
      return false;
    }
    long long bound = (3LL * t.size()) / 4 + 2 * delta + 1;
    for (const GeodesicTriangle& ti : sub.triangles)
      if (ti.size() > bound) {
        detail = "subdivision size bound violated";
        return false;
      }
    TessellationCertificate cert{t.p.compose(t.q), t.r, sub.triangles,
                                 sub.steps};
    if (!verify_certificate(g, dm, cert)) {
      detail = "subdivision certificate does not replay";
      return false;
    }
    for (long long C = 8 * delta + 5; C <= 8 * delta + 20; C += 3) {
      BoundedTessellation bt = tessellate_triangle_to_size(g, dm, t, delta, C);
      if (bt.certificate.max_size() > C) {
        detail = "bounded tessellation exceeds target size";
        return false;
      }
      if (static_cast<double>(bt.certificate.triangles.size()) >
          bt.count_bound + 1e-9) {
        detail = "bounded tessellation exceeds count bound";
        return false;
      }
      if (!verify_certificate(g, dm, bt.certificate)) {
        detail = "bounded tessellation does not replay";
        return false;
      }
    }
  }
  detail = std::to_string(instances) + " instances, " +
           std::to_string(triangle_pool.size()) + " subdivision triangles";
  return true;
}

bool criterion6(std::string& detail) {
  ConstantsReport q = quasi_constants(2, 1);
  if (q.lambda != Rational(12) || q.K != Rational(144)) {
    detail = "quasi_constants(2,1) wrong";
    return false;
  }
  GreensConstants gc = greens_constants(2, 2, 1);
  if (gc.C(2) != Rational(4) || gc.W != Rational(7)) {
    detail = "C(2) or W wrong";
    return false;
  }
  // E and F are monotone and affine over a 10x10 grid: constant second
  // differences in each argument and nonnegative first differences.
  Rational e_du = gc.E(1, 0) - gc.E(0, 0);
  Rational e_dv = gc.E(0, 1) - gc.E(0, 0);
  Rational f_du = gc.F(1, 0) - gc.F(0, 0);
  Rational f_dv = gc.F(0, 1) - gc.F(0, 0);
  if (e_du < 0 || e_dv < 0 || f_du < 0 || f_dv < 0) {
    detail = "not monotone";
    return false;
  }
  for (long long u = 0; u < 10; ++u)
    for (long long v = 0; v < 10; ++v) {
      if (gc.E(u + 1, v) - gc.E(u, v) != e_du ||
          gc.E(u, v + 1) - gc.E(u, v) != e_dv ||
          gc.F(u + 1, v) - gc.F(u, v) != f_du ||
          gc.F(u, v + 1) - gc.F(u, v) != f_dv) {
        detail = "not affine at (" + std::to_string(u) + "," +
                 std::to_string(v) + ")";
        return false;
      }
      // Affine upper bound: F(u,v) <= F(0,0) + f_du*u + f_dv*v exactly.
      if (gc.F(u, v) != gc.F(0, 0) + f_du * Rational(u) + f_dv * Rational(v)) {
        detail = "linear bound fails";
        return false;
      }
    }
  return true;
}

bool agree(VerdictKind kind, bool expected) {
  if (kind == VerdictKind::unknown) return false;
  return (kind == VerdictKind::yes) == expected;
}

bool criterion7(std::string& detail) {
  std::vector<FiniteTable> tables;
  FiniteTable semilattice;
  semilattice.element_names = {"e", "f"};
  semilattice.identity = 0;
  semilattice.product = {{0, 1}, {1, 1}};
  tables.push_back(semilattice);
  for (std::uint64_t seed = 1; tables.size() < 21; ++seed)
    tables.push_back(testutil::random_finite_monoid(seed, 6));

  for (std::size_t k = 0; k < tables.size(); ++k) {
    const FiniteTable& t = tables[k];
    FiniteGreens fg = exact_greens_finite(t);
    TableOracle oracle(t);
    for (int a = 0; a < t.order(); ++a)
      for (int b = 0; b < t.order(); ++b) {
        Word u{a}, v{b};
        if (!agree(decide_leq_R(oracle, std::nullopt, v, u).kind,
                   fg.leqR[a][b]) ||
            !agree(decide_leq_L(oracle, std::nullopt, v, u).kind,
                   fg.leqL[a][b]) ||
            !agree(decide_leq_J(oracle, std::nullopt, v, u).kind,
                   fg.leqJ[a][b])) {
          detail = "pre-order disagreement, table " + std::to_string(k);
          return false;
        }
        EquivalenceVerdicts eq =
            decide_equivalences(oracle, std::nullopt, u, v);
        if (!agree(eq.R.kind, fg.R[a][b]) || !agree(eq.L.kind, fg.L[a][b]) ||
            !agree(eq.J.kind, fg.J[a][b]) || !agree(eq.H.kind, fg.H[a][b])) {
          detail = "equivalence disagreement, table " + std::to_string(k);
          return false;
        }
      }
  }
  detail = std::to_string(tables.size()) + " monoids, all pairs";
  return true;
}

bool criterion8(std::string& detail) {
  Builtin m = builtin("jnotd");
  const MonoidPresentation& p = m.pres;
  Word x = p.parse_word("x");
  Word y = p.parse_word("y");

  GreensVerdict jxy = decide_leq_J(*m.oracle, std::nullopt, x, y);
  GreensVerdict jyx = decide_leq_J(*m.oracle, std::nullopt, y, x);
  if (jxy.kind != VerdictKind::yes || jyx.kind != VerdictKind::yes) {
    detail = "x J y not found";
    return false;
  }
  // Re-verify the witness: a x b == y.
  Word w = jxy.witnesses[0];
  w.insert(w.end(), x.begin(), x.end());
  w.insert(w.end(), jxy.witnesses[1].begin(), jxy.witnesses[1].end());
  if (m.oracle->equal(w, y) != std::optional<bool>(true)) {
    detail = "J witness fails re-verification";
    return false;
  }

  EquivalenceVerdicts eq = decide_equivalences(*m.oracle, std::nullopt, x, y);
  if (eq.R.kind != VerdictKind::no || eq.L.kind != VerdictKind::no) {
    detail = "R/L should be no-within-bound";
    return false;
  }

  std::vector<int> units = detect_unit_generators(*m.oracle, 6);
  if (!units.empty()) {
    detail = "unit subalphabet should be empty at cap 6";
    return false;
  }
  GreensVerdict d = decide_D_cancellative(*m.oracle, std::nullopt, units, x, y);
  if (d.kind != VerdictKind::no || !d.certified) {
    detail = "x D y should be a certified no";
    return false;
  }
  detail = "J yes (witness re-verified), R/L no-within-bound, D no";
  return true;
}

bool criterion9(std::string& detail) {
  Builtin m = builtin("mi(1,3)");
  const MonoidPresentation& p = m.pres;
  const RewritingOracle* rw = dynamic_cast<const RewritingOracle*>(
      m.oracle.get());
  if (rw == nullptr) {
    detail = "mi(1,3) oracle is not rewriting-based";
    return false;
  }

  // Prefix invariance on all equal word pairs up to length 8: group words
  // by normal form, then check every word against its class normal form
  // (prefix agreement is transitive through a common member).
  std::map<Word, std::vector<Word>> classes;
  std::vector<Word> frontier{Word{}};
  long long words = 0;
  for (int len = 0; len <= 8; ++len) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      classes[*m.oracle->rep_key(w)].push_back(w);
      ++words;
      if (len < 8)
        for (int g = 0; g < 4; ++g) {
          Word w2 = w;
          w2.push_back(g);
          next.push_back(std::move(w2));
        }
    }
    frontier = std::move(next);
  }
  long long pairs = 0;
  for (const auto& [nf, members] : classes)
    for (const Word& w : members) {
      if (!prefix_invariance_check(*m.oracle, w, members.front())) {
        detail = "prefix invariance fails for " + p.word_str(w);
        return false;
      }
      ++pairs;
    }

  // Right cancellativity: us == vs implies u == v, on seeded word triples.
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> len_pick(0, 5), gen_pick(0, 3);
  auto random_word = [&] {
    Word w;
    int len = len_pick(rng);
    for (int i = 0; i < len; ++i) w.push_back(gen_pick(rng));
    return w;
  };
  for (int trial = 0; trial < 3000; ++trial) {
    Word u = random_word(), v = random_word(), s = random_word();
    Word us = u, vs = v;
    us.insert(us.end(), s.begin(), s.end());
    vs.insert(vs.end(), s.begin(), s.end());
    if (m.oracle->equal(us, vs) == std::optional<bool>(true) &&
        m.oracle->equal(u, v) != std::optional<bool>(true)) {
      detail = "right cancellativity fails";
      return false;
    }
  }

  // J-triviality on sampled pairs of distinct radius-6 ball elements:
  // distinct elements must never both be <=_J each other.
  CayleyBall ball = cayley_ball(*m.oracle, 6);
  std::uniform_int_distribution<std::size_t> vpick(0, ball.words.size() - 1);
  GreensSearchOptions opts;
  opts.state_budget = 20000;
  int jchecked = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const Word& u = ball.words[vpick(rng)];
    const Word& v = ball.words[vpick(rng)];
    if (m.oracle->equal(u, v) == std::optional<bool>(true)) continue;
    GreensVerdict a = decide_leq_J(*m.oracle, std::nullopt, u, v, opts);
    GreensVerdict b = decide_leq_J(*m.oracle, std::nullopt, v, u, opts);
    if (a.kind == VerdictKind::yes && b.kind == VerdictKind::yes) {
      detail = "J-triviality fails for " + p.word_str(u) + ", " +
               p.word_str(v);
      return false;
    }
    ++jchecked;
  }
  detail = std::to_string(pairs) + " prefix pairs, 3000 cancellation "
           "triples, " + std::to_string(jchecked) + " J pairs";
  return true;
}

bool criterion10(std::string& detail) {
  DehnTable fr = dehn_function_estimate(free_monoid(2), 8, 200000);
  for (const ExtDistance& v : fr.values)
    if (v != ExtDistance::of(0)) {
      detail = "free(2) Dehn values not all zero";
      return false;
    }

  struct Case {
    const char* spec;
    long long delta;
  };
  for (const Case& c : {Case{"bicyclic", 0}, Case{"mi(2)", 0}}) {
    Builtin b = builtin(c.spec);
    DehnTable table = dehn_function_estimate(b.pres, 8, 200000);
    if (table.hit_cap) {
      detail = std::string(c.spec) + ": area search hit its cap";
      return false;
    }
    if (std::string(c.spec) == "bicyclic" &&
        table.values[1] != ExtDistance::of(1)) {
      detail = "bicyclic delta(2) != 1";
      return false;
    }
    long long C = 8 * c.delta + 5;
    double denom = static_cast<double>(C - 8 * c.delta - 4);
    for (std::size_t i = 0; i < table.values.size(); ++i) {
      long long n = static_cast<long long>(i) + 1;
      // Degree log_{4/3}5 + 1 polynomial: 5 (n+1) (2n / (C-8delta-4))^e.
      double bound = 5.0 * static_cast<double>(n + 1) *
                     std::pow(2.0 * n / denom, tessellation_count_exponent());
      if (!table.values[i].is_finite()) {
        detail = std::string(c.spec) + ": infinite area at n=" +
                 std::to_string(n);
        return false;
      }
      if (static_cast<double>(table.values[i].value()) > bound) {
        detail = std::string(c.spec) + ": delta(" + std::to_string(n) +
                 ") above the polynomial bound";
        return false;
      }
    }
  }
  detail = "free(2) zero, bicyclic delta(2)=1, bounds hold to n=8";
  return true;
}

}  // namespace

int main() {
  run(1, "delta* matches the brute-force thinness oracle", criterion1);
  run(2, "built-in monoid balls reproduce the expected constants",
      criterion2);
  run(3, "closure properties (sink, SCC, bidirected trees, bounded spaces)",
      criterion3);
  run(4, "quasi-geodesic triangle and polygon inequalities", criterion4);
  run(5, "tessellation count/size bounds and certificate replay", criterion5);
  run(6, "constants: closed forms, monotonicity, affine bounds", criterion6);
  run(7, "bounded Green's deciders agree with exact ideals", criterion7);
  run(8, "J-without-D example verdicts", criterion8);
  run(9, "prefix invariance, right cancellativity, J-triviality",
      criterion9);
  run(10, "Dehn function values and polynomial bound", criterion10);
  if (g_failures > 0) {
    std::cout << g_failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all 10 criteria passed" << std::endl;
  return 0;
}

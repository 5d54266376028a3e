#include "dihyp/tessellation.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace dihyp {

namespace {

Path empty_path_at(int v) { return Path{{v}}; }

bool has_loop_edge(const Path& p) {
  for (std::size_t i = 0; i + 1 < p.v.size(); ++i)
    if (p.v[i] == p.v[i + 1]) return true;
  return false;
}

}  // namespace

int TessellationCertificate::max_size() const {
  int best = 0;
  for (const auto& t : triangles) best = std::max(best, t.size());
  return best;
}

std::size_t DirectedTwoComplex::adjoin_cell(const DistanceMatrix& dm,
                                            const GeodesicTriangle& t) {
  if (!t.valid_in(*graph_, dm))
    throw InputError("cell boundary is not a geodesic triangle");
  std::size_t idx = cells_.size();
  Path top = t.p.compose(t.q);
  cells_.push_back(TwoCell{top, t.r});
  cells_.push_back(TwoCell{t.r, top});  // the inverse cell
  return idx;
}

TwoPathCheck verify_two_path(const DirectedTwoComplex& k, const TwoPath& tp) {
  TwoPathCheck check;
  Path prev_bottom;
  for (std::size_t i = 0; i < tp.steps.size(); ++i) {
    const AtomicStep& s = tp.steps[i];
    check.failed_step = static_cast<int>(i);
    if (s.cell >= k.cell_count()) return check;
    const TwoCell& cell = k.cell(s.cell);
    if (!s.prefix.valid_in(k.graph()) || !s.suffix.valid_in(k.graph()))
      return check;
    if (s.prefix.end() != cell.top.start() ||
        cell.top.end() != s.suffix.start())
      return check;
    Path top = s.prefix.compose(cell.top).compose(s.suffix);
    Path bottom = s.prefix.compose(cell.bottom).compose(s.suffix);
    if (i == 0)
      check.top = top;
    else if (!(prev_bottom == top))
      return check;  // broken chain: bottom of i-1 must equal top of i
    prev_bottom = bottom;
  }
  check.ok = true;
  check.failed_step = -1;
  check.bottom = prev_bottom;
  return check;
}

bool verify_certificate(const Digraph& g, const DistanceMatrix& dm,
                        const TessellationCertificate& cert) {
  try {
    DirectedTwoComplex complex(g);
    std::vector<std::size_t> cell_of;
    cell_of.reserve(cert.triangles.size());
    for (const auto& t : cert.triangles)
      cell_of.push_back(complex.adjoin_cell(dm, t));

    TwoPath tp;
    for (const auto& s : cert.steps) {
      if (s.tri >= cert.triangles.size()) return false;
      std::size_t cell = cell_of[s.tri] + (s.inverted ? 1 : 0);
      tp.steps.push_back(AtomicStep{s.prefix, cell, s.suffix});
    }
    if (tp.steps.empty()) return cert.top == cert.bottom;
    TwoPathCheck check = verify_two_path(complex, tp);
    return check.ok && check.top == cert.top && check.bottom == cert.bottom;
  } catch (const InputError&) {
    return false;
  }
}

namespace {

// Repeatedly replaces the shortest non-geodesic prefix x.e (x geodesic,
// e one edge) by a fresh geodesic, emitting one triangle (x, e, fresh) per
// round; returns the final geodesic path.
Path reduce_to_geodesic(const Digraph& g, const DistanceMatrix& dm, Path path,
                        std::vector<GeodesicTriangle>& triangles,
                        std::vector<CertStep>& steps) {
  while (!path.is_geodesic(dm)) {
    int len = path.length();
    int e = 1;
    while (e <= len && path.sub(0, e).is_geodesic(dm)) ++e;
    // path.sub(0, e) is the shortest non-geodesic prefix.
    GeodesicTriangle t;
    t.p = path.sub(0, e - 1);
    t.q = path.sub(e - 1, e);
    t.r = lex_least_geodesic(g, dm, path.start(), path.v[e]);
    std::size_t idx = triangles.size();
    triangles.push_back(t);
    steps.push_back(CertStep{empty_path_at(path.start()), idx, false,
                             path.sub(e, len)});
    path = t.r.compose(path.sub(e, len));
  }
  return path;
}

}  // namespace

TessellationCertificate tessellate_parallel_paths(const Digraph& g,
                                                  const DistanceMatrix& dm,
                                                  const Path& p,
                                                  const Path& q) {
  if (!p.valid_in(g) || !q.valid_in(g))
    throw InputError("not a path of the graph");
  if (!p.parallel_to(q)) throw InputError("paths are not parallel");
  if (has_loop_edge(p) || has_loop_edge(q))
    throw InputError("paths with loop edges cannot be tessellated "
                     "by geodesic triangles");

  TessellationCertificate cert;
  cert.top = p;
  cert.bottom = q;

  Path p_hat = reduce_to_geodesic(g, dm, p, cert.triangles, cert.steps);

  std::vector<GeodesicTriangle> q_triangles;
  std::vector<CertStep> q_steps;
  Path q_hat = reduce_to_geodesic(g, dm, q, q_triangles, q_steps);

  // Base cell joining the two geodesics: triangle (p_hat, empty, q_hat).
  GeodesicTriangle base{p_hat, empty_path_at(p_hat.end()), q_hat};
  std::size_t base_idx = cert.triangles.size();
  cert.triangles.push_back(base);
  cert.steps.push_back(CertStep{empty_path_at(p.start()), base_idx, false,
                                empty_path_at(p.end())});

  // The q-side reductions transformed q downwards; replay them upwards
  // (inverted, in reverse order) to land on q itself.
  std::size_t offset = cert.triangles.size();
  for (const auto& t : q_triangles) cert.triangles.push_back(t);
  for (auto it = q_steps.rbegin(); it != q_steps.rend(); ++it)
    cert.steps.push_back(
        CertStep{it->prefix, offset + it->tri, true, it->suffix});
  return cert;
}

namespace {

// First position along `side` whose vertex v satisfies pred(v); -1 if none.
template <typename Pred>
int find_on_path(const Path& side, Pred pred) {
  for (std::size_t i = 0; i < side.v.size(); ++i)
    if (pred(side.v[i])) return static_cast<int>(i);
  return -1;
}

GeodesicTriangle reverse_triangle(const GeodesicTriangle& t) {
  return GeodesicTriangle{t.q.reversed(), t.p.reversed(), t.r.reversed()};
}

// Subdivision for the case |p| >= |q|, following the two-level case
// analysis; every fresh geodesic is the lex-least one for reproducibility.
SubdivisionResult subdivide_primal(const Digraph& g, const DistanceMatrix& dm,
                                   const GeodesicTriangle& t,
                                   long long delta) {
  const int P = t.p.start(), Q = t.p.end(), R = t.q.end();
  const int k = t.p.length();
  ExtDistance bound = ExtDistance::of(delta);

  int mpos = k / 2;
  int M = t.p.v[mpos];
  Path PM = t.p.sub(0, mpos);
  Path MQ = t.p.sub(mpos, k);

  SubdivisionResult result;

  // Case (a): some vertex O of the q side is within out-distance delta
  // of the midpoint M.
  int opos = find_on_path(t.q, [&](int v) { return dm.at(M, v) <= bound; });
  if (opos >= 0) {
    int O = t.q.v[opos];
    Path QO = t.q.sub(0, opos);
    Path OR = t.q.sub(opos, t.q.length());
    Path MO = lex_least_geodesic(g, dm, M, O);
    Path PO = lex_least_geodesic(g, dm, P, O);
    GeodesicTriangle T1{MQ, QO, MO};
    GeodesicTriangle T2{PM, MO, PO};
    GeodesicTriangle T3{PO, OR, t.r};
    result.triangles = {T1, T2, T3};
    result.steps = {
        CertStep{PM, 0, false, OR},
        CertStep{empty_path_at(P), 1, false, OR},
        CertStep{empty_path_at(P), 2, false, empty_path_at(R)},
    };
    result.case_used = "a";
    return result;
  }

  // Case (b): some vertex O of the hypotenuse is within in-distance delta
  // of M.
  opos = find_on_path(t.r, [&](int v) { return dm.at(v, M) <= bound; });
  if (opos < 0)
    throw InputError("graph is not strongly delta-hyperbolic at this "
                     "triangle: midpoint " + g.name(M) +
                     " is not covered from the other sides");
  int O = t.r.v[opos];
  Path PO = t.r.sub(0, opos);
  Path OR = t.r.sub(opos, t.r.length());
  Path OM = lex_least_geodesic(g, dm, O, M);
  Path OQ = lex_least_geodesic(g, dm, O, Q);
  GeodesicTriangle T2{OM, MQ, OQ};
  GeodesicTriangle T3{OQ, t.q, OR};
  // T1 = (PO, OM, PM) would have no useful size bound; subdivide it again
  // at the midpoint U of PO.
  int x = PO.length();
  int upos = x / 2;
  int U = PO.v[upos];
  Path PU = PO.sub(0, upos);
  Path UO = PO.sub(upos, x);

  Path suffix_tail = MQ.compose(t.q);  // common suffix M -> Q -> R

  // Case (b)(i): some vertex S of OM is within out-distance delta of U.
  int spos = find_on_path(OM, [&](int v) { return dm.at(U, v) <= bound; });
  if (spos >= 0) {
    int S = OM.v[spos];
    Path OS = OM.sub(0, spos);
    Path SM = OM.sub(spos, OM.length());
    Path US = lex_least_geodesic(g, dm, U, S);
    Path UM = lex_least_geodesic(g, dm, U, M);
    GeodesicTriangle Y1{PU, UM, PM};
    GeodesicTriangle Y2{US, SM, UM};
    GeodesicTriangle Y3{UO, OS, US};
    result.triangles = {T2, T3, Y1, Y2, Y3};
    result.steps = {
        // Expand PM -> PU . UM -> PU . US . SM -> PU . UO . OS . SM.
        CertStep{empty_path_at(P), 2, true, suffix_tail},
        CertStep{PU, 3, true, suffix_tail},
        CertStep{PU, 4, true, SM.compose(suffix_tail)},
        // Then collapse OM . MQ -> OQ and OQ . QR -> OR.
        CertStep{PO, 0, false, t.q},
        CertStep{PO, 1, false, empty_path_at(R)},
    };
    result.case_used = "b(i)";
    return result;
  }

  // Case (b)(ii): some vertex S of PM is within in-distance delta of U.
  spos = find_on_path(PM, [&](int v) { return dm.at(v, U) <= bound; });
  if (spos < 0)
    throw InputError("graph is not strongly delta-hyperbolic at this "
                     "triangle: inner midpoint " + g.name(U) +
                     " is not covered from the other sides");
  int S = PM.v[spos];
  Path PS = PM.sub(0, spos);
  Path SM = PM.sub(spos, PM.length());
  Path SU = lex_least_geodesic(g, dm, S, U);
  Path SO = lex_least_geodesic(g, dm, S, O);
  GeodesicTriangle Y1{PS, SU, PU};
  GeodesicTriangle Y2{SU, UO, SO};
  GeodesicTriangle Y3{SO, OM, SM};
  result.triangles = {T2, T3, Y1, Y2, Y3};
  result.steps = {
      // Expand PM = PS . SM -> PS . SO . OM -> PS . SU . UO . OM,
      // then collapse PS . SU -> PU, giving PO . OM.
      CertStep{PS, 4, true, suffix_tail},
      CertStep{PS, 3, true, OM.compose(suffix_tail)},
      CertStep{empty_path_at(P), 2, false, UO.compose(OM).compose(suffix_tail)},
      // Then collapse OM . MQ -> OQ and OQ . QR -> OR.
      CertStep{PO, 0, false, t.q},
      CertStep{PO, 1, false, empty_path_at(R)},
  };
  result.case_used = "b(ii)";
  return result;
}

// Lazily materialized reversed graph for the dual case |q| > |p|.
struct TessContext {
  const Digraph& g;
  const DistanceMatrix& dm;
  std::optional<Digraph> gr;
  std::optional<DistanceMatrix> dmr;

  TessContext(const Digraph& graph, const DistanceMatrix& matrix)
      : g(graph), dm(matrix) {}

  void ensure_reversed() {
    if (!gr) {
      gr = g.reversed();
      dmr = DistanceMatrix::compute(*gr);
    }
  }
};

SubdivisionResult subdivide_in_context(TessContext& ctx,
                                       const GeodesicTriangle& t,
                                       long long delta) {
  if (t.size() <= 1) {
    SubdivisionResult result;
    result.triangles = {t};
    result.steps = {CertStep{empty_path_at(t.p.start()), 0, false,
                             empty_path_at(t.r.end())}};
    result.case_used = "trivial";
    return result;
  }
  if (t.p.length() >= t.q.length())
    return subdivide_primal(ctx.g, ctx.dm, t, delta);

  // Dual case: subdivide the reversed triangle in the reversed graph and
  // map triangles and steps back; step order and inversion flags carry
  // over because reversing every 1-path preserves the homotopy chain.
  ctx.ensure_reversed();
  GeodesicTriangle rev = reverse_triangle(t);
  SubdivisionResult r = subdivide_primal(*ctx.gr, *ctx.dmr, rev, delta);
  SubdivisionResult out;
  out.case_used = r.case_used + " (dual)";
  for (const auto& rt : r.triangles)
    out.triangles.push_back(reverse_triangle(rt));
  for (const auto& s : r.steps)
    out.steps.push_back(
        CertStep{s.suffix.reversed(), s.tri, s.inverted, s.prefix.reversed()});
  return out;
}

}  // namespace

SubdivisionResult subdivide_triangle(const Digraph& g, const DistanceMatrix& dm,
                                     const GeodesicTriangle& t,
                                     long long delta) {
  if (!t.valid_in(g, dm)) throw InputError("not a geodesic triangle");
  if (delta < 0) throw InputError("delta must be nonnegative");
  TessContext ctx(g, dm);
  return subdivide_in_context(ctx, t, delta);
}

double tessellation_count_exponent() {
  return std::log(5.0) / std::log(4.0 / 3.0);
}

namespace {

// Recursive subdivision: emits replay steps for top(t) -> bottom(t) over a
// shared triangle list, expanding each subdivision step by the recursive
// certificate of its triangle (reversed and re-inverted when the step
// itself is inverted).
void tessellate_rec(TessContext& ctx, const GeodesicTriangle& t,
                    long long delta, long long C,
                    std::vector<GeodesicTriangle>& triangles,
                    std::vector<CertStep>& steps, int depth) {
  if (depth > 96) throw std::logic_error("subdivision recursion too deep");
  if (t.size() <= C) {
    std::size_t idx = triangles.size();
    triangles.push_back(t);
    steps.push_back(CertStep{empty_path_at(t.p.start()), idx, false,
                             empty_path_at(t.r.end())});
    return;
  }
  SubdivisionResult sub = subdivide_in_context(ctx, t, delta);
  for (const auto& s : sub.steps) {
    std::vector<CertStep> inner;
    tessellate_rec(ctx, sub.triangles[s.tri], delta, C, triangles, inner,
                   depth + 1);
    if (!s.inverted) {
      for (const auto& r : inner)
        steps.push_back(CertStep{s.prefix.compose(r.prefix), r.tri, r.inverted,
                                 r.suffix.compose(s.suffix)});
    } else {
      for (auto it = inner.rbegin(); it != inner.rend(); ++it)
        steps.push_back(CertStep{s.prefix.compose(it->prefix), it->tri,
                                 !it->inverted,
                                 it->suffix.compose(s.suffix)});
    }
  }
}

}  // namespace

BoundedTessellation tessellate_triangle_to_size(const Digraph& g,
                                                const DistanceMatrix& dm,
                                                const GeodesicTriangle& t,
                                                long long delta, long long C) {
  if (C <= 8 * delta + 4)
    throw InputError("size target must exceed 8*delta + 4");
  if (!t.valid_in(g, dm)) throw InputError("not a geodesic triangle");

  BoundedTessellation out;
  long long sigma = t.size();
  out.size_sequence.push_back(sigma);
  for (long long s = sigma; s > C;) {
    s = (3 * s) / 4 + 2 * delta + 1;
    out.size_sequence.push_back(s);
  }
  out.count_bound =
      sigma <= C ? 1.0
                 : 5.0 * std::pow(static_cast<double>(sigma) /
                                      static_cast<double>(C - 8 * delta - 4),
                                  tessellation_count_exponent());

  out.certificate.top = t.p.compose(t.q);
  out.certificate.bottom = t.r;
  TessContext ctx(g, dm);
  tessellate_rec(ctx, t, delta, C, out.certificate.triangles,
                 out.certificate.steps, 0);
  return out;
}

DehnArea dehn_area(const MonoidPresentation& p, const Word& u, const Word& v,
                   long long cap) {
  if (u == v) return DehnArea{ExtDistance::of(0), false};
  // Bidirectional level-by-level BFS in the word graph. A meeting node is
  // detected at generation time, so once depth_u + depth_v >= best - 1 no
  // shorter connection can remain undiscovered.
  std::map<Word, long long> dist[2];
  std::vector<Word> frontier[2] = {{u}, {v}};
  dist[0][u] = 0;
  dist[1][v] = 0;
  long long depth[2] = {0, 0};
  long long best = -1;
  long long states = 2;

  while (!frontier[0].empty() || !frontier[1].empty()) {
    if (best >= 0 && depth[0] + depth[1] >= best - 1)
      return DehnArea{ExtDistance::of(best), false};
    int side;
    if (frontier[0].empty())
      side = 1;
    else if (frontier[1].empty())
      side = 0;
    else
      side = frontier[0].size() <= frontier[1].size() ? 0 : 1;
    std::vector<Word> next;
    for (const Word& w : frontier[side]) {
      long long dw = dist[side][w];
      for (Word& nb : relation_neighbors(p, w)) {
        auto other = dist[1 - side].find(nb);
        if (other != dist[1 - side].end()) {
          long long cand = dw + 1 + other->second;
          if (best < 0 || cand < best) best = cand;
        }
        if (!dist[side].count(nb)) {
          if (++states > cap) {
            if (best >= 0 && depth[0] + depth[1] >= best - 1)
              return DehnArea{ExtDistance::of(best), false};
            return DehnArea{ExtDistance::infinity(), true};
          }
          dist[side].emplace(nb, dw + 1);
          next.push_back(std::move(nb));
        }
      }
    }
    frontier[side] = std::move(next);
    ++depth[side];
  }
  if (best >= 0) return DehnArea{ExtDistance::of(best), false};
  return DehnArea{ExtDistance::infinity(), false};  // distinct components
}

DehnTable dehn_function_estimate(const MonoidPresentation& p, int n,
                                 long long cap) {
  if (n < 1) throw InputError("n must be >= 1");
  std::size_t alphabet = p.generators.size();
  double estimate = 1;
  for (int i = 0; i < n; ++i) estimate *= static_cast<double>(alphabet);
  if (estimate > 5e5)
    throw InputError("word enumeration too large; reduce n");

  RewritingSystem rs = RewritingSystem::orient_and_check(p);
  if (rs.status() != ConfluenceStatus::checked)
    throw InputError("presentation is not confluence-checked; cannot "
                     "enumerate equivalence classes");

  // Group all words of length <= n by normal form.
  std::map<Word, std::vector<Word>> classes;
  std::vector<Word> level{{}};
  classes[rs.normal_form({})].push_back({});
  for (int len = 1; len <= n; ++len) {
    std::vector<Word> next;
    for (const Word& w : level) {
      for (std::size_t g = 0; g < alphabet; ++g) {
        Word x = w;
        x.push_back(static_cast<int>(g));
        classes[rs.normal_form(x)].push_back(x);
        next.push_back(std::move(x));
      }
    }
    level = std::move(next);
  }

  DehnTable table;
  std::vector<long long> max_at(n + 1, 0);
  for (const auto& [nf, members] : classes) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        int total =
            static_cast<int>(members[i].size() + members[j].size());
        if (total > n) continue;
        DehnArea a = dehn_area(p, members[i], members[j], cap);
        if (a.hit_cap) table.hit_cap = true;
        if (a.area.is_finite())
          max_at[total] = std::max(max_at[total], a.area.value());
      }
    }
  }
  long long running = 0;
  for (int m = 1; m <= n; ++m) {
    running = std::max(running, max_at[m]);
    table.values.push_back(ExtDistance::of(running));
  }
  return table;
}

}  // namespace dihyp

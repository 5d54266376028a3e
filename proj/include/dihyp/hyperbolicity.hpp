// Thinness of geodesic triangles in directed graphs: the minimal strong
// hyperbolicity constant delta*, per-vertex cover radii, and the
// quasi-inequality constants lambda and K.

#ifndef DIHYP_HYPERBOLICITY_HPP_
#define DIHYP_HYPERBOLICITY_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include "dihyp/digraph.hpp"

namespace dihyp {

using Rational = boost::multiprecision::cpp_rational;

// Ordered triple of geodesics: p and q composable, p o q parallel to r.
struct GeodesicTriangle {
  Path p, q, r;

  int size() const { return p.length() + q.length(); }

  bool valid_in(const Digraph& g, const DistanceMatrix& dm) const;
};

enum class SideRole { p, q, r };

const char* side_role_name(SideRole role);

struct ThinnessWitness {
  int P, Q, R;           // vertex triple
  SideRole role;         // side whose cover requirement attains the max
  int offending_vertex;  // vertex on that side needing the largest radius
  ExtDistance required_radius;
};

struct ThinnessReport {
  ExtDistance delta_star;
  std::optional<ThinnessWitness> witness;
  int truncation_margin = 0;
  // True when the truncation margin skipped triples, so delta_star is only
  // a lower bound for the untruncated object.
  bool lower_bound_only = false;
};

struct ConstantsReport {
  long long alpha;
  long long delta;
  Rational lambda;  // 3((alpha+1)^(delta+1) - 1)/alpha
  Rational K;       // max(lambda^2, 1)
  std::string derivation;
};

struct ThinnessOptions {
  // When set, only vertex triples all of whose side-interval vertices lie
  // within distance radius - margin of root contribute; used for analyzing
  // finite truncations of infinite Cayley graphs.
  std::optional<int> root;
  int radius = 0;
  int margin = 0;
  int threads = 1;
};

// Vertices lying on at least one geodesic from A to B:
// {v : d(A,v) + d(v,B) = d(A,B)}. Requires d(A,B) finite.
std::vector<int> on_some_geodesic(const DistanceMatrix& dm, int A, int B);

// Subgraph on on_some_geodesic(A,B) keeping edge (u,v) iff
// d(A,u) + 1 + d(v,B) = d(A,B). Its A->B paths are exactly the geodesics.
Digraph geodesic_dag(const Digraph& g, const DistanceMatrix& dm, int A, int B);

// Least radius delta such that every geodesic A->B contains a vertex x with
// d(x,v) <= delta; INFINITY if no finite radius suffices.
ExtDistance min_out_cover_radius(const Digraph& g, const DistanceMatrix& dm,
                                 int A, int B, int v);

// Dual: least delta such that every geodesic A->B contains y with
// d(v,y) <= delta.
ExtDistance min_in_cover_radius(const Digraph& g, const DistanceMatrix& dm,
                                int A, int B, int v);

// Radius the vertex v (on some geodesic of the side named by role, within
// the triangle on vertices (P,Q,R)) forces on delta for every triangle on
// that triple to be delta-thin.
ExtDistance vertex_thinness_requirement(const Digraph& g,
                                        const DistanceMatrix& dm, int P, int Q,
                                        int R, SideRole role, int v);

ThinnessReport min_hyperbolicity_constant(const Digraph& g,
                                          const ThinnessOptions& opts = {});

struct HyperbolicityCheck {
  bool holds;
  std::optional<GeodesicTriangle> counterexample;  // a non-thin triangle
  ThinnessReport report;
};

HyperbolicityCheck is_strongly_delta_hyperbolic(const Digraph& g,
                                                ExtDistance delta,
                                                const ThinnessOptions& opts = {});

ConstantsReport quasi_constants(long long alpha, long long delta);

struct QuasiViolation {
  std::vector<int> corners;            // the n-gon's corner vertices
  std::vector<long long> side_lengths;
  int offending_side;
};

struct QuasiReport {
  long long checked = 0;
  std::vector<QuasiViolation> violations;  // capped at a few entries
};

// Checks |side| <= lambda * (sum of other two side lengths) over all vertex
// triples with all three distances finite (side lengths determine the
// inequality, so triples suffice).
QuasiReport check_triangle_quasi_inequality(const Digraph& g,
                                            const DistanceMatrix& dm,
                                            const Rational& lambda);

// Samples (or exhausts when feasible) directed geodesic n-gons and checks
// every side length <= K * (sum of the others). Deterministic for a seed.
QuasiReport check_polygon_quasi_inequality(const Digraph& g,
                                           const DistanceMatrix& dm,
                                           const Rational& K, int n,
                                           long long samples,
                                           std::uint64_t seed = 1);

// Lexicographically least geodesic A->B by vertex index (requires
// d(A,B) finite); deterministic fresh-geodesic choice used throughout.
Path lex_least_geodesic(const Digraph& g, const DistanceMatrix& dm, int A,
                        int B);

}  // namespace dihyp

#endif  // DIHYP_HYPERBOLICITY_HPP_

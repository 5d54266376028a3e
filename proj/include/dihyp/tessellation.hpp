// Directed 2-complexes and the constructive tessellation pipeline:
// parallel-path filling by geodesic triangles, 5-way triangle subdivision,
// iterated subdivision to bounded size, and word-graph area estimation.

#ifndef DIHYP_TESSELLATION_HPP_
#define DIHYP_TESSELLATION_HPP_

#include "dihyp/hyperbolicity.hpp"
#include "dihyp/monoid.hpp"

namespace dihyp {

// A 2-cell bounded by parallel top/bottom paths. Cells are stored in
// inverse pairs: cell 2k+1 is the inverse of cell 2k (top and bottom
// swapped), making the inverse map a fixed-point-free involution.
struct TwoCell {
  Path top, bottom;
};

class DirectedTwoComplex {
 public:
  explicit DirectedTwoComplex(const Digraph& graph) : graph_(&graph) {}

  // Adjoins a cell with top p o q and bottom r, plus its inverse; returns
  // the index of the forward cell. Sides must be geodesic.
  std::size_t adjoin_cell(const DistanceMatrix& dm, const GeodesicTriangle& t);

  const TwoCell& cell(std::size_t i) const { return cells_.at(i); }
  std::size_t inverse(std::size_t i) const { return i ^ 1; }
  std::size_t cell_count() const { return cells_.size(); }
  const Digraph& graph() const { return *graph_; }

 private:
  const Digraph* graph_;
  std::vector<TwoCell> cells_;
};

struct AtomicStep {
  Path prefix;
  std::size_t cell;
  Path suffix;
};

// A 2-path: chained atomic steps, each replacing a cell's top by its
// bottom inside a common ambient path.
struct TwoPath {
  std::vector<AtomicStep> steps;
};

struct TwoPathCheck {
  bool ok = false;
  int failed_step = -1;  // index of the first invalid step, -1 if ok
  Path top, bottom;      // defined when ok and steps nonempty
};

TwoPathCheck verify_two_path(const DirectedTwoComplex& k, const TwoPath& tp);

// One replay step of a certificate: apply triangle `tri`'s cell (top
// p o q -> bottom r), or its inverse when `inverted`, between the given
// context paths.
struct CertStep {
  Path prefix;
  std::size_t tri;
  bool inverted;
  Path suffix;
};

// Witnesses that `top` and `bottom` are homotopic in the complex obtained
// by adjoining a cell per listed triangle: replaying the steps transforms
// top into bottom.
struct TessellationCertificate {
  Path top, bottom;
  std::vector<GeodesicTriangle> triangles;
  std::vector<CertStep> steps;

  int max_size() const;  // largest triangle size, 0 if none
};

// Rebuilds the complex and replays the steps; true iff the chain is valid
// and its ends equal the certificate's top and bottom.
bool verify_certificate(const Digraph& g, const DistanceMatrix& dm,
                        const TessellationCertificate& cert);

// Fills the gap between parallel paths p and q with at most |p|+|q|+1
// geodesic triangles of size at most 2(|p|+|q|): non-geodesic prefixes are
// repeatedly replaced by fresh geodesics until both paths are geodesic,
// then a single base triangle joins them. Paths must be loop-edge-free.
TessellationCertificate tessellate_parallel_paths(const Digraph& g,
                                                  const DistanceMatrix& dm,
                                                  const Path& p, const Path& q);

struct SubdivisionResult {
  std::vector<GeodesicTriangle> triangles;  // at most 5
  std::vector<CertStep> steps;              // replay top(T) -> bottom(T)
  std::string case_used;                    // "a", "b(i)", "b(ii)", "trivial"
};

// Splits T at the midpoint of its longer short side into at most five
// geodesic triangles of size <= floor(3/4 Sigma(T)) + 2 delta + 1, assuming
// the graph is strongly delta-hyperbolic. Throws InputError naming T when
// no case applies (a refutation of delta-hyperbolicity).
SubdivisionResult subdivide_triangle(const Digraph& g, const DistanceMatrix& dm,
                                     const GeodesicTriangle& t,
                                     long long delta);

struct BoundedTessellation {
  TessellationCertificate certificate;
  std::vector<long long> size_sequence;  // t_{i+1} = (3/4) t_i + (2 delta + 1)
  double count_bound;                    // 5 (Sigma/(C-8delta-4))^(log_{4/3} 5)
};

// Iterates subdivision until every triangle has size <= C; requires
// C > 8 delta + 4 so the size recursion strictly decreases.
BoundedTessellation tessellate_triangle_to_size(const Digraph& g,
                                                const DistanceMatrix& dm,
                                                const GeodesicTriangle& t,
                                                long long delta, long long C);

// Exponent of the triangle-count bound.
double tessellation_count_exponent();

struct DehnArea {
  ExtDistance area;
  bool hit_cap = false;
};

// Minimal number of single relation applications transforming u into v,
// by bidirectional search in the word graph; INFINITY when the components
// are exhausted without meeting, INFINITY with hit_cap when the state cap
// is exceeded first.
DehnArea dehn_area(const MonoidPresentation& p, const Word& u, const Word& v,
                   long long cap);

struct DehnTable {
  std::vector<ExtDistance> values;  // values[i] = dehn function at i+1
  bool hit_cap = false;
};

// Exact Dehn function values delta(1..n): max area over equivalent word
// pairs with |u|+|v| <= n, enumerated via the rewriting oracle.
DehnTable dehn_function_estimate(const MonoidPresentation& p, int n,
                                 long long cap);

}  // namespace dihyp

#endif  // DIHYP_TESSELLATION_HPP_

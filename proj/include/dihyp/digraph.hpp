// Finite directed graphs viewed as semimetric spaces: exact integer
// distances with an explicit infinity, balls, components, and the basic
// graph constructions the rest of the library builds on.

#ifndef DIHYP_DIGRAPH_HPP_
#define DIHYP_DIGRAPH_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace dihyp {

// Raised on malformed user input (unknown vertices, bad files, bad
// parameters). The CLI maps this to exit code 2.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a word-problem oracle cannot decide within its cap.
// The CLI maps this to exit code 3.
class UnknownAtCap : public std::runtime_error {
 public:
  explicit UnknownAtCap(const std::string& what) : std::runtime_error(what) {}
};

// A nonnegative integer distance extended with a distinguished infinity.
// Infinity compares greater than every integer and addition saturates.
// No multiplication is provided, so the undefined product 0 * infinity
// can never be formed.
class ExtDistance {
 public:
  constexpr ExtDistance() : finite_(true), value_(0) {}

  static constexpr ExtDistance infinity() {
    ExtDistance d;
    d.finite_ = false;
    d.value_ = 0;
    return d;
  }

  static ExtDistance of(long long n) {
    if (n < 0) throw InputError("ExtDistance must be nonnegative");
    ExtDistance d;
    d.finite_ = true;
    d.value_ = n;
    return d;
  }

  bool is_finite() const { return finite_; }

  long long value() const {
    if (!finite_) throw std::logic_error("value() on infinite ExtDistance");
    return value_;
  }

  friend ExtDistance operator+(ExtDistance a, ExtDistance b) {
    if (!a.finite_ || !b.finite_) return infinity();
    return of(a.value_ + b.value_);
  }

  friend bool operator==(ExtDistance a, ExtDistance b) {
    return a.finite_ == b.finite_ && a.value_ == b.value_;
  }
  friend bool operator!=(ExtDistance a, ExtDistance b) { return !(a == b); }
  friend bool operator<(ExtDistance a, ExtDistance b) {
    if (a.finite_ && b.finite_) return a.value_ < b.value_;
    return a.finite_ && !b.finite_;
  }
  friend bool operator<=(ExtDistance a, ExtDistance b) { return !(b < a); }
  friend bool operator>(ExtDistance a, ExtDistance b) { return b < a; }
  friend bool operator>=(ExtDistance a, ExtDistance b) { return !(a < b); }

  std::string str() const {
    return finite_ ? std::to_string(value_) : std::string("inf");
  }

 private:
  bool finite_;
  long long value_;
};

struct Edge {
  int from;
  int to;
  std::optional<std::string> label;
};

// Directed multigraph with opaque string vertex identifiers. Loops and
// parallel edges are allowed; distance computations ignore multiplicity.
// Vertex order is insertion order, which fixes every enumeration in the
// library.
class Digraph {
 public:
  Digraph() = default;

  int add_vertex(const std::string& name);
  void add_edge(const std::string& from, const std::string& to,
                std::optional<std::string> label = std::nullopt);
  void add_edge(int from, int to,
                std::optional<std::string> label = std::nullopt);

  int vertex_count() const { return static_cast<int>(names_.size()); }
  bool has_vertex(const std::string& name) const {
    return index_.count(name) != 0;
  }
  int vertex(const std::string& name) const;
  const std::string& name(int v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<Edge>& edges() const { return edges_; }

  // Distinct out/in neighbours, sorted; parallel edges collapsed.
  const std::vector<int>& out_neighbors(int v) const { return out_.at(v); }
  const std::vector<int>& in_neighbors(int v) const { return in_.at(v); }

  bool has_edge(int from, int to) const;

  Digraph reversed() const;

  // FNV-1a over the structural description; used to tie reports to inputs.
  std::string fingerprint() const;

  std::string to_edge_list() const;
  std::string to_dot() const;
  static Digraph from_edge_list(const std::string& text);

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

// All-pairs directed distances of a Digraph. Entry (u,v) is the minimal
// directed path length, or infinity when v is unreachable from u.
class DistanceMatrix {
 public:
  static DistanceMatrix compute(const Digraph& g, int threads = 1);

  ExtDistance at(int u, int v) const {
    std::int32_t raw = d_[static_cast<std::size_t>(u) * n_ + v];
    return raw < 0 ? ExtDistance::infinity() : ExtDistance::of(raw);
  }

  int size() const { return n_; }
  const std::string& source_fingerprint() const { return fingerprint_; }

  // Largest finite entry; the graph is delta-bounded for this delta.
  ExtDistance max_finite() const;

 private:
  int n_ = 0;
  std::vector<std::int32_t> d_;  // -1 encodes infinity, private to this class
  std::string fingerprint_;
};

inline DistanceMatrix all_pairs_distances(const Digraph& g, int threads = 1) {
  return DistanceMatrix::compute(g, threads);
}

// A directed path as a vertex index sequence; length 0 is a single vertex.
struct Path {
  std::vector<int> v;

  int length() const { return static_cast<int>(v.size()) - 1; }
  int start() const { return v.front(); }
  int end() const { return v.back(); }

  bool valid_in(const Digraph& g) const;
  bool is_geodesic(const DistanceMatrix& dm) const;
  bool parallel_to(const Path& other) const {
    return start() == other.start() && end() == other.end();
  }

  // Composition [x0..xn] o [xn..ym]; requires end() == q.start().
  Path compose(const Path& q) const;
  Path reversed() const;
  // Subpath from position i to position j inclusive (0-based).
  Path sub(int i, int j) const;

  friend bool operator==(const Path& a, const Path& b) { return a.v == b.v; }
};

ExtDistance path_distance(const DistanceMatrix& dm, int u, int v);

std::vector<int> out_ball(const DistanceMatrix& dm,
                          const std::vector<int>& centers, ExtDistance r);
std::vector<int> in_ball(const DistanceMatrix& dm,
                         const std::vector<int>& centers, ExtDistance r);
std::vector<int> strong_ball(const DistanceMatrix& dm,
                             const std::vector<int>& centers, ExtDistance r);

struct SccDecomposition {
  std::vector<int> component_of;          // vertex -> component id
  std::vector<std::vector<int>> classes;  // sorted members per component
};

SccDecomposition strongly_connected_components(const Digraph& g);

// Subgraph induced on a vertex subset, keeping all internal edges.
Digraph induced_subgraph(const Digraph& g, const std::vector<int>& vertices);

// Adds a fresh sink vertex z and an edge v -> z from every vertex of the
// result, including the loop z -> z.
Digraph adjoin_sink(const Digraph& g, const std::string& sink_hint = "z");

// Each undirected edge becomes a pair of oppositely oriented edges.
Digraph bidirect(const std::vector<std::string>& vertices,
                 const std::vector<std::pair<std::string, std::string>>& edges);

struct DegreeBounds {
  long long max_indegree;
  long long max_outdegree;
};

// Maxima over vertices, counting every edge (multiplicity included).
DegreeBounds degree_bounds(const Digraph& g);

}  // namespace dihyp

#endif  // DIHYP_DIGRAPH_HPP_

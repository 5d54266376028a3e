#include "dihyp/digraph.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <deque>
#include <sstream>
#include <thread>

namespace dihyp {

namespace {

// Inserts x into a sorted vector if absent, keeping it sorted.
void insert_sorted_unique(std::vector<int>& xs, int x) {
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  if (it == xs.end() || *it != x) xs.insert(it, x);
}

}  // namespace

int Digraph::add_vertex(const std::string& name) {
  auto it = index_.find(name);
  if (it != index_.end()) return it->second;
  int id = static_cast<int>(names_.size());
  names_.push_back(name);
  index_.emplace(name, id);
  out_.emplace_back();
  in_.emplace_back();
  return id;
}

int Digraph::vertex(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw InputError("unknown vertex: " + name);
  return it->second;
}

void Digraph::add_edge(const std::string& from, const std::string& to,
                       std::optional<std::string> label) {
  add_edge(vertex(from), vertex(to), std::move(label));
}

void Digraph::add_edge(int from, int to, std::optional<std::string> label) {
  if (from < 0 || from >= vertex_count() || to < 0 || to >= vertex_count())
    throw InputError("edge endpoint out of range");
  edges_.push_back(Edge{from, to, std::move(label)});
  insert_sorted_unique(out_[from], to);
  insert_sorted_unique(in_[to], from);
}

bool Digraph::has_edge(int from, int to) const {
  const auto& ns = out_.at(from);
  return std::binary_search(ns.begin(), ns.end(), to);
}

Digraph Digraph::reversed() const {
  Digraph r;
  for (const auto& n : names_) r.add_vertex(n);
  for (const auto& e : edges_) r.add_edge(e.to, e.from, e.label);
  return r;
}

std::string Digraph::fingerprint() const {
  // FNV-1a, 64-bit, over a canonical textual rendering.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const std::string& s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  };
  for (const auto& n : names_) mix(n);
  for (const auto& e : edges_) {
    mix(names_[e.from]);
    mix(names_[e.to]);
    mix(e.label ? *e.label : std::string());
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::string Digraph::to_edge_list() const {
  std::ostringstream os;
  for (const auto& n : names_) os << "# vertex " << n << "\n";
  for (const auto& e : edges_) {
    os << names_[e.from] << ' ' << names_[e.to];
    if (e.label) os << ' ' << *e.label;
    os << '\n';
  }
  return os.str();
}

std::string Digraph::to_dot() const {
  std::ostringstream os;
  os << "digraph G {\n";
  for (const auto& n : names_) os << "  \"" << n << "\";\n";
  for (const auto& e : edges_) {
    os << "  \"" << names_[e.from] << "\" -> \"" << names_[e.to] << "\"";
    if (e.label) os << " [label=\"" << *e.label << "\"]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

Digraph Digraph::from_edge_list(const std::string& text) {
  Digraph g;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    // "# vertex NAME" comments declare isolated vertices on export round-trip.
    if (hash != std::string::npos) {
      std::istringstream cs(line.substr(hash + 1));
      std::string kw, name;
      if (cs >> kw >> name && kw == "vertex") g.add_vertex(name);
      line = line.substr(0, hash);
    }
    std::istringstream ls(line);
    std::string from, to, label, extra;
    if (!(ls >> from)) continue;  // blank line
    if (!(ls >> to))
      throw InputError("edge list line " + std::to_string(lineno) +
                       ": expected 'from to [label]'");
    bool has_label = static_cast<bool>(ls >> label);
    if (ls >> extra)
      throw InputError("edge list line " + std::to_string(lineno) +
                       ": trailing tokens");
    g.add_vertex(from);
    g.add_vertex(to);
    g.add_edge(from, to,
               has_label ? std::optional<std::string>(label) : std::nullopt);
  }
  return g;
}

DistanceMatrix DistanceMatrix::compute(const Digraph& g, int threads) {
  DistanceMatrix dm;
  dm.n_ = g.vertex_count();
  dm.fingerprint_ = g.fingerprint();
  dm.d_.assign(static_cast<std::size_t>(dm.n_) * dm.n_, -1);

  auto bfs_from = [&](int s) {
    std::int32_t* row = dm.d_.data() + static_cast<std::size_t>(s) * dm.n_;
    std::deque<int> queue;
    row[s] = 0;
    queue.push_back(s);
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int v : g.out_neighbors(u)) {
        if (row[v] < 0) {
          row[v] = row[u] + 1;
          queue.push_back(v);
        }
      }
    }
  };

  if (threads <= 1 || dm.n_ < 64) {
    for (int s = 0; s < dm.n_; ++s) bfs_from(s);
  } else {
    // Rows are disjoint, so sources can be processed independently.
    std::vector<std::thread> workers;
    std::atomic<int> next{0};
    int nw = std::min<int>(threads, dm.n_);
    workers.reserve(nw);
    for (int t = 0; t < nw; ++t) {
      workers.emplace_back([&] {
        for (int s; (s = next.fetch_add(1)) < dm.n_;) bfs_from(s);
      });
    }
    for (auto& w : workers) w.join();
  }
  return dm;
}

ExtDistance DistanceMatrix::max_finite() const {
  std::int32_t best = -1;
  for (std::int32_t x : d_) best = std::max(best, x);
  return best < 0 ? ExtDistance::infinity() : ExtDistance::of(best);
}

bool Path::valid_in(const Digraph& g) const {
  if (v.empty()) return false;
  for (int x : v)
    if (x < 0 || x >= g.vertex_count()) return false;
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (!g.has_edge(v[i], v[i + 1])) return false;
  return true;
}

bool Path::is_geodesic(const DistanceMatrix& dm) const {
  if (v.empty()) return false;
  ExtDistance d = dm.at(start(), end());
  return d.is_finite() && d.value() == length();
}

Path Path::compose(const Path& q) const {
  if (v.empty() || q.v.empty() || end() != q.start())
    throw InputError("paths not composable");
  Path r{v};
  r.v.insert(r.v.end(), q.v.begin() + 1, q.v.end());
  return r;
}

Path Path::reversed() const {
  Path r{v};
  std::reverse(r.v.begin(), r.v.end());
  return r;
}

Path Path::sub(int i, int j) const {
  if (i < 0 || j < i || j >= static_cast<int>(v.size()))
    throw InputError("bad subpath range");
  return Path{std::vector<int>(v.begin() + i, v.begin() + j + 1)};
}

ExtDistance path_distance(const DistanceMatrix& dm, int u, int v) {
  if (u < 0 || u >= dm.size() || v < 0 || v >= dm.size())
    throw InputError("vertex out of range");
  return dm.at(u, v);
}

namespace {

template <typename Pred>
std::vector<int> collect_ball(int n, Pred within) {
  std::vector<int> result;
  for (int v = 0; v < n; ++v)
    if (within(v)) result.push_back(v);
  return result;
}

void check_centers(const DistanceMatrix& dm, const std::vector<int>& centers) {
  for (int c : centers)
    if (c < 0 || c >= dm.size()) throw InputError("ball center out of range");
}

}  // namespace

std::vector<int> out_ball(const DistanceMatrix& dm,
                          const std::vector<int>& centers, ExtDistance r) {
  check_centers(dm, centers);
  return collect_ball(dm.size(), [&](int v) {
    for (int c : centers)
      if (dm.at(c, v) <= r) return true;
    return false;
  });
}

std::vector<int> in_ball(const DistanceMatrix& dm,
                         const std::vector<int>& centers, ExtDistance r) {
  check_centers(dm, centers);
  return collect_ball(dm.size(), [&](int v) {
    for (int c : centers)
      if (dm.at(v, c) <= r) return true;
    return false;
  });
}

std::vector<int> strong_ball(const DistanceMatrix& dm,
                             const std::vector<int>& centers, ExtDistance r) {
  std::vector<int> outs = out_ball(dm, centers, r);
  std::vector<int> ins = in_ball(dm, centers, r);
  std::vector<int> both;
  std::set_intersection(outs.begin(), outs.end(), ins.begin(), ins.end(),
                        std::back_inserter(both));
  return both;
}

SccDecomposition strongly_connected_components(const Digraph& g) {
  // Tarjan, iterative to survive deep recursion on long chains.
  int n = g.vertex_count();
  SccDecomposition out;
  out.component_of.assign(n, -1);
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int next_index = 0;

  struct Frame {
    int v;
    std::size_t child;
  };
  for (int root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto& ns = g.out_neighbors(f.v);
      if (f.child < ns.size()) {
        int w = ns[f.child++];
        if (index[w] == -1) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          std::vector<int> cls;
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            cls.push_back(w);
          } while (w != f.v);
          std::sort(cls.begin(), cls.end());
          int id = static_cast<int>(out.classes.size());
          for (int x : cls) out.component_of[x] = id;
          out.classes.push_back(std::move(cls));
        }
        int v = f.v;
        frames.pop_back();
        if (!frames.empty())
          low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }
  return out;
}

Digraph induced_subgraph(const Digraph& g, const std::vector<int>& vertices) {
  Digraph sub;
  std::unordered_map<int, int> keep;
  for (int v : vertices) {
    if (v < 0 || v >= g.vertex_count()) throw InputError("vertex out of range");
    keep.emplace(v, sub.add_vertex(g.name(v)));
  }
  for (const auto& e : g.edges()) {
    auto fi = keep.find(e.from), ti = keep.find(e.to);
    if (fi != keep.end() && ti != keep.end())
      sub.add_edge(fi->second, ti->second, e.label);
  }
  return sub;
}

Digraph adjoin_sink(const Digraph& g, const std::string& sink_hint) {
  Digraph out;
  for (const auto& n : g.names()) out.add_vertex(n);
  std::string sink = sink_hint;
  for (int i = 1; out.has_vertex(sink); ++i)
    sink = sink_hint + "_" + std::to_string(i);
  int z = out.add_vertex(sink);
  for (const auto& e : g.edges()) out.add_edge(e.from, e.to, e.label);
  for (int v = 0; v < out.vertex_count(); ++v) out.add_edge(v, z);
  return out;
}

Digraph bidirect(
    const std::vector<std::string>& vertices,
    const std::vector<std::pair<std::string, std::string>>& edges) {
  Digraph g;
  for (const auto& v : vertices) g.add_vertex(v);
  for (const auto& [u, v] : edges) {
    g.add_vertex(u);
    g.add_vertex(v);
    g.add_edge(u, v);
    g.add_edge(v, u);
  }
  return g;
}

DegreeBounds degree_bounds(const Digraph& g) {
  std::vector<long long> indeg(g.vertex_count(), 0),
      outdeg(g.vertex_count(), 0);
  for (const auto& e : g.edges()) {
    ++outdeg[e.from];
    ++indeg[e.to];
  }
  DegreeBounds b{0, 0};
  for (long long d : indeg) b.max_indegree = std::max(b.max_indegree, d);
  for (long long d : outdeg) b.max_outdegree = std::max(b.max_outdegree, d);
  return b;
}

}  // namespace dihyp

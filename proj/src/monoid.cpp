#include "dihyp/monoid.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace dihyp {

namespace {

// Shortlex: length first, then lexicographic by generator declaration order.
bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

bool occurs_at(const Word& w, const Word& factor, std::size_t pos) {
  if (pos + factor.size() > w.size()) return false;
  return std::equal(factor.begin(), factor.end(), w.begin() + pos);
}

Word splice(const Word& w, std::size_t pos, std::size_t len,
            const Word& replacement) {
  Word out(w.begin(), w.begin() + pos);
  out.insert(out.end(), replacement.begin(), replacement.end());
  out.insert(out.end(), w.begin() + pos + len, w.end());
  return out;
}

}  // namespace

int MonoidPresentation::generator(const std::string& token) const {
  for (std::size_t i = 0; i < generators.size(); ++i)
    if (generators[i] == token) return static_cast<int>(i);
  throw InputError("unknown generator: " + token);
}

bool MonoidPresentation::all_single_char() const {
  for (const auto& g : generators)
    if (g.size() != 1) return false;
  return true;
}

std::string MonoidPresentation::word_str(const Word& w) const {
  if (w.empty()) return "1";
  bool singles = all_single_char();
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i && !singles) out += '.';
    out += generators.at(w[i]);
  }
  return out;
}

Word MonoidPresentation::parse_word(const std::string& text) const {
  Word w;
  std::istringstream is(text);
  std::string token;
  while (is >> token) {
    if (token == "1") continue;  // the empty word
    bool known = false;
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (generators[i] == token) {
        w.push_back(static_cast<int>(i));
        known = true;
        break;
      }
    if (known) continue;
    // Allow compact runs like "axb" when the alphabet is single-character.
    if (!all_single_char())
      throw InputError("unknown generator token: " + token);
    for (char c : token) {
      std::string one(1, c);
      if (one == "1") continue;
      w.push_back(generator(one));
    }
  }
  return w;
}

MonoidPresentation parse_presentation(const std::string& text) {
  MonoidPresentation p;
  std::istringstream is(text);
  std::string line;
  bool have_generators = false;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::string trimmed;
    {
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) trimmed += (trimmed.empty() ? "" : " ") + tok;
    }
    if (trimmed.empty()) continue;
    if (!have_generators) {
      const std::string prefix = "generators:";
      if (trimmed.rfind(prefix, 0) != 0)
        throw InputError("line " + std::to_string(lineno) +
                         ": expected 'generators: g1 g2 ...'");
      std::istringstream gs(trimmed.substr(prefix.size()));
      std::string g;
      while (gs >> g) {
        if (g == "1") throw InputError("'1' is reserved for the empty word");
        for (const auto& existing : p.generators)
          if (existing == g) throw InputError("duplicate generator: " + g);
        p.generators.push_back(g);
      }
      have_generators = true;
      continue;
    }
    auto eq = trimmed.find('=');
    if (eq == std::string::npos || trimmed.find('=', eq + 1) != std::string::npos)
      throw InputError("line " + std::to_string(lineno) +
                       ": expected exactly one '=' in relation");
    Word lhs = p.parse_word(trimmed.substr(0, eq));
    Word rhs = p.parse_word(trimmed.substr(eq + 1));
    p.relations.emplace_back(std::move(lhs), std::move(rhs));
  }
  if (!have_generators) throw InputError("missing 'generators:' line");

  // Collapse duplicates, treating (u,v) and (v,u) as the same relation.
  std::vector<std::pair<Word, Word>> unique_rels;
  for (auto rel : p.relations) {
    if (shortlex_less(rel.first, rel.second)) std::swap(rel.first, rel.second);
    if (std::find(unique_rels.begin(), unique_rels.end(), rel) ==
        unique_rels.end())
      unique_rels.push_back(std::move(rel));
  }
  p.relations = std::move(unique_rels);
  return p;
}

RewritingSystem RewritingSystem::orient_and_check(
    const MonoidPresentation& p) {
  RewritingSystem rs;
  rs.pres_ = p;
  for (const auto& [u, v] : p.relations) {
    if (u == v) continue;  // trivial relation
    RewriteRule rule{u, v};
    if (shortlex_less(rule.lhs, rule.rhs)) std::swap(rule.lhs, rule.rhs);
    if (rule.lhs.empty())
      throw InputError("relation with two empty sides cannot be oriented");
    rs.rules_.push_back(std::move(rule));
  }

  // Critical pairs: overlap (proper suffix of one lhs = proper prefix of
  // another) and containment (one lhs inside another). All must join.
  rs.status_ = ConfluenceStatus::checked;
  auto join = [&rs](const Word& a, const Word& b) {
    return rs.reduce(a) == rs.reduce(b);
  };
  for (std::size_t i = 0; i < rs.rules_.size() && rs.offending_ == std::nullopt;
       ++i) {
    for (std::size_t j = 0; j < rs.rules_.size(); ++j) {
      const Word& li = rs.rules_[i].lhs;
      const Word& lj = rs.rules_[j].lhs;
      // Overlaps: li = x·o, lj = o·y with o nonempty and proper both sides.
      std::size_t max_o = std::min(li.size(), lj.size()) - 1;
      for (std::size_t o = 1; o <= max_o; ++o) {
        if (!std::equal(li.end() - o, li.end(), lj.begin())) continue;
        Word super(li.begin(), li.end());
        super.insert(super.end(), lj.begin() + o, lj.end());
        Word left = splice(super, 0, li.size(), rs.rules_[i].rhs);
        Word right = splice(super, li.size() - o, lj.size(), rs.rules_[j].rhs);
        if (!join(left, right)) {
          rs.status_ = ConfluenceStatus::unknown;
          rs.offending_ = std::make_pair(left, right);
          break;
        }
      }
      if (rs.offending_) break;
      // Containment: lj occurs inside li (distinct rules, or proper factor).
      if (lj.size() <= li.size()) {
        for (std::size_t pos = 0; pos + lj.size() <= li.size(); ++pos) {
          if (i == j && pos == 0 && lj.size() == li.size()) continue;
          if (!occurs_at(li, lj, pos)) continue;
          Word left = rs.rules_[i].rhs;
          Word right = splice(li, pos, lj.size(), rs.rules_[j].rhs);
          if (!join(left, right)) {
            rs.status_ = ConfluenceStatus::unknown;
            rs.offending_ = std::make_pair(left, right);
            break;
          }
        }
      }
      if (rs.offending_) break;
    }
  }
  return rs;
}

Word RewritingSystem::reduce(const Word& w) const {
  Word cur = w;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t pos = 0; pos < cur.size() && !changed; ++pos) {
      for (const auto& rule : rules_) {
        if (occurs_at(cur, rule.lhs, pos)) {
          cur = splice(cur, pos, rule.lhs.size(), rule.rhs);
          changed = true;
          break;
        }
      }
    }
  }
  return cur;
}

Word RewritingSystem::normal_form(const Word& w) const {
  if (status_ != ConfluenceStatus::checked)
    throw InputError("rewriting system is not confluence-checked");
  return reduce(w);
}

RewritingOracle::RewritingOracle(RewritingSystem rs) : rs_(std::move(rs)) {
  if (rs_.status() != ConfluenceStatus::checked)
    throw InputError("rewriting oracle requires a checked system");
}

std::optional<bool> RewritingOracle::equal(const Word& u,
                                           const Word& v) const {
  return rs_.normal_form(u) == rs_.normal_form(v);
}

std::optional<Word> RewritingOracle::rep_key(const Word& w) const {
  return rs_.normal_form(w);
}

std::vector<Word> relation_neighbors(const MonoidPresentation& p,
                                     const Word& w) {
  std::vector<Word> out;
  auto add = [&out](Word x) {
    if (std::find(out.begin(), out.end(), x) == out.end())
      out.push_back(std::move(x));
  };
  for (const auto& [lhs, rhs] : p.relations) {
    for (std::size_t pos = 0; pos + lhs.size() <= w.size(); ++pos)
      if (occurs_at(w, lhs, pos)) add(splice(w, pos, lhs.size(), rhs));
    for (std::size_t pos = 0; pos + rhs.size() <= w.size(); ++pos)
      if (occurs_at(w, rhs, pos)) add(splice(w, pos, rhs.size(), lhs));
  }
  return out;
}

BoundedSearchOracle::BoundedSearchOracle(MonoidPresentation p,
                                         long long state_cap)
    : pres_(std::move(p)), cap_(state_cap) {}

std::optional<bool> BoundedSearchOracle::equal(const Word& u,
                                               const Word& v) const {
  if (u == v) return true;
  // Bidirectional BFS in the word graph; always expand the smaller side.
  std::map<Word, int> side;  // 0 = from u, 1 = from v
  std::vector<Word> frontier[2] = {{u}, {v}};
  side[u] = 0;
  side[v] = 1;
  long long visited = 2;
  while (!frontier[0].empty() || !frontier[1].empty()) {
    int pick;
    if (frontier[0].empty())
      pick = 1;
    else if (frontier[1].empty())
      pick = 0;
    else
      pick = frontier[0].size() <= frontier[1].size() ? 0 : 1;
    std::vector<Word> next;
    for (const Word& w : frontier[pick]) {
      for (Word& nb : relation_neighbors(pres_, w)) {
        auto it = side.find(nb);
        if (it != side.end()) {
          if (it->second != pick) return true;
          continue;
        }
        if (++visited > cap_) return std::nullopt;
        side.emplace(nb, pick);
        next.push_back(std::move(nb));
      }
    }
    frontier[pick] = std::move(next);
  }
  return false;  // both components exhausted without meeting
}

void FiniteTable::validate() const {
  int m = order();
  if (m <= 0) throw InputError("finite table must be nonempty");
  if (static_cast<int>(product.size()) != m)
    throw InputError("finite table is not square");
  for (const auto& row : product) {
    if (static_cast<int>(row.size()) != m)
      throw InputError("finite table is not square");
    for (int x : row)
      if (x < 0 || x >= m) throw InputError("finite table entry out of range");
  }
  if (identity < 0 || identity >= m)
    throw InputError("finite table identity out of range");
  for (int a = 0; a < m; ++a)
    if (product[identity][a] != a || product[a][identity] != a)
      throw InputError("declared identity is not an identity");
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        if (product[product[a][b]][c] != product[a][product[b][c]])
          throw InputError("finite table is not associative");
}

TableOracle::TableOracle(FiniteTable table) : table_(std::move(table)) {
  table_.validate();
  pres_.generators = table_.element_names;
  // Defining relations are implicit in the table; the presentation exists
  // so words over element names can be parsed and rendered.
}

int TableOracle::evaluate(const Word& w) const {
  int acc = table_.identity;
  for (int g : w) {
    if (g < 0 || g >= table_.order())
      throw InputError("word letter outside table");
    acc = table_.product[acc][g];
  }
  return acc;
}

std::optional<bool> TableOracle::equal(const Word& u, const Word& v) const {
  return evaluate(u) == evaluate(v);
}

std::optional<Word> TableOracle::rep_key(const Word& w) const {
  return Word{evaluate(w)};
}

ReesQuotientOracle::ReesQuotientOracle(OraclePtr inner,
                                       std::function<bool(const Word&)> ideal)
    : inner_(std::move(inner)), ideal_(std::move(ideal)) {}

std::optional<bool> ReesQuotientOracle::equal(const Word& u,
                                              const Word& v) const {
  bool iu = ideal_(u), iv = ideal_(v);
  if (iu || iv) return iu && iv;  // the whole ideal collapses to zero
  return inner_->equal(u, v);
}

std::optional<Word> ReesQuotientOracle::rep_key(const Word& w) const {
  if (ideal_(w)) return Word{-1};  // sentinel key for the zero class
  return inner_->rep_key(w);
}

std::optional<bool> words_equal(const WordProblemOracle& oracle, const Word& u,
                                const Word& v) {
  return oracle.equal(u, v);
}

CayleyBall cayley_ball(const WordProblemOracle& oracle, int radius) {
  if (radius < 0) throw InputError("radius must be nonnegative");
  const MonoidPresentation& pres = oracle.presentation();
  CayleyBall ball;
  ball.radius = radius;

  std::map<Word, int> by_key;
  auto lookup = [&](const Word& w) -> std::optional<int> {
    std::optional<Word> key = oracle.rep_key(w);
    if (key) {
      auto it = by_key.find(*key);
      if (it == by_key.end()) return std::nullopt;
      return it->second;
    }
    for (std::size_t i = 0; i < ball.words.size(); ++i) {
      std::optional<bool> eq = oracle.equal(w, ball.words[i]);
      if (!eq)
        throw UnknownAtCap("word problem undecided for pair (" +
                           pres.word_str(w) + ", " +
                           pres.word_str(ball.words[i]) + ")");
      if (*eq) return static_cast<int>(i);
    }
    return std::nullopt;
  };
  auto add_vertex = [&](const Word& w) {
    std::optional<Word> key = oracle.rep_key(w);
    std::string name;
    if (key && key->size() == 1 && (*key)[0] == -1)
      name = "0";  // Rees-quotient zero class
    else
      name = pres.word_str(w);
    int id = ball.graph.add_vertex(name);
    ball.words.push_back(w);
    if (key) by_key.emplace(*key, id);
    return id;
  };

  ball.identity = add_vertex(Word{});
  std::vector<int> frontier{ball.identity};
  for (int level = 0; level < radius; ++level) {
    std::vector<int> next;
    for (int v : frontier) {
      for (std::size_t g = 0; g < pres.generators.size(); ++g) {
        Word w = ball.words[v];
        w.push_back(static_cast<int>(g));
        if (!lookup(w)) next.push_back(add_vertex(w));
      }
    }
    frontier = std::move(next);
  }

  // Edge pass: m --s--> ms whenever both endpoints lie in the ball. This
  // also catches edges from boundary vertices back into the interior.
  int count = static_cast<int>(ball.words.size());
  for (int v = 0; v < count; ++v) {
    for (std::size_t g = 0; g < pres.generators.size(); ++g) {
      Word w = ball.words[v];
      w.push_back(static_cast<int>(g));
      if (std::optional<int> target = lookup(w))
        ball.graph.add_edge(v, *target, pres.generators[g]);
    }
  }
  return ball;
}

MonoidPresentation free_monoid(int rank) {
  if (rank < 0 || rank > 26) throw InputError("free rank must be in 0..26");
  MonoidPresentation p;
  for (int i = 0; i < rank; ++i)
    p.generators.push_back(std::string(1, static_cast<char>('a' + i)));
  return p;
}

MonoidPresentation bicyclic_monoid() {
  MonoidPresentation p;
  p.generators = {"b", "c"};
  p.relations = {{{0, 1}, {}}};  // bc = 1
  return p;
}

MonoidPresentation polycyclic_monoid(int rank) {
  if (rank < 1) throw InputError("polycyclic rank must be >= 1");
  MonoidPresentation p;
  for (int i = 1; i <= rank; ++i)
    p.generators.push_back("p" + std::to_string(i));
  for (int i = 1; i <= rank; ++i)
    p.generators.push_back("q" + std::to_string(i));
  p.generators.push_back("z");
  int z = 2 * rank;
  auto P = [](int i) { return i; };
  auto Q = [rank](int i) { return rank + i; };
  for (int i = 0; i < rank; ++i) {
    p.relations.push_back({{P(i), Q(i)}, {}});  // p_i q_i = 1
    for (int j = 0; j < rank; ++j)
      if (i != j) p.relations.push_back({{P(i), Q(j)}, {z}});  // p_i q_j = z
    p.relations.push_back({{P(i), z}, {z}});
    p.relations.push_back({{Q(i), z}, {z}});
    p.relations.push_back({{z, P(i)}, {z}});
    p.relations.push_back({{z, Q(i)}, {z}});
  }
  p.relations.push_back({{z, z}, {z}});  // z is absorbing on both sides
  return p;
}

MonoidPresentation prefix_coded_monoid(const std::set<int>& index_set) {
  MonoidPresentation p;
  p.generators = {"a", "b", "c", "d"};
  for (int i : index_set) {
    if (i < 0) throw InputError("index set entries must be >= 0");
    Word lhs{0}, rhs{0};  // a b^i c = a b^i d
    lhs.insert(lhs.end(), i, 1);
    rhs.insert(rhs.end(), i, 1);
    lhs.push_back(2);
    rhs.push_back(3);
    p.relations.emplace_back(std::move(lhs), std::move(rhs));
  }
  return p;
}

MonoidPresentation j_not_d_monoid() {
  MonoidPresentation p;
  p.generators = {"x", "y", "a", "b"};
  p.relations = {{{2, 0, 3}, {1}},   // axb = y
                 {{2, 1, 3}, {0}}};  // ayb = x
  return p;
}

OraclePtr make_rewriting_oracle(const MonoidPresentation& p) {
  return std::make_shared<RewritingOracle>(RewritingSystem::orient_and_check(p));
}

std::vector<std::string> builtin_names() {
  return {"free(k)", "bicyclic", "polycyclic(n)", "mi(i,j,...)", "jnotd"};
}

Builtin builtin(const std::string& spec_text) {
  std::string name = spec_text;
  std::string args;
  auto open = spec_text.find('(');
  if (open != std::string::npos) {
    if (spec_text.back() != ')') throw InputError("malformed builtin: " + spec_text);
    name = spec_text.substr(0, open);
    args = spec_text.substr(open + 1, spec_text.size() - open - 2);
  }
  auto parse_ints = [&args, &spec_text] {
    std::vector<int> out;
    std::istringstream is(args);
    std::string piece;
    while (std::getline(is, piece, ',')) {
      try {
        out.push_back(std::stoi(piece));
      } catch (const std::exception&) {
        throw InputError("malformed builtin arguments: " + spec_text);
      }
    }
    return out;
  };

  Builtin b;
  b.name = spec_text;
  if (name == "free") {
    auto xs = parse_ints();
    if (xs.size() != 1) throw InputError("free(k) takes one argument");
    b.description = "free monoid of rank " + std::to_string(xs[0]);
    b.pres = free_monoid(xs[0]);
  } else if (name == "bicyclic") {
    b.description = "bicyclic monoid <b,c | bc=1>";
    b.pres = bicyclic_monoid();
  } else if (name == "polycyclic") {
    auto xs = parse_ints();
    if (xs.size() != 1) throw InputError("polycyclic(n) takes one argument");
    b.description = "polycyclic monoid of rank " + std::to_string(xs[0]);
    b.pres = polycyclic_monoid(xs[0]);
  } else if (name == "mi") {
    auto xs = parse_ints();
    b.description = "<a,b,c,d | a b^i c = a b^i d> over the given index set";
    b.pres = prefix_coded_monoid(std::set<int>(xs.begin(), xs.end()));
  } else if (name == "jnotd") {
    b.description = "<x,y,a,b | axb=y, ayb=x>: x J y but not x D y";
    b.pres = j_not_d_monoid();
  } else {
    throw InputError("unknown builtin: " + spec_text);
  }
  b.oracle = make_rewriting_oracle(b.pres);
  return b;
}

MonoidPresentation adjoin_zero(const MonoidPresentation& p) {
  MonoidPresentation out = p;
  for (const auto& g : out.generators)
    if (g == "0") throw InputError("presentation already has a generator '0'");
  int zero = static_cast<int>(out.generators.size());
  out.generators.push_back("0");
  for (int s = 0; s < zero; ++s) {
    out.relations.push_back({{zero, s}, {zero}});
    out.relations.push_back({{s, zero}, {zero}});
  }
  out.relations.push_back({{zero, zero}, {zero}});
  return out;
}

OraclePtr rees_quotient(OraclePtr inner,
                        std::function<bool(const Word&)> ideal_membership) {
  return std::make_shared<ReesQuotientOracle>(std::move(inner),
                                              std::move(ideal_membership));
}

bool prefix_invariance_check(const WordProblemOracle& oracle, const Word& u,
                             const Word& w) {
  std::optional<bool> eq = oracle.equal(u, w);
  if (!eq || !*eq) return true;  // vacuous for unequal pairs
  if (u.size() != w.size()) return false;
  for (std::size_t k = 1; k <= u.size(); ++k) {
    Word pu(u.begin(), u.begin() + k), pw(w.begin(), w.begin() + k);
    std::optional<bool> pe = oracle.equal(pu, pw);
    if (!pe || !*pe) return false;
  }
  return true;
}

}  // namespace dihyp

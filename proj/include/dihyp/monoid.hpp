// Finitely generated monoid presentations, rewriting-based and search-based
// word-problem oracles, Cayley-ball construction, and the built-in example
// monoids.

#ifndef DIHYP_MONOID_HPP_
#define DIHYP_MONOID_HPP_

#include <functional>
#include <memory>
#include <set>

#include "dihyp/digraph.hpp"

namespace dihyp {

// A word is a sequence of generator indices; empty = identity.
using Word = std::vector<int>;

struct MonoidPresentation {
  std::vector<std::string> generators;
  std::vector<std::pair<Word, Word>> relations;

  int generator(const std::string& token) const;
  bool all_single_char() const;

  // Renders a word; the empty word renders as "1". Single-character
  // alphabets concatenate, otherwise tokens are joined with ".".
  std::string word_str(const Word& w) const;

  // Parses whitespace-separated generator tokens; "1" alone is the empty
  // word. A run like "axb" is split per character when every generator is
  // a single character.
  Word parse_word(const std::string& text) const;
};

MonoidPresentation parse_presentation(const std::string& text);

enum class ConfluenceStatus { checked, unknown };

struct RewriteRule {
  Word lhs, rhs;  // lhs > rhs in shortlex (length, then declaration order)
};

// Relations oriented by shortlex; rule application strictly decreases
// shortlex rank, so leftmost reduction always terminates. Status is
// `checked` when every critical pair joins, making normal forms unique.
class RewritingSystem {
 public:
  static RewritingSystem orient_and_check(const MonoidPresentation& p);

  const MonoidPresentation& presentation() const { return pres_; }
  const std::vector<RewriteRule>& rules() const { return rules_; }
  ConfluenceStatus status() const { return status_; }
  const std::optional<std::pair<Word, Word>>& offending_pair() const {
    return offending_;
  }

  // Unique irreducible descendant; requires status() == checked.
  Word normal_form(const Word& w) const;

  // Irreducible descendant via leftmost reduction, without the confluence
  // guarantee (used internally by the critical-pair check itself).
  Word reduce(const Word& w) const;

 private:
  MonoidPresentation pres_;
  std::vector<RewriteRule> rules_;
  ConfluenceStatus status_ = ConfluenceStatus::unknown;
  std::optional<std::pair<Word, Word>> offending_;
};

// Three-valued word-problem interface. equal() returning nullopt means
// "unknown at cap". rep_key() returns a canonical per-element key when the
// oracle has one (normal forms, table elements); algorithms fall back to
// pairwise equal() queries otherwise.
class WordProblemOracle {
 public:
  virtual ~WordProblemOracle() = default;
  virtual std::optional<bool> equal(const Word& u, const Word& v) const = 0;
  virtual std::optional<Word> rep_key(const Word& w) const = 0;
  virtual const MonoidPresentation& presentation() const = 0;
};

using OraclePtr = std::shared_ptr<const WordProblemOracle>;

class RewritingOracle : public WordProblemOracle {
 public:
  explicit RewritingOracle(RewritingSystem rs);
  std::optional<bool> equal(const Word& u, const Word& v) const override;
  std::optional<Word> rep_key(const Word& w) const override;
  const MonoidPresentation& presentation() const override {
    return rs_.presentation();
  }
  const RewritingSystem& system() const { return rs_; }

 private:
  RewritingSystem rs_;
};

// Capped bidirectional BFS over single relation applications (either
// direction, any position). Exhausting both components certifies
// inequality; exceeding the cap yields unknown.
class BoundedSearchOracle : public WordProblemOracle {
 public:
  BoundedSearchOracle(MonoidPresentation p, long long state_cap);
  std::optional<bool> equal(const Word& u, const Word& v) const override;
  std::optional<Word> rep_key(const Word&) const override {
    return std::nullopt;
  }
  const MonoidPresentation& presentation() const override { return pres_; }

 private:
  MonoidPresentation pres_;
  long long cap_;
};

// A complete multiplication table over elements 0..order-1 with a declared
// identity; must be associative.
struct FiniteTable {
  std::vector<std::string> element_names;
  std::vector<std::vector<int>> product;  // product[a][b]
  int identity = 0;

  int order() const { return static_cast<int>(element_names.size()); }
  void validate() const;  // shape, identity, associativity
};

class TableOracle : public WordProblemOracle {
 public:
  explicit TableOracle(FiniteTable table);
  std::optional<bool> equal(const Word& u, const Word& v) const override;
  std::optional<Word> rep_key(const Word& w) const override;
  const MonoidPresentation& presentation() const override { return pres_; }
  const FiniteTable& table() const { return table_; }
  int evaluate(const Word& w) const;

 private:
  FiniteTable table_;
  MonoidPresentation pres_;  // one generator per element
};

// Rees quotient: words in the ideal are identified to a zero element.
// The predicate must be closed under two-sided multiplication and
// equivalence (caller-asserted).
class ReesQuotientOracle : public WordProblemOracle {
 public:
  ReesQuotientOracle(OraclePtr inner, std::function<bool(const Word&)> ideal);
  std::optional<bool> equal(const Word& u, const Word& v) const override;
  std::optional<Word> rep_key(const Word& w) const override;
  const MonoidPresentation& presentation() const override {
    return inner_->presentation();
  }

 private:
  OraclePtr inner_;
  std::function<bool(const Word&)> ideal_;
};

std::optional<bool> words_equal(const WordProblemOracle& oracle, const Word& u,
                                const Word& v);

// All words one relation application away (either direction, any position),
// deduplicated; the adjacency of the word graph used by area computations
// and by BoundedSearchOracle.
std::vector<Word> relation_neighbors(const MonoidPresentation& p,
                                     const Word& w);

// Right Cayley-graph ball of radius r around the identity. Vertices carry
// deterministic representative words (normal forms, or the first witness
// in length-lex BFS order); the identity vertex is named "1".
struct CayleyBall {
  Digraph graph;
  std::vector<Word> words;  // representative per vertex, index-aligned
  int identity = 0;
  int radius = 0;
};

CayleyBall cayley_ball(const WordProblemOracle& oracle, int radius);

struct Builtin {
  std::string name;
  std::string description;
  MonoidPresentation pres;
  OraclePtr oracle;
};

// Built-ins: free(k), bicyclic, polycyclic(n), mi(i,...), jnotd.
Builtin builtin(const std::string& spec_text);
std::vector<std::string> builtin_names();

MonoidPresentation free_monoid(int rank);
MonoidPresentation bicyclic_monoid();
MonoidPresentation polycyclic_monoid(int rank);
MonoidPresentation prefix_coded_monoid(const std::set<int>& index_set);
// <x,y,a,b | axb=y, ayb=x>: x and y are J-related but not D-related.
MonoidPresentation j_not_d_monoid();

OraclePtr make_rewriting_oracle(const MonoidPresentation& p);

// Adds generator "0" with relations 0s = s0 = 00 = 0.
MonoidPresentation adjoin_zero(const MonoidPresentation& p);

OraclePtr rees_quotient(OraclePtr inner,
                        std::function<bool(const Word&)> ideal_membership);

// For equal word pairs, verifies equal lengths and elementwise-equal
// prefixes u[0..k] == w[0..k]; vacuously true for unequal pairs.
bool prefix_invariance_check(const WordProblemOracle& oracle, const Word& u,
                             const Word& w);

}  // namespace dihyp

#endif  // DIHYP_MONOID_HPP_

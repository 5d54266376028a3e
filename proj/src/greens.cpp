#include "dihyp/greens.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace dihyp {

GreensConstants greens_constants(long long A_size, long long alpha,
                                 long long delta) {
  if (A_size < 1) throw InputError("alphabet must be nonempty");
  long long beta = std::max(alpha, A_size);
  ConstantsReport quasi = quasi_constants(beta, delta);

  GreensConstants c;
  c.A_size = A_size;
  c.alpha = alpha;
  c.delta = delta;
  c.lambda = quasi.lambda;
  c.K = quasi.K;
  if (A_size == 1) {
    c.W = Rational(2 * delta + 1);
  } else {
    using boost::multiprecision::cpp_int;
    cpp_int power = 1;
    for (long long i = 0; i < 2 * delta + 1; ++i) power *= A_size;
    c.W = Rational(power - 1, A_size - 1);
  }
  return c;
}

long long rational_ceil(const Rational& x) {
  using boost::multiprecision::cpp_int;
  cpp_int num = boost::multiprecision::numerator(x);
  cpp_int den = boost::multiprecision::denominator(x);  // always positive
  cpp_int q = num / den;
  if (num % den != 0 && num > 0) ++q;
  return q.convert_to<long long>();
}

FiniteGreens exact_greens_finite(const FiniteTable& table) {
  table.validate();
  int m = table.order();
  auto matrix = [m] {
    return std::vector<std::vector<bool>>(m, std::vector<bool>(m, false));
  };
  FiniteGreens out;
  out.leqR = matrix();
  out.leqL = matrix();
  out.leqJ = matrix();

  for (int b = 0; b < m; ++b) {
    std::vector<bool> in_bS(m, false), in_Sb(m, false), in_SbS(m, false);
    for (int s = 0; s < m; ++s) {
      in_bS[table.product[b][s]] = true;
      in_Sb[table.product[s][b]] = true;
    }
    for (int x = 0; x < m; ++x)
      for (int y = 0; y < m; ++y)
        in_SbS[table.product[table.product[x][b]][y]] = true;
    for (int a = 0; a < m; ++a) {
      out.leqR[a][b] = in_bS[a];
      out.leqL[a][b] = in_Sb[a];
      out.leqJ[a][b] = in_SbS[a];
    }
  }

  out.R = matrix();
  out.L = matrix();
  out.J = matrix();
  out.H = matrix();
  out.D = matrix();
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      out.R[a][b] = out.leqR[a][b] && out.leqR[b][a];
      out.L[a][b] = out.leqL[a][b] && out.leqL[b][a];
      out.J[a][b] = out.leqJ[a][b] && out.leqJ[b][a];
      out.H[a][b] = out.R[a][b] && out.L[a][b];
    }
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        if (out.L[a][c] && out.R[c][b]) {
          out.D[a][b] = true;
          break;
        }
  return out;
}

namespace {

// Element-level deduplication: by canonical key when the oracle has one,
// otherwise by pairwise equality queries (propagating unknowns).
class ElementSet {
 public:
  explicit ElementSet(const WordProblemOracle& oracle) : oracle_(oracle) {}

  // Returns true if the word's element was new, false if seen, nullopt if
  // the oracle could not decide.
  std::optional<bool> insert(const Word& w) {
    if (std::optional<Word> key = oracle_.rep_key(w)) {
      return keys_.emplace(*key, 0).second;
    }
    for (const Word& seen : witnesses_) {
      std::optional<bool> eq = oracle_.equal(w, seen);
      if (!eq) return std::nullopt;
      if (*eq) return false;
    }
    witnesses_.push_back(w);
    return true;
  }

 private:
  const WordProblemOracle& oracle_;
  std::map<Word, char> keys_;
  std::vector<Word> witnesses_;
};

// True iff w and target represent the same element; throws UnknownAtCap on
// an undecided query so callers can convert it to an unknown verdict.
bool same_element(const WordProblemOracle& oracle, const Word& w,
                  const Word& target) {
  std::optional<bool> eq = oracle.equal(w, target);
  if (!eq)
    throw UnknownAtCap("word problem undecided during relation search");
  return *eq;
}

// One-sided pre-order search: BFS over elements w alpha (append) or
// alpha w (prepend), looking for the element of u.
GreensVerdict one_sided_search(const WordProblemOracle& oracle,
                               const std::optional<GreensConstants>& constants,
                               const Word& w, const Word& u, bool append,
                               const GreensSearchOptions& opts,
                               const std::string& relation) {
  GreensVerdict verdict;
  verdict.relation = relation;
  if (opts.bound_override)
    verdict.bound = *opts.bound_override;
  else if (constants)
    verdict.bound = rational_ceil(
        constants->K *
        Rational(static_cast<long long>(w.size() + u.size())));
  else
    verdict.bound = static_cast<long long>(w.size() + u.size()) + 2;

  const auto& gens = oracle.presentation().generators;
  try {
    ElementSet seen(oracle);
    if (!seen.insert(w).has_value()) {
      verdict.kind = VerdictKind::unknown;
      return verdict;
    }
    if (same_element(oracle, w, u)) {
      verdict.kind = VerdictKind::yes;
      verdict.witnesses = {Word{}};
      return verdict;
    }
    struct State {
      Word product;  // the word w alpha (or alpha w)
      Word alpha;
    };
    std::vector<State> frontier{{w, {}}};
    long long states = 1;
    for (long long depth = 1; depth <= verdict.bound; ++depth) {
      std::vector<State> next;
      for (const State& st : frontier) {
        for (std::size_t g = 0; g < gens.size(); ++g) {
          State ext;
          ext.alpha = st.alpha;
          if (append) {
            ext.alpha.push_back(static_cast<int>(g));
            ext.product = st.product;
            ext.product.push_back(static_cast<int>(g));
          } else {
            ext.alpha.insert(ext.alpha.begin(), static_cast<int>(g));
            ext.product = ext.alpha;
            ext.product.insert(ext.product.end(), w.begin(), w.end());
          }
          std::optional<bool> fresh = seen.insert(ext.product);
          if (!fresh) {
            verdict.kind = VerdictKind::unknown;
            return verdict;
          }
          if (!*fresh) continue;
          if (++states > opts.state_budget) {
            verdict.kind = VerdictKind::unknown;
            return verdict;
          }
          if (same_element(oracle, ext.product, u)) {
            verdict.kind = VerdictKind::yes;
            verdict.witnesses = {ext.alpha};
            return verdict;
          }
          next.push_back(std::move(ext));
        }
      }
      if (next.empty()) {
        // The whole principal ideal is enumerated: the negative is
        // unconditional, independent of any hyperbolicity hypothesis.
        verdict.kind = VerdictKind::no;
        verdict.certified = true;
        return verdict;
      }
      frontier = std::move(next);
    }
    verdict.kind = VerdictKind::no;
    verdict.certified = constants.has_value();
  } catch (const UnknownAtCap&) {
    verdict.kind = VerdictKind::unknown;
  }
  return verdict;
}

// Two-sided search: BFS over elements a u b with |a| <= bound on the
// prepend side and |b| <= bound on the append side, restricted to the
// given generator subsets.
GreensVerdict two_sided_search(const WordProblemOracle& oracle,
                               const std::optional<GreensConstants>& constants,
                               const Word& u, const Word& v,
                               const std::vector<int>& left_gens,
                               const std::vector<int>& right_gens,
                               long long bound,
                               const GreensSearchOptions& opts,
                               const std::string& relation) {
  GreensVerdict verdict;
  verdict.relation = relation;
  verdict.bound = bound;

  struct State {
    Word a, b;
  };
  auto full_word = [&u](const State& st) {
    Word w = st.a;
    w.insert(w.end(), u.begin(), u.end());
    w.insert(w.end(), st.b.begin(), st.b.end());
    return w;
  };

  try {
    // Dedup on (element, |a|, |b|): the element determines all future
    // extensions, but the remaining prepend/append allowances do not.
    std::map<std::tuple<Word, long long, long long>, char> seen_keys;
    std::vector<std::pair<State, Word>> seen_words;  // fallback dedup
    auto insert = [&](const State& st, const Word& w) -> std::optional<bool> {
      long long la = static_cast<long long>(st.a.size());
      long long lb = static_cast<long long>(st.b.size());
      if (std::optional<Word> key = oracle.rep_key(w))
        return seen_keys.emplace(std::make_tuple(*key, la, lb), 0).second;
      for (const auto& [other, ow] : seen_words) {
        if (static_cast<long long>(other.a.size()) != la ||
            static_cast<long long>(other.b.size()) != lb)
          continue;
        std::optional<bool> eq = oracle.equal(w, ow);
        if (!eq) return std::nullopt;
        if (*eq) return false;
      }
      seen_words.emplace_back(st, w);
      return true;
    };

    State start;
    Word start_word = full_word(start);
    insert(start, start_word);
    if (same_element(oracle, start_word, v)) {
      verdict.kind = VerdictKind::yes;
      verdict.witnesses = {Word{}, Word{}};
      return verdict;
    }

    std::vector<State> frontier{start};
    long long states = 1;
    bool capped_expansion = false;
    while (!frontier.empty()) {
      std::vector<State> next;
      for (const State& st : frontier) {
        for (int side = 0; side < 2; ++side) {
          const std::vector<int>& gens = side == 0 ? left_gens : right_gens;
          long long len =
              static_cast<long long>(side == 0 ? st.a.size() : st.b.size());
          if (len >= bound) {
            if (!gens.empty()) capped_expansion = true;
            continue;
          }
          for (int g : gens) {
            State ext = st;
            if (side == 0)
              ext.a.insert(ext.a.begin(), g);
            else
              ext.b.push_back(g);
            Word w = full_word(ext);
            std::optional<bool> fresh = insert(ext, w);
            if (!fresh) {
              verdict.kind = VerdictKind::unknown;
              return verdict;
            }
            if (!*fresh) continue;
            if (++states > opts.state_budget) {
              verdict.kind = VerdictKind::unknown;
              return verdict;
            }
            if (same_element(oracle, w, v)) {
              verdict.kind = VerdictKind::yes;
              verdict.witnesses = {ext.a, ext.b};
              return verdict;
            }
            next.push_back(std::move(ext));
          }
        }
      }
      frontier = std::move(next);
    }
    verdict.kind = VerdictKind::no;
    // If no expansion was ever suppressed by the length bound, the full
    // two-sided ideal was enumerated and the negative is unconditional.
    verdict.certified = !capped_expansion || constants.has_value();
  } catch (const UnknownAtCap&) {
    verdict.kind = VerdictKind::unknown;
  }
  return verdict;
}

}  // namespace

GreensVerdict decide_leq_R(const WordProblemOracle& oracle,
                           const std::optional<GreensConstants>& constants,
                           const Word& w, const Word& u,
                           const GreensSearchOptions& opts) {
  return one_sided_search(oracle, constants, w, u, true, opts, "leqR");
}

GreensVerdict decide_leq_L(const WordProblemOracle& oracle,
                           const std::optional<GreensConstants>& constants,
                           const Word& w, const Word& u,
                           const GreensSearchOptions& opts) {
  return one_sided_search(oracle, constants, w, u, false, opts, "leqL");
}

Word geodesic_word(const WordProblemOracle& oracle, const Word& w) {
  if (w.empty()) return w;
  const auto& gens = oracle.presentation().generators;
  ElementSet seen(oracle);
  seen.insert(Word{});
  if (auto eq = oracle.equal(Word{}, w); eq && *eq) return Word{};
  std::vector<Word> frontier{Word{}};
  for (std::size_t depth = 1; depth <= w.size(); ++depth) {
    std::vector<Word> next;
    for (const Word& x : frontier) {
      for (std::size_t g = 0; g < gens.size(); ++g) {
        Word y = x;
        y.push_back(static_cast<int>(g));
        std::optional<bool> fresh = seen.insert(y);
        if (!fresh)
          throw UnknownAtCap("word problem undecided during geodesic search");
        if (!*fresh) continue;
        std::optional<bool> eq = oracle.equal(y, w);
        if (!eq)
          throw UnknownAtCap("word problem undecided during geodesic search");
        if (*eq) return y;
        next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  return w;  // unreachable for a consistent oracle: w itself is a witness
}

GreensVerdict decide_leq_J(const WordProblemOracle& oracle,
                           const std::optional<GreensConstants>& constants,
                           const Word& u, const Word& v,
                           const GreensSearchOptions& opts) {
  Word u_geo = geodesic_word(oracle, u);
  Word v_geo = geodesic_word(oracle, v);
  long long bound;
  if (opts.bound_override)
    bound = *opts.bound_override;
  else if (constants)
    bound = rational_ceil(
        constants->F(static_cast<long long>(u_geo.size()),
                     static_cast<long long>(v_geo.size())));
  else
    bound = static_cast<long long>(u_geo.size() + v_geo.size()) + 2;

  std::vector<int> all_gens;
  for (std::size_t g = 0; g < oracle.presentation().generators.size(); ++g)
    all_gens.push_back(static_cast<int>(g));
  return two_sided_search(oracle, constants, u_geo, v_geo, all_gens, all_gens,
                          bound, opts, "leqJ");
}

std::vector<int> detect_unit_generators(const WordProblemOracle& oracle,
                                        int cap) {
  const auto& gens = oracle.presentation().generators;
  const Word identity;
  std::vector<int> units;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    bool found = false;
    std::vector<Word> level{Word{}};
    for (int depth = 1; depth <= cap && !found; ++depth) {
      std::vector<Word> next;
      for (const Word& h : level) {
        for (std::size_t x = 0; x < gens.size(); ++x) {
          Word h2 = h;
          h2.push_back(static_cast<int>(x));
          Word gh{static_cast<int>(g)};
          gh.insert(gh.end(), h2.begin(), h2.end());
          Word hg = h2;
          hg.push_back(static_cast<int>(g));
          std::optional<bool> right = oracle.equal(gh, identity);
          std::optional<bool> left = oracle.equal(hg, identity);
          if (right && left && *right && *left) {
            found = true;
            break;
          }
          next.push_back(std::move(h2));
        }
        if (found) break;
      }
      level = std::move(next);
    }
    if (found) units.push_back(static_cast<int>(g));
  }
  return units;
}

GreensVerdict decide_D_cancellative(
    const WordProblemOracle& oracle,
    const std::optional<GreensConstants>& constants, const std::vector<int>& B,
    const Word& u, const Word& v, const GreensSearchOptions& opts) {
  Word u_geo = geodesic_word(oracle, u);
  Word v_geo = geodesic_word(oracle, v);
  long long bound;
  if (opts.bound_override)
    bound = *opts.bound_override;
  else if (constants)
    bound = rational_ceil(
        constants->F(static_cast<long long>(u_geo.size()),
                     static_cast<long long>(v_geo.size())));
  else
    bound = static_cast<long long>(u_geo.size() + v_geo.size()) + 2;
  return two_sided_search(oracle, constants, u_geo, v_geo, B, B, bound, opts,
                          "D");
}

namespace {

GreensVerdict conjoin(const std::string& relation, const GreensVerdict& fwd,
                      const GreensVerdict& bwd) {
  GreensVerdict out;
  out.relation = relation;
  out.bound = std::max(fwd.bound, bwd.bound);
  if (fwd.kind == VerdictKind::no || bwd.kind == VerdictKind::no) {
    out.kind = VerdictKind::no;
    out.certified = (fwd.kind == VerdictKind::no && fwd.certified) ||
                    (bwd.kind == VerdictKind::no && bwd.certified);
  } else if (fwd.kind == VerdictKind::unknown ||
             bwd.kind == VerdictKind::unknown) {
    out.kind = VerdictKind::unknown;
  } else {
    out.kind = VerdictKind::yes;
    out.witnesses = fwd.witnesses;
    out.witnesses.insert(out.witnesses.end(), bwd.witnesses.begin(),
                         bwd.witnesses.end());
  }
  return out;
}

}  // namespace

EquivalenceVerdicts decide_equivalences(
    const WordProblemOracle& oracle,
    const std::optional<GreensConstants>& constants, const Word& u,
    const Word& v, const GreensSearchOptions& opts) {
  EquivalenceVerdicts out;
  // a R b iff each lies in the other's principal right ideal, etc.
  out.R = conjoin("R", decide_leq_R(oracle, constants, v, u, opts),
                  decide_leq_R(oracle, constants, u, v, opts));
  out.L = conjoin("L", decide_leq_L(oracle, constants, v, u, opts),
                  decide_leq_L(oracle, constants, u, v, opts));
  out.J = conjoin("J", decide_leq_J(oracle, constants, u, v, opts),
                  decide_leq_J(oracle, constants, v, u, opts));
  out.H = conjoin("H", out.R, out.L);
  return out;
}

}  // namespace dihyp

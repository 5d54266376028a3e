// Green's pre-orders and equivalence relations: exact ideal computation on
// finite monoids, and bounded-search deciders over word-problem oracles
// with the search-radius constants K, C, D, W, E, F.

#ifndef DIHYP_GREENS_HPP_
#define DIHYP_GREENS_HPP_

#include "dihyp/hyperbolicity.hpp"
#include "dihyp/monoid.hpp"

namespace dihyp {

// All constants are exact rationals; callers take a single integer ceiling
// at the final search bound. K is evaluated at beta = max(alpha, |A|),
// which dominates every K used in the component formulas.
struct GreensConstants {
  long long A_size = 0;
  long long alpha = 0;
  long long delta = 0;
  Rational lambda;
  Rational K;
  Rational W;

  Rational C(long long s) const { return Rational(delta + s + 1); }

  Rational D(long long q, long long s) const {
    return K * (K * (Rational(s + delta) + C(s)) + Rational(delta + q + s));
  }

  Rational E(long long u, long long v) const {
    return D(u, v) + D(u, 2 * delta) + C(v) + W * C(2 * delta);
  }

  Rational F(long long u, long long v) const {
    return (K + 1) * (Rational(u + v) + E(u, v));
  }
};

GreensConstants greens_constants(long long A_size, long long alpha,
                                 long long delta);

// Smallest integer >= x.
long long rational_ceil(const Rational& x);

enum class VerdictKind { yes, no, unknown };

struct GreensVerdict {
  std::string relation;
  VerdictKind kind = VerdictKind::unknown;
  // For negative verdicts: true when the answer is exhaustive (the search
  // space saturated, or the caller supplied constants whose theorems make
  // the bounded search complete). False negatives mean "no within bound".
  bool certified = false;
  std::vector<Word> witnesses;  // alpha, or {a, b}
  long long bound = 0;
};

struct GreensSearchOptions {
  std::optional<long long> bound_override;
  long long state_budget = 200000;
};

// Exact relations on a finite monoid by ideal containment:
// a <=_R b iff a in bS, a <=_L b iff a in Sb, a <=_J b iff a in SbS;
// H = R and L; D via some c with a L c R b.
struct FiniteGreens {
  std::vector<std::vector<bool>> leqR, leqL, leqJ;
  std::vector<std::vector<bool>> R, L, J, H, D;
};

FiniteGreens exact_greens_finite(const FiniteTable& table);

// Decides u <=_R w (u in wS) by BFS over elements w alpha with
// |alpha| <= bound. Saturation of the right ideal certifies a negative.
GreensVerdict decide_leq_R(const WordProblemOracle& oracle,
                           const std::optional<GreensConstants>& constants,
                           const Word& w, const Word& u,
                           const GreensSearchOptions& opts = {});

// Decides u <=_L w (u in Sw) by BFS over elements alpha w.
GreensVerdict decide_leq_L(const WordProblemOracle& oracle,
                           const std::optional<GreensConstants>& constants,
                           const Word& w, const Word& u,
                           const GreensSearchOptions& opts = {});

// Decides v in SuS: searches pairs (a, b) with |a|, |b| <= bound for
// a u b == v, after geodesic shortening of u and v. A yes means
// v <=_J u.
GreensVerdict decide_leq_J(const WordProblemOracle& oracle,
                           const std::optional<GreensConstants>& constants,
                           const Word& u, const Word& v,
                           const GreensSearchOptions& opts = {});

// Generators g with a two-sided inverse word of length <= cap; a lower
// approximation of the unit group's generator set.
std::vector<int> detect_unit_generators(const WordProblemOracle& oracle,
                                        int cap);

// Same search as decide_leq_J but with a and b restricted to words over
// the unit subalphabet B; for cancellative monoids a yes means u D v.
GreensVerdict decide_D_cancellative(
    const WordProblemOracle& oracle,
    const std::optional<GreensConstants>& constants, const std::vector<int>& B,
    const Word& u, const Word& v, const GreensSearchOptions& opts = {});

struct EquivalenceVerdicts {
  GreensVerdict R, L, J, H;
};

// Conjunctions of the two directed pre-order verdicts, with three-valued
// logic propagated conservatively.
EquivalenceVerdicts decide_equivalences(
    const WordProblemOracle& oracle,
    const std::optional<GreensConstants>& constants, const Word& u,
    const Word& v, const GreensSearchOptions& opts = {});

// Length-lex least word representing the same element as w (exact geodesic
// search over the oracle, complete because the element is reached at depth
// <= |w|).
Word geodesic_word(const WordProblemOracle& oracle, const Word& w);

}  // namespace dihyp

#endif  // DIHYP_GREENS_HPP_

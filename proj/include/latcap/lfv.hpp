#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "latcap/interval.hpp"
#include "latcap/lattice.hpp"
#include "latcap/rootsign.hpp"

namespace latcap {

// Compact-set algebra the locally-finite-valuation machinery is generic
// over: ground-set bitmasks (finite models) and interval unions.
template <class S>
struct SetOps;

template <>
struct SetOps<long> {
  static long unite(long a, long b) { return a | b; }
  static long intersect(long a, long b) { return a & b; }
  static bool subset(long a, long b) { return (a & ~b) == 0; }
  static bool empty(long a) { return a == 0; }
  static std::string name(long a);
  static bool less(long a, long b) { return a < b; }
};

template <>
struct SetOps<IntervalUnion> {
  static IntervalUnion unite(const IntervalUnion& a, const IntervalUnion& b) { return iu_union(a, b); }
  static IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b) {
    return iu_intersect(a, b);
  }
  static bool subset(const IntervalUnion& a, const IntervalUnion& b) { return iu_subset(a, b); }
  static bool empty(const IntervalUnion& a) { return a.empty(); }
  static std::string name(const IntervalUnion& a) { return a.to_string(); }
  static bool less(const IntervalUnion& a, const IntervalUnion& b) { return a < b; }
};

// Intersection-closed finite cover of a window. Members are kept sorted and
// distinct; the window is the union of the members.
template <class S>
struct Covering {
  S window{};
  std::vector<S> members;
};

struct CoverViolation {
  enum class Kind { missing_intersection, union_mismatch } kind;
  std::string detail;
};

// ok -> nullopt; otherwise the violating pair or the union mismatch.
template <class S>
std::optional<CoverViolation> validate_cover(const Covering<S>& c);

template <class S>
Covering<S> make_cover(S window, std::vector<S> members);  // validates, sorts, dedupes

// Members of G with the common intersection removed (the antichain pool G').
template <class S>
std::vector<S> cover_pool(const Covering<S>& c);

template <class S>
struct OpeningResult {
  S set{};
  bool is_opening = false;
};

// O_B: union of the members containing no element of B (empty union -> the
// empty set); an opening when no element of B is inside O_B. B must be an
// antichain under inclusion drawn from the pool.
template <class S>
OpeningResult<S> opening_of(const Covering<S>& c, const std::vector<S>& B);

// Exact evaluator of an avoidance functional on the sets the cover
// generates.
template <class S>
using Evaluator = std::function<RadicalSum(const S&)>;

// Left-hand side of the locally-finite-valuation inequality:
//   phi(W) + sum of successive differences of phi at the openings,
// summed over antichains B of the pool with 1 <= |B| <= n whose O_B is an
// opening; differences taken in the reverse-inclusion order (meet = union).
template <class S>
RadicalSum lfv_lhs(const Evaluator<S>& phi, const Covering<S>& c, int n);

// Same value through the generated-sublattice route: close the cover under
// union/intersection, order by reverse inclusion, and sum the boundary-
// antichain differences of the classes with |B| <= n. Agrees with lfv_lhs
// term for term.
template <class S>
RadicalSum lfv_lhs_lattice_form(const Evaluator<S>& phi, const Covering<S>& c, int n);

enum class LfvVerdict { pass, fail, inconclusive };

const char* lfv_verdict_name(LfvVerdict v);

struct LfvCoverResult {
  std::size_t cover_index = 0;  // into the cover list the certificate ran on
  std::string cover;            // printable member list
  double lhs = 0;               // at the smallest passing n (or at n_max when failing)
  int n_used = 0;               // smallest n meeting the bound; 0 when none
  bool pass = false;
};

struct LfvCertificate {
  Rational delta;
  int n_used = 0;  // max over covers of the smallest passing n
  LfvVerdict verdict = LfvVerdict::inconclusive;
  bool family_exhaustive = false;
  std::vector<LfvCoverResult> per_cover;
  std::optional<LfvCoverResult> counterexample;
};

// Deterministic cover families. Finite models with |W| <= 4 enumerate every
// intersection-closed cover within the member budget (exhaustive); larger
// grounds fall back to closures of small generator sets. Interval windows
// use a ladder of half-overlapping segment covers closed under intersection.
std::vector<Covering<long>> finite_cover_family(long window, int member_budget,
                                                bool* exhaustive = nullptr);
std::vector<Covering<IntervalUnion>> interval_cover_family(const IntervalUnion& window,
                                                           int member_budget);

template <class S>
LfvCertificate lfv_certificate(const Evaluator<S>& phi, const std::vector<Covering<S>>& covers,
                               const Rational& delta, int n_max, bool family_exhaustive);

// Builtin exact evaluators.
//
// Avoidance of a compound-Poisson grain model with rational per-grain
// avoidance factors: phi(Q) = product of factor(g) over grains meeting Q.
// Exactly the zero-probability function with Levy exponent
// sum of -log(factor) over meeting grains.
Evaluator<long> compound_avoidance_evaluator(std::vector<std::pair<long, Rational>> grain_factors);

// Avoidance of a deterministic grain F: 1 when Q misses F, else 0.
Evaluator<long> deterministic_grain_evaluator(long grain);
Evaluator<IntervalUnion> deterministic_grain_evaluator(IntervalUnion grain);

// Poisson-type avoidance on the line: phi(Q) = base^(nu(Q)/unit), carried
// symbolically so the inequality is decided exactly.
Evaluator<IntervalUnion> scaled_exponential_evaluator(MeasureModel nu, Rational base, Rational unit);

// Monte Carlo diagnostic: with an estimated evaluator (value, standard
// error), reports each term of the inequality with a propagated standard
// error. Never a verdict; the exact path is the certificate.
struct LfvDiagnosticTerm {
  std::string label;
  double value = 0;
  double std_error = 0;
};

template <class S>
std::vector<LfvDiagnosticTerm> lfv_mc_diagnostic(
    const std::function<std::pair<double, double>(const S&)>& phi_hat, const Covering<S>& c, int n);

}  // namespace latcap

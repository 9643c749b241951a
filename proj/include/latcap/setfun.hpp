#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "latcap/lattice.hpp"
#include "latcap/measure.hpp"
#include "latcap/rational.hpp"

namespace latcap {

enum class Direction { increasing, decreasing };

// Set function on a finite lattice with exact rational values. Monotone in
// the declared direction and nonnegative; increasing functions are
// normalized so that value(top) == 1 (a zero top value is rejected),
// decreasing functions must vanish at top.
class SetFunction {
 public:
  static SetFunction make(LatticePtr lat, Direction dir, std::vector<Rational> values);

  const FiniteLattice& lattice() const { return *lat_; }
  const LatticePtr& lattice_ptr() const { return lat_; }
  Direction direction() const { return dir_; }
  const Rational& value(Elem x) const { return values_[x]; }
  const std::vector<Rational>& values() const { return values_; }

 private:
  SetFunction(LatticePtr lat, Direction dir, std::vector<Rational> values)
      : lat_(std::move(lat)), dir_(dir), values_(std::move(values)) {}

  LatticePtr lat_;
  Direction dir_;
  std::vector<Rational> values_;
};

// Successive meet-difference at x indexed by A (order- and repetition-free);
// equals sum over B subseteq A of (-1)^|B| f(meet(B) ^ x).
Rational meet_difference(const SetFunction& f, std::span<const Elem> A, Elem x);

// Successive join-difference, the dual.
Rational join_difference(const SetFunction& f, std::span<const Elem> A, Elem x);

enum class FnClass {
  completely_monotone,         // increasing, meet-differences >= 0
  completely_alternating,      // decreasing, meet-differences <= 0
  completely_vee_monotone,     // decreasing, join-differences >= 0
  completely_vee_alternating,  // increasing, join-differences <= 0
};

const char* fn_class_name(FnClass c);

struct ClassQuery {
  enum class Kind {
    fn_class,
    k_valuation,
    valuation,
    exponential_valuation,
  } kind;
  FnClass cls{};
  int k = 0;
  std::string name() const;
};

struct ClassWitness {
  std::vector<Elem> index_set;  // the A (or pair {x,y}) at fault
  Elem at = -1;                 // the x the difference was taken at
  Rational value;               // re-evaluating reproduces this exactly
};

struct ClassReport {
  ClassQuery query;
  bool holds = false;
  std::optional<ClassWitness> witness;  // first violation in lex (A, x) order
  // exponential_valuation queries only:
  std::optional<bool> strictly_positive;
  std::optional<Elem> positivity_witness;
};

// Exhaustively evaluates the defining inequality of `cls`. Antichain index
// sets suffice (successive differences absorb comparable indices); the
// full-subset mode exists for cross-validation.
ClassReport classify(const SetFunction& f, FnClass cls, bool antichains_only = true);

// Weights r with f(x) = sum of r(z) over z <= x, for all x; unique on a
// finite lattice, signed in general.
DiscreteMeasure mobius_inverse(const SetFunction& f);

// The same inversion for an arbitrary value vector on L (no monotonicity or
// normalization assumed).
std::vector<Rational> mobius_weights(const FiniteLattice& L, std::span<const Rational> values);

// Order-(k+1) antichain differences at the meet of pairwise joins vanish.
// Requires f completely monotone (increasing) or completely alternating
// (decreasing); verified unless the caller vouches with
// prerequisites_checked (prerequisite_class_failed otherwise).
ClassReport is_k_valuation(const SetFunction& f, int k, bool prerequisites_checked = false);

// Modular identity f(x) + f(y) == f(x^y) + f(xvy); no prior classification
// needed, and it certifies both difference classes for f's direction.
ClassReport is_valuation(const SetFunction& f);

// Multiplicative identity f(x)f(y) == f(x^y)f(xvy) for increasing f; the
// report also states strict positivity (both are needed for a Poisson zero
// probability function).
ClassReport is_exponential_valuation(const SetFunction& f);

}  // namespace latcap

#pragma once

#include <map>
#include <span>
#include <vector>

#include "latcap/measure.hpp"
#include "latcap/setfun.hpp"

namespace latcap {

// The four representation identities between a classified set function and a
// nonnegative measure on the matching carrier. In the principal-filter
// dictionary below, carrier id z stands for the filter of elements above z.
//
//   monotone          increasing, completely monotone:
//                       f(x) = sum w(z) over z <= x           (all filters)
//   alternating       decreasing, completely alternating:
//                       f(x) = sum w(z) over z not<= x        (z != bottom)
//   containment       decreasing, completely vee-monotone:
//                       f(x) = sum w(z) over z >= x           (z != top)
//   vee_alternating   increasing, completely vee-alternating:
//                       f(x) = sum w(z) over x not<= z
//                       (z ranges over elements except top, plus a fresh
//                        adjoined bottom that can carry the degenerate mass)
enum class RepresentMode { monotone, alternating, containment, vee_alternating };

const char* represent_mode_name(RepresentMode m);
RepresentMode represent_mode_from(const std::string& s);

// Inverts the mode identity exactly (Mobius inversion in the order the mode
// dictates). classification_failed carries the witness when f is not in the
// mode's class; non_unique_solution signals an internal inversion bug (the
// result is re-verified against the identity before returning).
DiscreteMeasure choquet_represent(const SetFunction& f, RepresentMode mode);

// Forward evaluation of the mode identity at x.
Rational evaluate_mode(const FiniteLattice& L, RepresentMode mode, const DiscreteMeasure& m, Elem x);

// All principal filters, indexed by their generator.
std::vector<std::vector<Elem>> enumerate_filters(const FiniteLattice& L);

// For each x in the sublattice F: the filters <z>* with x inside and no
// boundary element of x inside. Requires the restriction of L to F
// distributive and top(L) in F; the classes then partition L's filters.
struct PartitionClasses {
  std::vector<Elem> sublattice;
  std::map<Elem, std::vector<Elem>> classes;  // x -> generators z of member filters
};

PartitionClasses partition_classes(const FiniteLattice& L);
PartitionClasses partition_classes_in(const FiniteLattice& L, std::span<const Elem> F);

// Least k with every positively weighted closed set of cardinality <= k;
// 0 for the zero measure. Measure must be nonnegative on nonempty closed
// sets (kind closed_sets, ids are ground bitmasks).
int support_order(const DiscreteMeasure& grains);

// Truncation bounds for the measure of the size-<=k part: `lower` sums the
// boundary differences of the classes with |B_F^x| <= k, `upper_defect` sums
// the order-(k+1) antichain differences over the primes of F.
struct VApproxBound {
  Rational lower;
  Rational upper_defect;
};

VApproxBound vapprox_bound(const SetFunction& f, std::span<const Elem> F, int k);

// Ground set R with its compact-set lattice: all subsets under reverse
// inclusion (element id == bitmask, top == empty set). Closed sets are the
// same bitmasks; the filter generated by z corresponds to the closed set
// complement(z).
class FiniteSpaceModel {
 public:
  explicit FiniteSpaceModel(std::vector<std::string> ground_names);

  int ground_size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& ground_names() const { return names_; }
  const LatticePtr& compacts() const { return compacts_; }
  long full_mask() const { return (1L << ground_size()) - 1; }

  long closed_set_of_filter(Elem z) const { return full_mask() ^ z; }
  Elem filter_of_closed_set(long mask) const { return static_cast<Elem>(full_mask() ^ mask); }

  // Translates a filter-carrier measure on the compacts lattice into the
  // closed-set dictionary.
  DiscreteMeasure to_closed_sets(const DiscreteMeasure& filters) const;

  std::string set_name(long mask) const;
  long mask_of_names(const std::vector<std::string>& members) const;

 private:
  std::vector<std::string> names_;
  LatticePtr compacts_;
};

}  // namespace latcap

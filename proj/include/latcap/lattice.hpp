#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "latcap/error.hpp"

namespace latcap {

using Elem = int;

// Finite poset that is a lattice: explicit order matrix plus total meet/join
// tables. Elements are opaque ids 0..size()-1; all semantics live in the
// tables, so the same engine serves abstract lattices, powersets under
// reverse inclusion and interval-union lattices. Immutable after
// construction; safe to share across threads.
class FiniteLattice {
 public:
  // Builds from a relation given as (i <= j) pairs. The reflexive-transitive
  // closure is applied; cycles (antisymmetry failures) raise
  // not_a_partial_order, a missing maximum raises no_top, and a pair without
  // a unique glb/lub raises not_a_lattice naming the witness pair.
  static FiniteLattice build(std::vector<std::string> names,
                             const std::vector<std::pair<Elem, Elem>>& leq_pairs,
                             std::size_t max_elements = kDefaultMaxElements);

  // Powerset of {0,..,ground_size-1} ordered by reverse inclusion:
  // element id == bitmask, top == empty set (mask 0), meet == union,
  // join == intersection. Ground element k is printed with `ground_names[k]`.
  static FiniteLattice powerset_reverse_inclusion(int ground_size,
                                                  const std::vector<std::string>& ground_names = {});

  // Sublattice of `host` induced by `elems` (must be closed under host meet
  // and join); element k of the result is host element elems[k].
  static FiniteLattice restrict_to(const FiniteLattice& host, std::span<const Elem> elems);

  int size() const { return n_; }
  const std::string& name(Elem x) const { return names_[x]; }
  Elem index_of(const std::string& name) const;  // bad_input if unknown

  bool leq(Elem x, Elem y) const { return leq_[static_cast<std::size_t>(x) * n_ + y] != 0; }
  Elem meet(Elem x, Elem y) const { return meet_[static_cast<std::size_t>(x) * n_ + y]; }
  Elem join(Elem x, Elem y) const { return join_[static_cast<std::size_t>(x) * n_ + y]; }
  Elem top() const { return top_; }
  Elem bottom() const { return bottom_; }

  Elem meet_all(std::span<const Elem> xs) const;  // empty span -> top
  Elem join_all(std::span<const Elem> xs) const;  // empty span -> bottom

  // Elements covered by x (maximal elements strictly below x).
  std::vector<Elem> lower_covers(Elem x) const;
  std::vector<Elem> upper_covers(Elem x) const;

  // Host element ids when this lattice was made by restrict_to; identity map
  // otherwise.
  const std::vector<Elem>& origin_ids() const { return origin_; }

  static constexpr std::size_t kDefaultMaxElements = 1u << 16;

 private:
  FiniteLattice() = default;

  int n_ = 0;
  std::vector<std::string> names_;
  std::vector<std::uint8_t> leq_;  // n*n, row-major: leq_[x*n+y] == (x <= y)
  std::vector<Elem> meet_;         // n*n
  std::vector<Elem> join_;         // n*n
  Elem top_ = -1;
  Elem bottom_ = -1;
  std::vector<Elem> origin_;
};

using LatticePtr = std::shared_ptr<const FiniteLattice>;

// Classification of a lattice: distributivity (with a violating (x, {y,z})
// witness when it fails), meet-irreducibles and primes.
struct StructureReport {
  bool is_distributive = false;
  std::vector<Elem> irreducibles;  // z = x ^ y implies z == x or z == y
  std::vector<Elem> primes;        // {w : w not>= z} is a filter
  // (x, A) with x ^ vA != v(x ^ A); A has two elements.
  std::optional<std::pair<Elem, std::vector<Elem>>> distributivity_witness;
  bool bottom_is_irreducible = false;  // bottom flagged separately; it is in
                                       // `irreducibles` iff this is true
};

StructureReport structure_report(const FiniteLattice& L);

// Maximal elements of {z : z not>= x}; empty for x == bottom.
std::vector<Elem> boundary_antichain(const FiniteLattice& L, Elem x);

// Same, with candidates restricted to the sublattice `sub` of L (B_F^x of the
// partition machinery). `x` must be in `sub`.
std::vector<Elem> boundary_antichain_in(const FiniteLattice& L, std::span<const Elem> sub, Elem x);

// Smallest sublattice of L containing G: closure of G under joins, then
// meets. Requires L distributive (not_distributive otherwise). Sorted ids.
std::vector<Elem> sublattice_elements(const FiniteLattice& L, std::span<const Elem> generators);

// Same closure, materialized as a standalone lattice whose origin_ids()
// reference L.
FiniteLattice sublattice_generated(const FiniteLattice& L, std::span<const Elem> generators);

// Streams every antichain B with 1 <= |B| <= k_max drawn from `carrier`,
// in lexicographic order of the id sequence. Returning false stops.
void for_each_antichain(const FiniteLattice& L, std::span<const Elem> carrier, int k_max,
                        const std::function<bool(std::span<const Elem>)>& visit);

std::vector<std::vector<Elem>> antichains_of(const FiniteLattice& L, std::span<const Elem> carrier,
                                             int k_max);

}  // namespace latcap

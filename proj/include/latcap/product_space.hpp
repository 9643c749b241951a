#pragma once

#include <map>
#include <string>

#include "latcap/interval.hpp"

namespace latcap {

// Compact subset of a product of a discrete label space with the unit
// segment: finitely many labels, each carrying a nonempty interval union
// (empty slices are dropped; no slices at all is the top element of the
// reverse-inclusion order).
class ProductCompact {
 public:
  ProductCompact() = default;
  explicit ProductCompact(std::map<std::string, IntervalUnion> slices);

  const std::map<std::string, IntervalUnion>& slices() const { return slices_; }
  bool empty() const { return slices_.empty(); }

  bool operator==(const ProductCompact&) const = default;

 private:
  std::map<std::string, IntervalUnion> slices_;
};

// Lattice meet under reverse inclusion: slice-wise set union.
ProductCompact pc_union(const ProductCompact& a, const ProductCompact& b);
// Lattice join: slice-wise intersection, empty slices dropped.
ProductCompact pc_intersect(const ProductCompact& a, const ProductCompact& b);

// Projection to the segment coordinate: the union of all slices.
IntervalUnion pc_projection(const ProductCompact& q);

// Capacity value of the projection: nu(pi1(Q)).
Rational projection_capacity(const ProductCompact& q, const MeasureModel& nu);

// Both sides of the successive-difference identity for the projection
// capacity: lhs is the recursive meet-difference in the reverse-inclusion
// order, rhs the closed form
//   nu(pi1(Q)) - nu(pi1(Q) u intersection of pi1(Qi)).
struct ProjectionNabla {
  Rational lhs;
  Rational rhs;
};

ProjectionNabla projection_nabla_identity(const ProductCompact& q,
                                          const std::vector<ProductCompact>& qs,
                                          const MeasureModel& nu);

}  // namespace latcap

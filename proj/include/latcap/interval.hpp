#pragma once

#include <optional>
#include <vector>

#include "latcap/rational.hpp"

namespace latcap {

// Finite union of closed intervals with rational endpoints, kept normalized:
// sorted by left endpoint, pairwise disjoint with strictly positive gaps
// (touching intervals merge). The empty union is allowed and is the top
// element of the compact-set order (reverse inclusion).
class IntervalUnion {
 public:
  struct Interval {
    Rational lo, hi;  // lo <= hi; [x,x] is a point
    bool operator==(const Interval&) const = default;
  };

  IntervalUnion() = default;
  static IntervalUnion of(const Rational& lo, const Rational& hi);
  static IntervalUnion point(const Rational& x) { return of(x, x); }
  // Normalizes an arbitrary collection.
  static IntervalUnion from_intervals(std::vector<Interval> parts);

  bool empty() const { return parts_.empty(); }
  const std::vector<Interval>& parts() const { return parts_; }
  Rational length() const;
  bool contains_point(const Rational& x) const;
  bool operator==(const IntervalUnion&) const = default;
  bool operator<(const IntervalUnion& o) const;  // lexicographic; for ordered containers

  std::string to_string() const;

 private:
  std::vector<Interval> parts_;
};

// Set union; the lattice meet under reverse inclusion.
IntervalUnion iu_union(const IntervalUnion& a, const IntervalUnion& b);
// Set intersection; the lattice join under reverse inclusion.
IntervalUnion iu_intersect(const IntervalUnion& a, const IntervalUnion& b);
// a \ b, closed components kept closed (used only for partition checks on
// endpoint-disjoint data, where closure effects do not arise).
bool iu_subset(const IntervalUnion& a, const IntervalUnion& b);

// True iff f lies in the topological interior of e, interiors taken in the
// line (the working window is a patch of a larger space, so its edges are
// ordinary boundary points). The way-below relation of the compact-set
// order; empty f is way below everything.
bool iu_way_below(const IntervalUnion& e, const IntervalUnion& f);

// Density pieces (interval, height) plus rational point atoms; evaluation is
// exact. Heights and masses must be nonnegative.
class MeasureModel {
 public:
  struct Piece {
    IntervalUnion::Interval where;
    Rational height;
  };

  MeasureModel() = default;
  MeasureModel(std::vector<Piece> pieces, std::vector<std::pair<Rational, Rational>> atoms);

  const std::vector<Piece>& pieces() const { return pieces_; }
  const std::vector<std::pair<Rational, Rational>>& atoms() const { return atoms_; }

  static MeasureModel lebesgue(const Rational& lo, const Rational& hi);

 private:
  std::vector<Piece> pieces_;
  std::vector<std::pair<Rational, Rational>> atoms_;  // (position, mass), sorted
};

Rational measure_of(const MeasureModel& m, const IntervalUnion& q);

}  // namespace latcap

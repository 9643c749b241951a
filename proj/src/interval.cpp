#include "latcap/interval.hpp"

#include <algorithm>

namespace latcap {

IntervalUnion IntervalUnion::of(const Rational& lo, const Rational& hi) {
  return from_intervals({{lo, hi}});
}

IntervalUnion IntervalUnion::from_intervals(std::vector<Interval> parts) {
  for (const Interval& p : parts)
    if (p.lo > p.hi) fail(errc::bad_input, "interval with lo > hi");
  std::sort(parts.begin(), parts.end(),
            [](const Interval& a, const Interval& b) { return a.lo != b.lo ? a.lo < b.lo : a.hi < b.hi; });
  IntervalUnion u;
  for (const Interval& p : parts) {
    if (!u.parts_.empty() && p.lo <= u.parts_.back().hi) {
      if (p.hi > u.parts_.back().hi) u.parts_.back().hi = p.hi;
    } else {
      u.parts_.push_back(p);
    }
  }
  return u;
}

Rational IntervalUnion::length() const {
  Rational s = 0;
  for (const Interval& p : parts_) s += p.hi - p.lo;
  return s;
}

bool IntervalUnion::contains_point(const Rational& x) const {
  for (const Interval& p : parts_)
    if (p.lo <= x && x <= p.hi) return true;
  return false;
}

bool IntervalUnion::operator<(const IntervalUnion& o) const {
  return std::lexicographical_compare(
      parts_.begin(), parts_.end(), o.parts_.begin(), o.parts_.end(),
      [](const Interval& a, const Interval& b) {
        if (a.lo != b.lo) return a.lo < b.lo;
        return a.hi < b.hi;
      });
}

std::string IntervalUnion::to_string() const {
  if (parts_.empty()) return "{}";
  std::string s;
  for (const Interval& p : parts_) {
    if (!s.empty()) s += " u ";
    s += "[" + format_rational(p.lo) + "," + format_rational(p.hi) + "]";
  }
  return s;
}

IntervalUnion iu_union(const IntervalUnion& a, const IntervalUnion& b) {
  std::vector<IntervalUnion::Interval> parts = a.parts();
  parts.insert(parts.end(), b.parts().begin(), b.parts().end());
  return IntervalUnion::from_intervals(std::move(parts));
}

IntervalUnion iu_intersect(const IntervalUnion& a, const IntervalUnion& b) {
  std::vector<IntervalUnion::Interval> parts;
  for (const auto& p : a.parts())
    for (const auto& q : b.parts()) {
      const Rational lo = std::max(p.lo, q.lo);
      const Rational hi = std::min(p.hi, q.hi);
      if (lo <= hi) parts.push_back({lo, hi});
    }
  return IntervalUnion::from_intervals(std::move(parts));
}

bool iu_subset(const IntervalUnion& a, const IntervalUnion& b) {
  for (const auto& p : a.parts()) {
    bool covered = false;
    for (const auto& q : b.parts())
      if (q.lo <= p.lo && p.hi <= q.hi) {
        covered = true;
        break;
      }
    if (covered) continue;
    // A closed component of a normalized union cannot be split across two
    // disjoint, non-touching components of another.
    return false;
  }
  return true;
}

bool iu_way_below(const IntervalUnion& e, const IntervalUnion& f) {
  // Interiors are taken in the line (the window is a patch of a larger
  // space), so a component touching e's edge is never way below.
  for (const auto& p : f.parts()) {
    bool inside = false;
    for (const auto& q : e.parts())
      if (q.lo < p.lo && p.hi < q.hi) {
        inside = true;
        break;
      }
    if (!inside) return false;
  }
  return true;
}

MeasureModel::MeasureModel(std::vector<Piece> pieces, std::vector<std::pair<Rational, Rational>> atoms)
    : pieces_(std::move(pieces)), atoms_(std::move(atoms)) {
  for (const Piece& p : pieces_) {
    if (p.where.lo > p.where.hi) fail(errc::bad_input, "density piece with lo > hi");
    if (p.height < 0) fail(errc::bad_measure, "negative density height");
  }
  for (const auto& [pos, mass] : atoms_)
    if (mass < 0) fail(errc::bad_measure, "negative atom mass");
  std::sort(atoms_.begin(), atoms_.end());
}

MeasureModel MeasureModel::lebesgue(const Rational& lo, const Rational& hi) {
  return MeasureModel({{{lo, hi}, 1}}, {});
}

Rational measure_of(const MeasureModel& m, const IntervalUnion& q) {
  Rational s = 0;
  for (const auto& piece : m.pieces())
    for (const auto& p : q.parts()) {
      const Rational lo = std::max(piece.where.lo, p.lo);
      const Rational hi = std::min(piece.where.hi, p.hi);
      if (lo < hi) s += piece.height * (hi - lo);
    }
  for (const auto& [pos, mass] : m.atoms())
    if (q.contains_point(pos)) s += mass;
  return s;
}

}  // namespace latcap

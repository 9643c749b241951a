#include "latcap/product_space.hpp"

#include <bit>

namespace latcap {

ProductCompact::ProductCompact(std::map<std::string, IntervalUnion> slices)
    : slices_(std::move(slices)) {
  for (auto it = slices_.begin(); it != slices_.end();)
    it = it->second.empty() ? slices_.erase(it) : std::next(it);
}

ProductCompact pc_union(const ProductCompact& a, const ProductCompact& b) {
  std::map<std::string, IntervalUnion> s = a.slices();
  for (const auto& [label, iu] : b.slices()) {
    auto it = s.find(label);
    if (it == s.end())
      s.emplace(label, iu);
    else
      it->second = iu_union(it->second, iu);
  }
  return ProductCompact(std::move(s));
}

ProductCompact pc_intersect(const ProductCompact& a, const ProductCompact& b) {
  std::map<std::string, IntervalUnion> s;
  for (const auto& [label, iu] : a.slices()) {
    auto it = b.slices().find(label);
    if (it == b.slices().end()) continue;
    IntervalUnion meet = iu_intersect(iu, it->second);
    if (!meet.empty()) s.emplace(label, std::move(meet));
  }
  return ProductCompact(std::move(s));
}

IntervalUnion pc_projection(const ProductCompact& q) {
  IntervalUnion out;
  for (const auto& [label, iu] : q.slices()) out = iu_union(out, iu);
  return out;
}

Rational projection_capacity(const ProductCompact& q, const MeasureModel& nu) {
  return measure_of(nu, pc_projection(q));
}

ProjectionNabla projection_nabla_identity(const ProductCompact& q,
                                          const std::vector<ProductCompact>& qs,
                                          const MeasureModel& nu) {
  if (qs.empty()) fail(errc::empty_index_set, "difference needs at least one index set");
  if (qs.size() > 20) fail(errc::size_exceeded, "too many index sets");

  // Recursive successive difference; meet in reverse inclusion is pc_union.
  std::vector<const ProductCompact*> a;
  for (const auto& p : qs) a.push_back(&p);
  auto rec = [&](auto&& self, const ProductCompact& x, std::size_t upto) -> Rational {
    if (upto == 0) return projection_capacity(x, nu);
    return self(self, x, upto - 1) - self(self, pc_union(x, *a[upto - 1]), upto - 1);
  };
  ProjectionNabla out;
  out.lhs = rec(rec, q, a.size());

  IntervalUnion common = pc_projection(*a[0]);
  for (std::size_t i = 1; i < a.size(); ++i) common = iu_intersect(common, pc_projection(*a[i]));
  const IntervalUnion base = pc_projection(q);
  out.rhs = measure_of(nu, base) - measure_of(nu, iu_union(base, common));
  return out;
}

}  // namespace latcap

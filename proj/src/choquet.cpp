#include "latcap/choquet.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace latcap {

const char* represent_mode_name(RepresentMode m) {
  switch (m) {
    case RepresentMode::monotone: return "monotone";
    case RepresentMode::alternating: return "alternating";
    case RepresentMode::containment: return "containment";
    case RepresentMode::vee_alternating: return "vee_alternating";
  }
  return "?";
}

RepresentMode represent_mode_from(const std::string& s) {
  for (RepresentMode m : {RepresentMode::monotone, RepresentMode::alternating,
                          RepresentMode::containment, RepresentMode::vee_alternating})
    if (s == represent_mode_name(m)) return m;
  fail(errc::bad_input, "unknown representation mode '" + s + "'");
}

namespace {

FnClass required_class(RepresentMode mode) {
  switch (mode) {
    case RepresentMode::monotone: return FnClass::completely_monotone;
    case RepresentMode::alternating: return FnClass::completely_alternating;
    case RepresentMode::containment: return FnClass::completely_vee_monotone;
    case RepresentMode::vee_alternating: return FnClass::completely_vee_alternating;
  }
  fail(errc::bad_input, "bad mode");
}

// Weights r with  sum of r(z) over z >= x  ==  values[x], plus a virtual
// adjoined bottom (index n) when with_adjoined_bottom, whose row sums the
// whole carrier. Mobius inversion in the dual order.
std::vector<Rational> dual_mobius(const FiniteLattice& L, std::span<const Rational> values,
                                  const Rational& adjoined_value, bool with_adjoined_bottom) {
  const int n = L.size();
  const int total = n + (with_adjoined_bottom ? 1 : 0);
  std::vector<int> above(total, 0);
  for (Elem x = 0; x < n; ++x)
    for (Elem z = 0; z < n; ++z)
      if (L.leq(x, z)) ++above[x];
  if (with_adjoined_bottom) above[n] = total;
  std::vector<Elem> order(total);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Elem a, Elem b) {
    return above[a] != above[b] ? above[a] < above[b] : a < b;
  });
  std::vector<Rational> r(total);
  for (Elem x : order) {
    Rational s = (x == n) ? adjoined_value : values[x];
    if (x == n) {
      for (Elem z = 0; z < n; ++z) s -= r[z];
    } else {
      for (Elem z = 0; z < n; ++z)
        if (z != x && L.leq(x, z)) s -= r[z];
    }
    r[x] = s;
  }
  return r;
}

}  // namespace

DiscreteMeasure choquet_represent(const SetFunction& f, RepresentMode mode) {
  const FnClass cls = required_class(mode);
  const ClassReport cr = classify(f, cls);
  if (!cr.holds) {
    std::string msg = std::string(fn_class_name(cls)) + " fails";
    if (cr.witness) {
      msg += " at A={";
      for (std::size_t i = 0; i < cr.witness->index_set.size(); ++i)
        msg += (i ? "," : "") + f.lattice().name(cr.witness->index_set[i]);
      msg += "}, x=" + f.lattice().name(cr.witness->at) +
             ", value=" + format_rational(cr.witness->value);
    }
    fail(errc::classification_failed, msg);
  }

  const FiniteLattice& L = f.lattice();
  DiscreteMeasure m;
  m.allow_signed = false;

  switch (mode) {
    case RepresentMode::monotone: {
      // w(z) on every filter; the bottom filter carries the degenerate mass.
      m.kind = CarrierKind::filters;
      const auto r = mobius_weights(L, f.values());
      for (Elem z = 0; z < L.size(); ++z) m.set(z, r[z]);
      break;
    }
    case RepresentMode::alternating: {
      // Invert through g = f(bottom) - f, whose Mobius weights vanish at the
      // bottom, leaving the nonempty-closed-set carrier.
      m.kind = CarrierKind::filters;
      std::vector<Rational> g(L.size());
      for (Elem x = 0; x < L.size(); ++x) g[x] = f.value(L.bottom()) - f.value(x);
      const auto r = mobius_weights(L, g);
      for (Elem z = 0; z < L.size(); ++z)
        if (z != L.bottom()) m.set(z, r[z]);
      break;
    }
    case RepresentMode::containment: {
      m.kind = CarrierKind::elements;
      const auto r = dual_mobius(L, f.values(), 0, false);
      for (Elem z = 0; z < L.size(); ++z)
        if (z != L.top()) m.set(z, r[z]);
      break;
    }
    case RepresentMode::vee_alternating: {
      // g = 1 - f on the lattice with a fresh bottom adjoined (g there is 1);
      // dual inversion puts the degenerate mass on the adjoined bottom.
      m.kind = CarrierKind::elements;
      std::vector<Rational> g(L.size());
      for (Elem x = 0; x < L.size(); ++x) g[x] = 1 - f.value(x);
      const auto r = dual_mobius(L, g, 1, true);
      for (Elem z = 0; z < L.size(); ++z)
        if (z != L.top()) m.set(z, r[z]);
      m.set(DiscreteMeasure::kAdjoinedBottom, r[L.size()]);
      break;
    }
  }

  for (const auto& [id, w] : m.weights)
    if (w < 0)
      fail(errc::non_unique_solution, "negative weight from a classified function (internal)");
  for (Elem x = 0; x < L.size(); ++x)
    if (evaluate_mode(L, mode, m, x) != f.value(x))
      fail(errc::non_unique_solution, "mode identity not reproduced (internal)");
  return m;
}

Rational evaluate_mode(const FiniteLattice& L, RepresentMode mode, const DiscreteMeasure& m,
                       Elem x) {
  Rational s = 0;
  for (const auto& [id, w] : m.weights) {
    if (id == DiscreteMeasure::kAdjoinedBottom) {
      if (mode != RepresentMode::vee_alternating)
        fail(errc::bad_measure, "adjoined bottom outside vee_alternating carrier");
      s += w;  // x not<= adjoined bottom for every lattice x
      continue;
    }
    const Elem z = static_cast<Elem>(id);
    bool in = false;
    switch (mode) {
      case RepresentMode::monotone: in = L.leq(z, x); break;
      case RepresentMode::alternating: in = z != L.bottom() && !L.leq(z, x); break;
      case RepresentMode::containment: in = z != L.top() && L.leq(x, z); break;
      case RepresentMode::vee_alternating: in = z != L.top() && !L.leq(x, z); break;
    }
    if (in) s += w;
  }
  return s;
}

std::vector<std::vector<Elem>> enumerate_filters(const FiniteLattice& L) {
  std::vector<std::vector<Elem>> out(L.size());
  for (Elem z = 0; z < L.size(); ++z)
    for (Elem x = 0; x < L.size(); ++x)
      if (L.leq(z, x)) out[z].push_back(x);
  return out;
}

PartitionClasses partition_classes(const FiniteLattice& L) {
  std::vector<Elem> all(L.size());
  std::iota(all.begin(), all.end(), 0);
  return partition_classes_in(L, all);
}

PartitionClasses partition_classes_in(const FiniteLattice& L, std::span<const Elem> F) {
  const FiniteLattice FL = FiniteLattice::restrict_to(L, F);
  if (!structure_report(FL).is_distributive)
    fail(errc::not_distributive, "partition classes need a distributive sublattice");
  if (std::find(F.begin(), F.end(), L.top()) == F.end())
    fail(errc::bad_input, "partition classes need top(L) in the sublattice");

  PartitionClasses pc;
  pc.sublattice.assign(F.begin(), F.end());
  for (Elem x : F) pc.classes[x];  // keep empty classes visible

  for (Elem z = 0; z < L.size(); ++z) {
    // The filter of z lands in the class of the least sublattice element
    // above z.
    Elem x = L.top();
    for (Elem y : F)
      if (L.leq(z, y)) x = L.meet(x, y);
    const auto B = boundary_antichain_in(L, F, x);
    if (!L.leq(z, x)) fail(errc::non_unique_solution, "class representative not above z (internal)");
    for (Elem b : B)
      if (L.leq(z, b))
        fail(errc::non_unique_solution, "class boundary meets the filter (internal)");
    pc.classes[x].push_back(z);
  }
  return pc;
}

int support_order(const DiscreteMeasure& grains) {
  if (grains.kind != CarrierKind::closed_sets)
    fail(errc::bad_measure, "support order is defined for closed-set measures");
  int k = 0;
  for (const auto& [id, w] : grains.weights) {
    if (w < 0) fail(errc::bad_measure, "negative grain weight");
    if (w == 0) continue;
    if (id <= 0) fail(errc::bad_measure, "grains must be nonempty closed sets");
    k = std::max(k, std::popcount(static_cast<unsigned long>(id)));
  }
  return k;
}

VApproxBound vapprox_bound(const SetFunction& f, std::span<const Elem> F, int k) {
  const FiniteLattice& L = f.lattice();
  const FiniteLattice FL = FiniteLattice::restrict_to(L, F);
  VApproxBound out;
  out.lower = 0;
  out.upper_defect = 0;

  for (Elem x : F) {
    const auto B = boundary_antichain_in(L, F, x);
    if (static_cast<int>(B.size()) > k) continue;
    out.lower += B.empty() ? f.value(x) : meet_difference(f, B, x);
  }

  // Primes of F, as host ids.
  const StructureReport sr = structure_report(FL);
  std::vector<Elem> primes;
  primes.reserve(sr.primes.size());
  for (Elem p : sr.primes) primes.push_back(FL.origin_ids()[p]);

  for_each_antichain(L, primes, k + 1, [&](std::span<const Elem> B) {
    if (static_cast<int>(B.size()) != k + 1) return true;
    Elem o = L.top();
    for (std::size_t i = 0; i < B.size(); ++i)
      for (std::size_t j = i + 1; j < B.size(); ++j) o = L.meet(o, L.join(B[i], B[j]));
    out.upper_defect += meet_difference(f, B, o);
    return true;
  });
  return out;
}

FiniteSpaceModel::FiniteSpaceModel(std::vector<std::string> ground_names)
    : names_(std::move(ground_names)) {
  // Closed-set bitmask ids elsewhere go up to 24 ground points; the
  // materialized compact-set lattice is quadratic in 2^|R| and stops earlier.
  if (names_.empty() || names_.size() > 12)
    fail(errc::size_exceeded, "ground size must be in [1, 12] for a materialized compact-set lattice");
  compacts_ = std::make_shared<FiniteLattice>(
      FiniteLattice::powerset_reverse_inclusion(static_cast<int>(names_.size()), names_));
}

DiscreteMeasure FiniteSpaceModel::to_closed_sets(const DiscreteMeasure& filters) const {
  if (filters.kind != CarrierKind::filters)
    fail(errc::bad_measure, "expected a filter-carrier measure");
  DiscreteMeasure out;
  out.kind = CarrierKind::closed_sets;
  out.allow_signed = filters.allow_signed;
  for (const auto& [z, w] : filters.weights) out.set(closed_set_of_filter(static_cast<Elem>(z)), w);
  return out;
}

std::string FiniteSpaceModel::set_name(long mask) const {
  std::string s = "{";
  for (int i = 0; i < ground_size(); ++i) {
    if (!(mask & (1L << i))) continue;
    if (s.size() > 1) s += ",";
    s += names_[i];
  }
  return s + "}";
}

long FiniteSpaceModel::mask_of_names(const std::vector<std::string>& members) const {
  long mask = 0;
  for (const std::string& m : members) {
    auto it = std::find(names_.begin(), names_.end(), m);
    if (it == names_.end()) fail(errc::bad_input, "unknown ground element '" + m + "'");
    mask |= 1L << (it - names_.begin());
  }
  return mask;
}

void DiscreteMeasure::validate() const {
  if (allow_signed) return;
  for (const auto& [id, w] : weights)
    if (w < 0) fail(errc::bad_measure, "negative weight at id " + std::to_string(id));
}

const char* carrier_kind_name(CarrierKind k) {
  switch (k) {
    case CarrierKind::elements: return "elements";
    case CarrierKind::filters: return "filters";
    case CarrierKind::closed_sets: return "closed_sets";
  }
  return "?";
}

CarrierKind carrier_kind_from(const std::string& s) {
  for (CarrierKind k : {CarrierKind::elements, CarrierKind::filters, CarrierKind::closed_sets})
    if (s == carrier_kind_name(k)) return k;
  fail(errc::bad_input, "unknown carrier kind '" + s + "'");
}

}  // namespace latcap

#include "latcap/setfun.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace latcap {

SetFunction SetFunction::make(LatticePtr lat, Direction dir, std::vector<Rational> values) {
  if (!lat) fail(errc::bad_input, "null lattice");
  const FiniteLattice& L = *lat;
  if (static_cast<int>(values.size()) != L.size())
    fail(errc::invalid_set_function, "value count does not match lattice size");
  for (const Rational& v : values)
    if (v < 0) fail(errc::invalid_set_function, "negative value");
  for (Elem x = 0; x < L.size(); ++x)
    for (Elem y = 0; y < L.size(); ++y) {
      if (!L.leq(x, y)) continue;
      const bool ok = (dir == Direction::increasing) ? values[x] <= values[y] : values[x] >= values[y];
      if (!ok)
        fail(errc::invalid_set_function,
             "not monotone in declared direction at (" + L.name(x) + ", " + L.name(y) + ")");
    }
  if (dir == Direction::increasing) {
    const Rational top = values[L.top()];
    if (top == 0) fail(errc::invalid_set_function, "increasing function with zero top value");
    if (top != 1)
      for (Rational& v : values) v /= top;
  } else {
    if (values[L.top()] != 0)
      fail(errc::invalid_set_function, "decreasing function must vanish at top");
  }
  return SetFunction(std::move(lat), dir, std::move(values));
}

namespace {

std::vector<Elem> dedupe(std::span<const Elem> A) {
  std::vector<Elem> a(A.begin(), A.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

// sum over B subseteq A of (-1)^|B| f(fold(B) o x), fold given by op.
Rational subset_difference(const SetFunction& f, std::span<const Elem> A, Elem x,
                           Elem (FiniteLattice::*op)(Elem, Elem) const) {
  if (A.empty()) fail(errc::empty_index_set, "difference needs a nonempty index set");
  const FiniteLattice& L = f.lattice();
  std::vector<Elem> a = dedupe(A);
  if (a.size() > 24) fail(errc::size_exceeded, "index set too large");
  const std::size_t m = a.size();
  std::vector<Elem> arg(std::size_t(1) << m);
  arg[0] = x;
  Rational acc = f.value(x);
  for (std::size_t s = 1; s < arg.size(); ++s) {
    const unsigned bit = std::countr_zero(s);
    arg[s] = (L.*op)(arg[s & (s - 1)], a[bit]);
    if (std::popcount(s) % 2 == 1)
      acc -= f.value(arg[s]);
    else
      acc += f.value(arg[s]);
  }
  return acc;
}

}  // namespace

Rational meet_difference(const SetFunction& f, std::span<const Elem> A, Elem x) {
  return subset_difference(f, A, x, &FiniteLattice::meet);
}

Rational join_difference(const SetFunction& f, std::span<const Elem> A, Elem x) {
  return subset_difference(f, A, x, &FiniteLattice::join);
}

const char* fn_class_name(FnClass c) {
  switch (c) {
    case FnClass::completely_monotone: return "completely_monotone";
    case FnClass::completely_alternating: return "completely_alternating";
    case FnClass::completely_vee_monotone: return "completely_vee_monotone";
    case FnClass::completely_vee_alternating: return "completely_vee_alternating";
  }
  return "?";
}

std::string ClassQuery::name() const {
  switch (kind) {
    case Kind::fn_class: return fn_class_name(cls);
    case Kind::k_valuation: return "k_valuation(" + std::to_string(k) + ")";
    case Kind::valuation: return "valuation";
    case Kind::exponential_valuation: return "exponential_valuation";
  }
  return "?";
}

ClassReport classify(const SetFunction& f, FnClass cls, bool antichains_only) {
  const bool inc = f.direction() == Direction::increasing;
  const bool meet_side =
      cls == FnClass::completely_monotone || cls == FnClass::completely_alternating;
  const bool wants_inc =
      cls == FnClass::completely_monotone || cls == FnClass::completely_vee_alternating;
  if (inc != wants_inc)
    fail(errc::unsupported_class_for_direction,
         std::string(fn_class_name(cls)) + " queried on " + (inc ? "an increasing" : "a decreasing") +
             " function");
  const bool nonneg =
      cls == FnClass::completely_monotone || cls == FnClass::completely_vee_monotone;

  const FiniteLattice& L = f.lattice();
  std::vector<Elem> all(L.size());
  std::iota(all.begin(), all.end(), 0);

  ClassReport rep;
  rep.query = {ClassQuery::Kind::fn_class, cls, 0};
  rep.holds = true;

  // The subset folds of A do not depend on x, so they are tabulated once per
  // index set and each difference reduces to table lookups.
  std::vector<Elem> fold;
  auto check = [&](std::span<const Elem> A) {
    const std::size_t terms = std::size_t(1) << A.size();
    fold.resize(terms);
    fold[0] = meet_side ? L.top() : L.bottom();
    for (std::size_t s = 1; s < terms; ++s) {
      const unsigned bit = static_cast<unsigned>(std::countr_zero(s));
      const Elem prev = fold[s & (s - 1)];
      fold[s] = meet_side ? L.meet(prev, A[bit]) : L.join(prev, A[bit]);
    }
    for (Elem x = 0; x < L.size(); ++x) {
      Rational d = f.value(x);
      for (std::size_t s = 1; s < terms; ++s) {
        const Elem arg = meet_side ? L.meet(fold[s], x) : L.join(fold[s], x);
        if (std::popcount(s) % 2 == 1)
          d -= f.value(arg);
        else
          d += f.value(arg);
      }
      if ((nonneg && d < 0) || (!nonneg && d > 0)) {
        rep.holds = false;
        rep.witness = ClassWitness{std::vector<Elem>(A.begin(), A.end()), x, d};
        return false;
      }
    }
    return true;
  };

  if (antichains_only) {
    for_each_antichain(L, all, L.size(), check);
  } else {
    // Every nonempty subset, lexicographic; cross-validation mode.
    std::vector<Elem> subset;
    auto rec = [&](auto&& self, Elem from) -> bool {
      for (Elem e = from; e < L.size(); ++e) {
        subset.push_back(e);
        if (!check(subset)) return false;
        if (!self(self, e + 1)) return false;
        subset.pop_back();
      }
      return true;
    };
    rec(rec, 0);
  }
  return rep;
}

std::vector<Rational> mobius_weights(const FiniteLattice& L, std::span<const Rational> values) {
  const int n = L.size();
  std::vector<Elem> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> below(n, 0);
  for (Elem x = 0; x < n; ++x)
    for (Elem z = 0; z < n; ++z)
      if (L.leq(z, x)) ++below[x];
  std::sort(order.begin(), order.end(), [&](Elem a, Elem b) {
    return below[a] != below[b] ? below[a] < below[b] : a < b;
  });
  std::vector<Rational> r(n);
  for (Elem x : order) {
    Rational s = values[x];
    for (Elem z = 0; z < n; ++z)
      if (z != x && L.leq(z, x)) s -= r[z];
    r[x] = s;
  }
  return r;
}

DiscreteMeasure mobius_inverse(const SetFunction& f) {
  const auto r = mobius_weights(f.lattice(), f.values());
  DiscreteMeasure m;
  m.kind = CarrierKind::elements;
  m.allow_signed = true;
  for (Elem x = 0; x < f.lattice().size(); ++x) m.set(x, r[x]);
  return m;
}

ClassReport is_k_valuation(const SetFunction& f, int k, bool prerequisites_checked) {
  if (k < 1) fail(errc::bad_input, "k must be >= 1");
  const bool inc = f.direction() == Direction::increasing;
  const FnClass prereq = inc ? FnClass::completely_monotone : FnClass::completely_alternating;
  if (!prerequisites_checked && !classify(f, prereq).holds)
    fail(errc::prerequisite_class_failed,
         std::string(fn_class_name(prereq)) + " is required before the k-valuation test");

  const FiniteLattice& L = f.lattice();
  std::vector<Elem> all(L.size());
  std::iota(all.begin(), all.end(), 0);

  ClassReport rep;
  rep.query = {ClassQuery::Kind::k_valuation, FnClass::completely_monotone, k};
  rep.holds = true;
  for_each_antichain(L, all, k + 1, [&](std::span<const Elem> B) {
    if (static_cast<int>(B.size()) != k + 1) return true;
    Elem o = L.top();
    for (std::size_t i = 0; i < B.size(); ++i)
      for (std::size_t j = i + 1; j < B.size(); ++j) o = L.meet(o, L.join(B[i], B[j]));
    const Rational d = meet_difference(f, B, o);
    if (d != 0) {
      rep.holds = false;
      rep.witness = ClassWitness{std::vector<Elem>(B.begin(), B.end()), o, d};
      return false;
    }
    return true;
  });
  return rep;
}

ClassReport is_valuation(const SetFunction& f) {
  const FiniteLattice& L = f.lattice();
  ClassReport rep;
  rep.query = {ClassQuery::Kind::valuation, FnClass::completely_monotone, 1};
  rep.holds = true;
  for (Elem x = 0; x < L.size() && rep.holds; ++x)
    for (Elem y = x + 1; y < L.size(); ++y) {
      const Rational lhs = f.value(x) + f.value(y);
      const Rational rhs = f.value(L.meet(x, y)) + f.value(L.join(x, y));
      if (lhs != rhs) {
        rep.holds = false;
        rep.witness = ClassWitness{{x, y}, L.join(x, y), lhs - rhs};
        break;
      }
    }
  return rep;
}

ClassReport is_exponential_valuation(const SetFunction& f) {
  if (f.direction() != Direction::increasing)
    fail(errc::unsupported_class_for_direction, "exponential valuation is defined for increasing functions");
  const FiniteLattice& L = f.lattice();
  ClassReport rep;
  rep.query = {ClassQuery::Kind::exponential_valuation, FnClass::completely_monotone, 1};
  rep.holds = true;
  for (Elem x = 0; x < L.size() && rep.holds; ++x)
    for (Elem y = x + 1; y < L.size(); ++y) {
      const Rational lhs = f.value(x) * f.value(y);
      const Rational rhs = f.value(L.meet(x, y)) * f.value(L.join(x, y));
      if (lhs != rhs) {
        rep.holds = false;
        rep.witness = ClassWitness{{x, y}, L.join(x, y), lhs - rhs};
        break;
      }
    }
  rep.strictly_positive = true;
  for (Elem x = 0; x < L.size(); ++x)
    if (f.value(x) == 0) {
      rep.strictly_positive = false;
      rep.positivity_witness = x;
      break;
    }
  return rep;
}

}  // namespace latcap

#include "latcap/lattice.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace latcap {

namespace {

std::string pair_msg(const FiniteLattice& L, Elem x, Elem y) {
  return "(" + L.name(x) + ", " + L.name(y) + ")";
}

}  // namespace

FiniteLattice FiniteLattice::build(std::vector<std::string> names,
                                   const std::vector<std::pair<Elem, Elem>>& leq_pairs,
                                   std::size_t max_elements) {
  FiniteLattice L;
  const int n = static_cast<int>(names.size());
  if (static_cast<std::size_t>(n) > max_elements)
    fail(errc::size_exceeded, std::to_string(n) + " elements exceeds cap " + std::to_string(max_elements));
  if (n == 0) fail(errc::bad_input, "empty element list");
  L.n_ = n;
  L.names_ = std::move(names);
  L.leq_.assign(static_cast<std::size_t>(n) * n, 0);
  auto at = [&](Elem x, Elem y) -> std::uint8_t& { return L.leq_[static_cast<std::size_t>(x) * n + y]; };
  for (Elem i = 0; i < n; ++i) at(i, i) = 1;
  for (auto [i, j] : leq_pairs) {
    if (i < 0 || j < 0 || i >= n || j >= n) fail(errc::bad_input, "leq pair index out of range");
    at(i, j) = 1;
  }
  // Reflexive-transitive closure.
  for (Elem k = 0; k < n; ++k)
    for (Elem i = 0; i < n; ++i)
      if (at(i, k))
        for (Elem j = 0; j < n; ++j)
          if (at(k, j)) at(i, j) = 1;
  for (Elem i = 0; i < n; ++i)
    for (Elem j = i + 1; j < n; ++j)
      if (at(i, j) && at(j, i))
        fail(errc::not_a_partial_order, "cycle through " + pair_msg(L, i, j));

  // Top = the maximum element, required before lattice checks so that a
  // top-less poset reports no_top rather than a glb/lub failure.
  L.top_ = -1;
  for (Elem t = 0; t < n; ++t) {
    bool all = true;
    for (Elem x = 0; x < n && all; ++x) all = at(x, t);
    if (all) {
      L.top_ = t;
      break;
    }
  }
  if (L.top_ < 0) fail(errc::no_top, "poset has no maximum element");

  L.meet_.assign(static_cast<std::size_t>(n) * n, -1);
  L.join_.assign(static_cast<std::size_t>(n) * n, -1);
  for (Elem x = 0; x < n; ++x) {
    for (Elem y = 0; y < n; ++y) {
      Elem glb = -1, lub = -1;
      for (Elem z = 0; z < n; ++z) {
        if (at(z, x) && at(z, y) && (glb < 0 || at(glb, z))) glb = z;
        if (at(x, z) && at(y, z) && (lub < 0 || at(z, lub))) lub = z;
      }
      // `glb` is now a maximal lower bound reachable by successive
      // improvement; it is the glb iff it dominates every lower bound.
      for (Elem z = 0; z < n; ++z) {
        if (at(z, x) && at(z, y) && !at(z, glb))
          fail(errc::not_a_lattice, "no meet for " + pair_msg(L, x, y));
        if (at(x, z) && at(y, z) && !at(lub, z))
          fail(errc::not_a_lattice, "no join for " + pair_msg(L, x, y));
      }
      if (glb < 0) fail(errc::not_a_lattice, "no meet for " + pair_msg(L, x, y));
      L.meet_[static_cast<std::size_t>(x) * n + y] = glb;
      L.join_[static_cast<std::size_t>(x) * n + y] = lub;
    }
  }
  L.bottom_ = 0;
  for (Elem x = 1; x < n; ++x) L.bottom_ = L.meet(L.bottom_, x);
  L.origin_.resize(n);
  std::iota(L.origin_.begin(), L.origin_.end(), 0);
  return L;
}

FiniteLattice FiniteLattice::powerset_reverse_inclusion(int ground_size,
                                                        const std::vector<std::string>& ground_names) {
  if (ground_size < 0 || ground_size > 24)
    fail(errc::size_exceeded, "powerset ground size must be in [0, 24]");
  const int n = 1 << ground_size;
  FiniteLattice L;
  L.n_ = n;
  L.names_.reserve(n);
  for (int mask = 0; mask < n; ++mask) {
    std::string s = "{";
    for (int k = 0; k < ground_size; ++k) {
      if (!(mask & (1 << k))) continue;
      if (s.size() > 1) s += ",";
      s += (k < static_cast<int>(ground_names.size())) ? ground_names[k] : std::string(1, static_cast<char>('a' + k));
    }
    s += "}";
    L.names_.push_back(std::move(s));
  }
  L.leq_.assign(static_cast<std::size_t>(n) * n, 0);
  L.meet_.assign(static_cast<std::size_t>(n) * n, -1);
  L.join_.assign(static_cast<std::size_t>(n) * n, -1);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      const std::size_t idx = static_cast<std::size_t>(x) * n + y;
      L.leq_[idx] = ((x | y) == x) ? 1 : 0;  // x >= y as sets
      L.meet_[idx] = x | y;
      L.join_[idx] = x & y;
    }
  }
  L.top_ = 0;
  L.bottom_ = n - 1;
  L.origin_.resize(n);
  std::iota(L.origin_.begin(), L.origin_.end(), 0);
  return L;
}

FiniteLattice FiniteLattice::restrict_to(const FiniteLattice& host, std::span<const Elem> elems) {
  FiniteLattice L;
  const int n = static_cast<int>(elems.size());
  if (n == 0) fail(errc::bad_input, "empty sublattice");
  std::vector<int> pos(host.size(), -1);
  for (int k = 0; k < n; ++k) pos[elems[k]] = k;
  L.n_ = n;
  L.names_.reserve(n);
  for (Elem e : elems) L.names_.push_back(host.name(e));
  L.leq_.assign(static_cast<std::size_t>(n) * n, 0);
  L.meet_.assign(static_cast<std::size_t>(n) * n, -1);
  L.join_.assign(static_cast<std::size_t>(n) * n, -1);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const std::size_t idx = static_cast<std::size_t>(a) * n + b;
      L.leq_[idx] = host.leq(elems[a], elems[b]) ? 1 : 0;
      const Elem m = host.meet(elems[a], elems[b]);
      const Elem j = host.join(elems[a], elems[b]);
      if (pos[m] < 0 || pos[j] < 0)
        fail(errc::bad_input, "element set not closed under host meet/join");
      L.meet_[idx] = pos[m];
      L.join_[idx] = pos[j];
    }
  }
  L.top_ = 0;
  L.bottom_ = 0;
  for (int a = 1; a < n; ++a) {
    L.top_ = L.join(L.top_, a);
    L.bottom_ = L.meet(L.bottom_, a);
  }
  L.origin_.assign(elems.begin(), elems.end());
  return L;
}

Elem FiniteLattice::index_of(const std::string& name) const {
  for (Elem i = 0; i < n_; ++i)
    if (names_[i] == name) return i;
  fail(errc::bad_input, "unknown element '" + name + "'");
}

Elem FiniteLattice::meet_all(std::span<const Elem> xs) const {
  Elem acc = top_;
  for (Elem x : xs) acc = meet(acc, x);
  return acc;
}

Elem FiniteLattice::join_all(std::span<const Elem> xs) const {
  Elem acc = bottom_;
  for (Elem x : xs) acc = join(acc, x);
  return acc;
}

std::vector<Elem> FiniteLattice::lower_covers(Elem x) const {
  std::vector<Elem> out;
  for (Elem z = 0; z < n_; ++z) {
    if (z == x || !leq(z, x)) continue;
    bool covered = true;
    for (Elem w = 0; w < n_ && covered; ++w)
      if (w != z && w != x && leq(z, w) && leq(w, x)) covered = false;
    if (covered) out.push_back(z);
  }
  return out;
}

std::vector<Elem> FiniteLattice::upper_covers(Elem x) const {
  std::vector<Elem> out;
  for (Elem z = 0; z < n_; ++z) {
    if (z == x || !leq(x, z)) continue;
    bool covers = true;
    for (Elem w = 0; w < n_ && covers; ++w)
      if (w != z && w != x && leq(x, w) && leq(w, z)) covers = false;
    if (covers) out.push_back(z);
  }
  return out;
}

StructureReport structure_report(const FiniteLattice& L) {
  StructureReport r;
  const int n = L.size();

  // Binary distributivity is equivalent to the finite-subset form.
  r.is_distributive = true;
  for (Elem x = 0; x < n && r.is_distributive; ++x)
    for (Elem y = 0; y < n && r.is_distributive; ++y)
      for (Elem z = 0; z < n; ++z) {
        const Elem lhs = L.meet(x, L.join(y, z));
        const Elem rhs = L.join(L.meet(x, y), L.meet(x, z));
        if (lhs != rhs) {
          r.is_distributive = false;
          r.distributivity_witness = {x, {y, z}};
          break;
        }
      }

  for (Elem z = 0; z < n; ++z) {
    bool irred = true;
    for (Elem x = 0; x < n && irred; ++x)
      for (Elem y = 0; y < n; ++y)
        if (L.meet(x, y) == z && x != z && y != z) {
          irred = false;
          break;
        }
    if (irred) {
      r.irreducibles.push_back(z);
      if (z == L.bottom() && z != L.top()) r.bottom_is_irreducible = true;
    }

    // Prime: the complement of the principal ideal is a filter (nonempty,
    // upper by construction, meet-closed).
    std::vector<Elem> comp;
    for (Elem w = 0; w < n; ++w)
      if (!L.leq(w, z)) comp.push_back(w);
    bool prime = !comp.empty();
    for (std::size_t a = 0; a < comp.size() && prime; ++a)
      for (std::size_t b = a; b < comp.size(); ++b)
        if (L.leq(L.meet(comp[a], comp[b]), z)) {
          prime = false;
          break;
        }
    if (prime) r.primes.push_back(z);
  }
  return r;
}

std::vector<Elem> boundary_antichain(const FiniteLattice& L, Elem x) {
  std::vector<Elem> all(L.size());
  std::iota(all.begin(), all.end(), 0);
  return boundary_antichain_in(L, all, x);
}

std::vector<Elem> boundary_antichain_in(const FiniteLattice& L, std::span<const Elem> sub, Elem x) {
  std::vector<Elem> out;
  for (Elem z : sub) {
    if (L.leq(x, z)) continue;
    bool maximal = true;
    for (Elem w : sub)
      if (w != z && !L.leq(x, w) && L.leq(z, w)) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back(z);
  }
  return out;
}

std::vector<Elem> sublattice_elements(const FiniteLattice& L, std::span<const Elem> generators) {
  if (generators.empty()) fail(errc::bad_input, "empty generator set");
  if (!structure_report(L).is_distributive)
    fail(errc::not_distributive, "sublattice generation requires a distributive lattice");
  std::vector<std::uint8_t> in(L.size(), 0);
  std::vector<Elem> h;
  for (Elem g : generators)
    if (!in[g]) {
      in[g] = 1;
      h.push_back(g);
    }
  // Join closure, then meet closure; distributivity makes the result a
  // sublattice.
  auto close = [&](auto op) {
    for (std::size_t a = 0; a < h.size(); ++a)
      for (std::size_t b = 0; b <= a; ++b) {
        const Elem c = op(h[a], h[b]);
        if (!in[c]) {
          in[c] = 1;
          h.push_back(c);
        }
      }
  };
  close([&](Elem a, Elem b) { return L.join(a, b); });
  close([&](Elem a, Elem b) { return L.meet(a, b); });
  std::sort(h.begin(), h.end());
  return h;
}

FiniteLattice sublattice_generated(const FiniteLattice& L, std::span<const Elem> generators) {
  return FiniteLattice::restrict_to(L, sublattice_elements(L, generators));
}

void for_each_antichain(const FiniteLattice& L, std::span<const Elem> carrier, int k_max,
                        const std::function<bool(std::span<const Elem>)>& visit) {
  std::vector<Elem> sorted(carrier.begin(), carrier.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<Elem> stack;
  bool stop = false;
  // DFS emits prefixes first, which is lexicographic order of id sequences.
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (stop) return;
    for (std::size_t i = from; i < sorted.size(); ++i) {
      const Elem cand = sorted[i];
      bool ok = true;
      for (Elem b : stack)
        if (L.leq(b, cand) || L.leq(cand, b)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      stack.push_back(cand);
      if (!visit(stack)) {
        stop = true;
        stack.pop_back();
        return;
      }
      if (static_cast<int>(stack.size()) < k_max) self(self, i + 1);
      stack.pop_back();
      if (stop) return;
    }
  };
  if (k_max >= 1) rec(rec, 0);
}

std::vector<std::vector<Elem>> antichains_of(const FiniteLattice& L, std::span<const Elem> carrier,
                                             int k_max) {
  std::vector<std::vector<Elem>> out;
  for_each_antichain(L, carrier, k_max, [&](std::span<const Elem> a) {
    out.emplace_back(a.begin(), a.end());
    return true;
  });
  return out;
}

const char* errc_name(errc c) {
  switch (c) {
    case errc::not_a_partial_order: return "NotAPartialOrder";
    case errc::not_a_lattice: return "NotALattice";
    case errc::no_top: return "NoTop";
    case errc::size_exceeded: return "SizeExceeded";
    case errc::not_distributive: return "NotDistributive";
    case errc::empty_index_set: return "EmptyIndexSet";
    case errc::invalid_set_function: return "InvalidSetFunction";
    case errc::unsupported_class_for_direction: return "UnsupportedClassForDirection";
    case errc::prerequisite_class_failed: return "PrerequisiteClassFailed";
    case errc::classification_failed: return "ClassificationFailed";
    case errc::non_unique_solution: return "NonUniqueSolution";
    case errc::not_an_antichain: return "NotAnAntichain";
    case errc::evaluator_not_exact: return "EvaluatorNotExact";
    case errc::bad_measure: return "BadMeasure";
    case errc::bad_input: return "BadInput";
    case errc::config_error: return "ConfigError";
    case errc::io_error: return "IoError";
  }
  return "UnknownError";
}

}  // namespace latcap

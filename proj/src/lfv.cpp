#include "latcap/lfv.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>

namespace latcap {

std::string SetOps<long>::name(long a) {
  std::string s = "{";
  for (int i = 0; i < 24; ++i) {
    if (!(a & (1L << i))) continue;
    if (s.size() > 1) s += ",";
    s += std::to_string(i);
  }
  return s + "}";
}

namespace {

template <class S>
std::vector<S> sorted_unique(std::vector<S> v) {
  std::sort(v.begin(), v.end(), SetOps<S>::less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

template <class S>
std::vector<S> close_under_intersection(std::vector<S> v) {
  v = sorted_unique(std::move(v));
  std::vector<S> work = v;
  for (std::size_t a = 0; a < work.size(); ++a)
    for (std::size_t b = 0; b < a; ++b) {
      S c = SetOps<S>::intersect(work[a], work[b]);
      if (std::find(work.begin(), work.end(), c) == work.end()) work.push_back(c);
    }
  return sorted_unique(std::move(work));
}

template <class S>
S union_all(const std::vector<S>& v) {
  S u{};
  for (const S& x : v) u = SetOps<S>::unite(u, x);
  return u;
}

template <class S>
S intersect_all(const std::vector<S>& v) {
  S u = v.front();
  for (const S& x : v) u = SetOps<S>::intersect(u, x);
  return u;
}

template <class S>
void for_each_pool_antichain(const std::vector<S>& pool, int k_max,
                             const std::function<bool(const std::vector<S>&)>& visit) {
  std::vector<S> stack;
  bool stop = false;
  auto rec = [&](auto&& self, std::size_t from) -> void {
    if (stop) return;
    for (std::size_t i = from; i < pool.size(); ++i) {
      bool ok = true;
      for (const S& b : stack)
        if (SetOps<S>::subset(b, pool[i]) || SetOps<S>::subset(pool[i], b)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      stack.push_back(pool[i]);
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

// Successive difference of phi at x over the index sets B, reverse-inclusion
// order (meet = set union).
template <class S>
RadicalSum set_difference_term(const Evaluator<S>& phi, const std::vector<S>& B, const S& x) {
  RadicalSum acc;
  const std::size_t m = B.size();
  for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
    S arg = x;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (std::size_t(1) << i)) arg = SetOps<S>::unite(arg, B[i]);
    RadicalSum term = phi(arg);
    if (std::popcount(mask) % 2) term.scale(-1);
    acc += term;
  }
  return acc;
}

}  // namespace

template <class S>
std::optional<CoverViolation> validate_cover(const Covering<S>& c) {
  if (c.members.empty())
    return CoverViolation{CoverViolation::Kind::union_mismatch, "no members"};
  for (std::size_t a = 0; a < c.members.size(); ++a)
    for (std::size_t b = 0; b < a; ++b) {
      S inter = SetOps<S>::intersect(c.members[a], c.members[b]);
      if (std::find(c.members.begin(), c.members.end(), inter) == c.members.end())
        return CoverViolation{CoverViolation::Kind::missing_intersection,
                              SetOps<S>::name(c.members[a]) + " ^ " + SetOps<S>::name(c.members[b]) +
                                  " = " + SetOps<S>::name(inter) + " not in the cover"};
    }
  if (!(union_all(c.members) == c.window))
    return CoverViolation{CoverViolation::Kind::union_mismatch,
                          "members union to " + SetOps<S>::name(union_all(c.members)) + " not " +
                              SetOps<S>::name(c.window)};
  return std::nullopt;
}

template <class S>
Covering<S> make_cover(S window, std::vector<S> members) {
  Covering<S> c{std::move(window), sorted_unique(std::move(members))};
  if (auto v = validate_cover(c)) fail(errc::bad_input, "invalid cover: " + v->detail);
  return c;
}

template <class S>
std::vector<S> cover_pool(const Covering<S>& c) {
  const S common = intersect_all(c.members);
  std::vector<S> pool;
  for (const S& m : c.members)
    if (!(m == common)) pool.push_back(m);
  return pool;
}

template <class S>
OpeningResult<S> opening_of(const Covering<S>& c, const std::vector<S>& B) {
  const std::vector<S> pool = cover_pool(c);
  for (const S& b : B)
    if (std::find(pool.begin(), pool.end(), b) == pool.end())
      fail(errc::bad_input, "index set element outside the cover pool");
  for (std::size_t i = 0; i < B.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (SetOps<S>::subset(B[i], B[j]) || SetOps<S>::subset(B[j], B[i]))
        fail(errc::not_an_antichain,
             SetOps<S>::name(B[i]) + " and " + SetOps<S>::name(B[j]) + " are comparable");

  OpeningResult<S> out;
  out.set = S{};
  for (const S& q : c.members) {
    bool keeps = true;
    for (const S& b : B)
      if (SetOps<S>::subset(b, q)) {
        keeps = false;
        break;
      }
    if (keeps) out.set = SetOps<S>::unite(out.set, q);
  }
  out.is_opening = true;
  for (const S& b : B)
    if (SetOps<S>::subset(b, out.set)) {
      out.is_opening = false;
      break;
    }
  return out;
}

template <class S>
RadicalSum lfv_lhs(const Evaluator<S>& phi, const Covering<S>& c, int n) {
  if (n < 0) fail(errc::bad_input, "n must be >= 0");
  RadicalSum acc = phi(c.window);
  const std::vector<S> pool = cover_pool(c);
  for_each_pool_antichain<S>(pool, n, [&](const std::vector<S>& B) {
    const OpeningResult<S> o = opening_of(c, B);
    if (o.is_opening) acc += set_difference_term(phi, B, o.set);
    return true;
  });
  return acc;
}

template <class S>
RadicalSum lfv_lhs_lattice_form(const Evaluator<S>& phi, const Covering<S>& c, int n) {
  const std::vector<S> sets = [&] {
    // Closure of the cover under union and intersection: the generated
    // sublattice of the compact-set order.
    std::vector<S> work = c.members;
    for (;;) {
      const std::size_t before = work.size();
      for (std::size_t a = 0; a < work.size(); ++a)
        for (std::size_t b = 0; b < a; ++b) {
          S u = SetOps<S>::unite(work[a], work[b]);
          if (std::find(work.begin(), work.end(), u) == work.end()) work.push_back(u);
          S i = SetOps<S>::intersect(work[a], work[b]);
          if (std::find(work.begin(), work.end(), i) == work.end()) work.push_back(i);
        }
      if (work.size() == before) break;
    }
    return sorted_unique(std::move(work));
  }();

  std::vector<std::string> names;
  names.reserve(sets.size());
  for (const S& s : sets) names.push_back(SetOps<S>::name(s));
  std::vector<std::pair<Elem, Elem>> pairs;
  for (std::size_t a = 0; a < sets.size(); ++a)
    for (std::size_t b = 0; b < sets.size(); ++b)
      if (SetOps<S>::subset(sets[b], sets[a]))  // reverse inclusion: a <= b iff b subset a
        pairs.emplace_back(static_cast<Elem>(a), static_cast<Elem>(b));
  const FiniteLattice L = FiniteLattice::build(std::move(names), pairs);

  RadicalSum acc;
  for (Elem x = 0; x < L.size(); ++x) {
    const std::vector<Elem> B = boundary_antichain(L, x);
    if (static_cast<int>(B.size()) > n) continue;
    std::vector<S> bs;
    bs.reserve(B.size());
    for (Elem b : B) bs.push_back(sets[b]);
    acc += set_difference_term(phi, bs, sets[x]);
  }
  return acc;
}

const char* lfv_verdict_name(LfvVerdict v) {
  switch (v) {
    case LfvVerdict::pass: return "pass";
    case LfvVerdict::fail: return "fail";
    case LfvVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

std::vector<Covering<long>> finite_cover_family(long window, int member_budget, bool* exhaustive) {
  const int w = std::popcount(static_cast<unsigned long>(window));
  std::vector<long> bits;
  for (int i = 0; i < 24; ++i)
    if (window & (1L << i)) bits.push_back(i);
  std::vector<Covering<long>> out;

  if (w <= 4) {
    // Every subset of the window, empty set included, is a candidate member;
    // scan all families.
    std::vector<long> candidates;
    for (long sub = 0; sub < (1L << w); ++sub) {
      long mask = 0;
      for (int i = 0; i < w; ++i)
        if (sub & (1L << i)) mask |= 1L << bits[i];
      candidates.push_back(mask);
    }
    const std::size_t m = candidates.size();
    for (std::size_t fam = 1; fam < (std::size_t(1) << m); ++fam) {
      if (std::popcount(fam) > member_budget) continue;
      std::vector<long> members;
      for (std::size_t i = 0; i < m; ++i)
        if (fam & (std::size_t(1) << i)) members.push_back(candidates[i]);
      Covering<long> c{window, members};
      if (union_all(c.members) != window) continue;
      if (validate_cover(c)) continue;
      out.push_back(std::move(c));
    }
    if (exhaustive) *exhaustive = true;
    return out;
  }

  // Closures of generator sets of up to three nonempty subsets.
  std::vector<long> candidates;
  for (long sub = 1; sub < (1L << w); ++sub) {
    long mask = 0;
    for (int i = 0; i < w; ++i)
      if (sub & (1L << i)) mask |= 1L << bits[i];
    candidates.push_back(mask);
  }
  std::set<std::vector<long>> seen;
  auto consider = [&](std::vector<long> gens) {
    if (union_all(gens) != window) return;
    std::vector<long> members = close_under_intersection(std::move(gens));
    if (static_cast<int>(members.size()) > member_budget) return;
    if (!seen.insert(members).second) return;
    out.push_back(Covering<long>{window, std::move(members)});
  };
  for (std::size_t a = 0; a < candidates.size(); ++a) {
    consider({candidates[a]});
    for (std::size_t b = 0; b < a; ++b) {
      consider({candidates[a], candidates[b]});
      for (std::size_t c2 = 0; c2 < b; ++c2) consider({candidates[a], candidates[b], candidates[c2]});
    }
  }
  if (exhaustive) *exhaustive = false;
  return out;
}

std::vector<Covering<IntervalUnion>> interval_cover_family(const IntervalUnion& window,
                                                           int member_budget) {
  if (window.parts().size() != 1)
    fail(errc::bad_input, "interval cover families need a single-segment window");
  const Rational lo = window.parts()[0].lo;
  const Rational len = window.parts()[0].hi - lo;
  if (len <= 0) fail(errc::bad_input, "degenerate window");

  std::vector<Covering<IntervalUnion>> out;
  for (int m = 1;; ++m) {
    // m half-overlapping pieces of length 2*len/(m+1), then the
    // intersection closure (shared halves, contact points, the empty set).
    const Rational s = len / (m + 1);
    std::vector<IntervalUnion> pieces;
    for (int i = 0; i < m; ++i)
      pieces.push_back(IntervalUnion::of(lo + i * s, lo + (i + 2) * s));
    std::vector<IntervalUnion> members = close_under_intersection(std::move(pieces));
    if (static_cast<int>(members.size()) > member_budget) break;
    out.push_back(Covering<IntervalUnion>{window, std::move(members)});
    if (m > 64) break;
  }
  if (out.empty()) fail(errc::bad_input, "member budget admits no ladder cover");
  return out;
}

template <class S>
LfvCertificate lfv_certificate(const Evaluator<S>& phi, const std::vector<Covering<S>>& covers,
                               const Rational& delta, int n_max, bool family_exhaustive) {
  if (delta <= 0 || delta >= 1) fail(errc::bad_input, "delta must be in (0,1)");
  if (n_max < 0) fail(errc::bad_input, "n_max must be >= 0");
  const Rational bound = 1 - delta;

  LfvCertificate cert;
  cert.delta = delta;
  cert.family_exhaustive = family_exhaustive;
  bool any_indeterminate = false;

  for (std::size_t ci = 0; ci < covers.size(); ++ci) {
    const Covering<S>& c = covers[ci];
    const std::vector<S> pool = cover_pool(c);
    RadicalSum lhs = phi(c.window);
    LfvCoverResult res;
    res.cover_index = ci;
    {
      std::string label;
      for (const S& mset : c.members) label += (label.empty() ? "" : " | ") + SetOps<S>::name(mset);
      res.cover = label;
    }
    res.pass = false;
    for (int k = 0; k <= n_max && !res.pass; ++k) {
      if (k > 0) {
        for_each_pool_antichain<S>(pool, k, [&](const std::vector<S>& B) {
          if (static_cast<int>(B.size()) != k) return true;
          const OpeningResult<S> o = opening_of(c, B);
          if (o.is_opening) lhs += set_difference_term(phi, B, o.set);
          return true;
        });
      }
      const RadicalSum::Sign cmp = lhs.compare(bound);
      if (cmp == RadicalSum::Sign::indeterminate) {
        any_indeterminate = true;
        break;
      }
      if (cmp != RadicalSum::Sign::negative) {
        res.pass = true;
        res.n_used = k;
      }
    }
    res.lhs = lhs.to_double();
    cert.n_used = std::max(cert.n_used, res.n_used);
    cert.per_cover.push_back(res);
    if (!res.pass && !any_indeterminate && !cert.counterexample) cert.counterexample = res;
  }

  if (cert.counterexample)
    cert.verdict = LfvVerdict::fail;
  else if (any_indeterminate || !family_exhaustive)
    cert.verdict = LfvVerdict::inconclusive;
  else
    cert.verdict = LfvVerdict::pass;
  return cert;
}

Evaluator<long> compound_avoidance_evaluator(std::vector<std::pair<long, Rational>> grain_factors) {
  for (const auto& [mask, f] : grain_factors)
    if (f <= 0 || f > 1) fail(errc::bad_input, "avoidance factors must be in (0,1]");
  return [grains = std::move(grain_factors)](const long& q) {
    Rational v = 1;
    for (const auto& [mask, f] : grains)
      if ((mask & q) != 0) v *= f;
    return RadicalSum(v);
  };
}

Evaluator<long> deterministic_grain_evaluator(long grain) {
  return [grain](const long& q) { return RadicalSum(Rational((q & grain) == 0 ? 1 : 0)); };
}

Evaluator<IntervalUnion> deterministic_grain_evaluator(IntervalUnion grain) {
  return [grain = std::move(grain)](const IntervalUnion& q) {
    return RadicalSum(Rational(iu_intersect(q, grain).empty() ? 1 : 0));
  };
}

Evaluator<IntervalUnion> scaled_exponential_evaluator(MeasureModel nu, Rational base, Rational unit) {
  if (base <= 0 || base >= 1) fail(errc::bad_input, "base must be in (0,1)");
  if (unit <= 0) fail(errc::bad_input, "unit must be positive");
  return [nu = std::move(nu), base = std::move(base), unit = std::move(unit)](const IntervalUnion& q) {
    RadicalSum s;
    s.add_power(1, base, measure_of(nu, q) / unit);
    return s;
  };
}

template <class S>
std::vector<LfvDiagnosticTerm> lfv_mc_diagnostic(
    const std::function<std::pair<double, double>(const S&)>& phi_hat, const Covering<S>& c,
    int n) {
  std::vector<LfvDiagnosticTerm> out;
  auto eval_term = [&](const std::vector<S>& B, const S& x, const std::string& label) {
    double v = 0, var = 0;
    const std::size_t m = B.size();
    for (std::size_t mask = 0; mask < (std::size_t(1) << m); ++mask) {
      S arg = x;
      for (std::size_t i = 0; i < m; ++i)
        if (mask & (std::size_t(1) << i)) arg = SetOps<S>::unite(arg, B[i]);
      const auto [e, se] = phi_hat(arg);
      v += (std::popcount(mask) % 2 ? -1.0 : 1.0) * e;
      var += se * se;
    }
    out.push_back({label, v, std::sqrt(var)});
  };
  eval_term({}, c.window, "phi(W)");
  const std::vector<S> pool = cover_pool(c);
  for_each_pool_antichain<S>(pool, n, [&](const std::vector<S>& B) {
    const OpeningResult<S> o = opening_of(c, B);
    if (o.is_opening) {
      std::string label = "nabla@" + SetOps<S>::name(o.set);
      eval_term(B, o.set, label);
    }
    return true;
  });
  return out;
}

template std::optional<CoverViolation> validate_cover<long>(const Covering<long>&);
template std::optional<CoverViolation> validate_cover<IntervalUnion>(const Covering<IntervalUnion>&);
template Covering<long> make_cover<long>(long, std::vector<long>);
template Covering<IntervalUnion> make_cover<IntervalUnion>(IntervalUnion, std::vector<IntervalUnion>);
template std::vector<long> cover_pool<long>(const Covering<long>&);
template std::vector<IntervalUnion> cover_pool<IntervalUnion>(const Covering<IntervalUnion>&);
template OpeningResult<long> opening_of<long>(const Covering<long>&, const std::vector<long>&);
template OpeningResult<IntervalUnion> opening_of<IntervalUnion>(const Covering<IntervalUnion>&,
                                                                const std::vector<IntervalUnion>&);
template RadicalSum lfv_lhs<long>(const Evaluator<long>&, const Covering<long>&, int);
template RadicalSum lfv_lhs<IntervalUnion>(const Evaluator<IntervalUnion>&,
                                           const Covering<IntervalUnion>&, int);
template RadicalSum lfv_lhs_lattice_form<long>(const Evaluator<long>&, const Covering<long>&, int);
template RadicalSum lfv_lhs_lattice_form<IntervalUnion>(const Evaluator<IntervalUnion>&,
                                                        const Covering<IntervalUnion>&, int);
template LfvCertificate lfv_certificate<long>(const Evaluator<long>&,
                                              const std::vector<Covering<long>>&, const Rational&,
                                              int, bool);
template LfvCertificate lfv_certificate<IntervalUnion>(const Evaluator<IntervalUnion>&,
                                                       const std::vector<Covering<IntervalUnion>>&,
                                                       const Rational&, int, bool);
template std::vector<LfvDiagnosticTerm> lfv_mc_diagnostic<long>(
    const std::function<std::pair<double, double>(const long&)>&, const Covering<long>&, int);
template std::vector<LfvDiagnosticTerm> lfv_mc_diagnostic<IntervalUnion>(
    const std::function<std::pair<double, double>(const IntervalUnion&)>&,
    const Covering<IntervalUnion>&, int);

}  // namespace latcap

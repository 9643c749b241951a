#include "latcap/levy.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace latcap {

LevyReport levy_divisibility(const SetFunction& f, int n_max, unsigned max_bits) {
  if (f.direction() != Direction::increasing)
    fail(errc::unsupported_class_for_direction, "divisibility is defined for increasing functions");
  if (!classify(f, FnClass::completely_monotone).holds)
    fail(errc::prerequisite_class_failed, "complete monotonicity is required before the divisibility test");
  if (n_max < 1) fail(errc::bad_input, "n_max must be >= 1");

  const FiniteLattice& L = f.lattice();
  LevyReport rep;

  // Support must be a filter; it is an upper set by monotonicity, so only
  // meet-closure can fail.
  for (Elem x = 0; x < L.size(); ++x)
    for (Elem y = x + 1; y < L.size(); ++y)
      if (f.value(x) > 0 && f.value(y) > 0 && f.value(L.meet(x, y)) == 0) {
        rep.support_is_filter = false;
        rep.nonfilter_witness = {x, y};
        rep.verdict = LevyReport::Verdict::not_divisible;
        return rep;
      }
  rep.support_is_filter = true;

  std::vector<Elem> all(L.size());
  std::iota(all.begin(), all.end(), 0);

  for (int n = 1; n <= n_max; ++n) {
    bool bad = false;
    bool undecided = false;
    for_each_antichain(L, all, L.size(), [&](std::span<const Elem> A) {
      std::vector<Elem> arg(std::size_t(1) << A.size());
      for (Elem x = 0; x < L.size(); ++x) {
        RadicalSum s;
        arg[0] = x;
        for (std::size_t t = 1; t < arg.size(); ++t) {
          const unsigned bit = static_cast<unsigned>(std::countr_zero(t));
          arg[t] = L.meet(arg[t & (t - 1)], A[bit]);
        }
        for (std::size_t t = 0; t < arg.size(); ++t) {
          const Rational& v = f.value(arg[t]);
          if (v == 0) continue;
          s.add_root(std::popcount(t) % 2 ? Rational(-1) : Rational(1), v,
                     static_cast<unsigned>(n));
        }
        const RadicalSum::Sign sg = s.sign(max_bits);
        if (sg == RadicalSum::Sign::negative || sg == RadicalSum::Sign::indeterminate) {
          bad = sg == RadicalSum::Sign::negative;
          undecided = sg == RadicalSum::Sign::indeterminate;
          rep.root_witness = LevyReport::RootWitness{n, std::vector<Elem>(A.begin(), A.end()), x};
          return false;
        }
      }
      return true;
    });
    rep.n_checked = n;
    if (bad) {
      rep.verdict = LevyReport::Verdict::not_divisible;
      return rep;
    }
    if (undecided) {
      rep.verdict = LevyReport::Verdict::indeterminate;
      return rep;
    }
  }

  rep.verdict = LevyReport::Verdict::divisible;
  rep.exponent.resize(L.size());
  for (Elem x = 0; x < L.size(); ++x)
    rep.exponent[x] = f.value(x) == 0 ? std::numeric_limits<double>::infinity()
                                      : -std::log(f.value(x).get_d());
  return rep;
}

}  // namespace latcap

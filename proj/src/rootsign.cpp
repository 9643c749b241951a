#include "latcap/rootsign.hpp"

#include <mpfr.h>

#include <numeric>
#include <vector>

namespace latcap {

Rational parse_rational(const std::string& s) {
  if (s.empty()) fail(errc::bad_input, "empty rational literal");
  try {
    Rational q(s);
    if (q.get_den() == 0) fail(errc::bad_input, "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    fail(errc::bad_input, "malformed rational '" + s + "'");
  }
}

std::string format_rational(const Rational& q) { return q.get_str(); }

Rational pow_rational(const Rational& q, long e) {
  if (e == 0) return 1;
  if (q == 0 && e < 0) fail(errc::bad_input, "0 has no negative power");
  Rational base = e < 0 ? Rational(1) / q : q;
  unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), k);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), k);
  out.canonicalize();
  return out;
}

std::pair<Rational, unsigned> primitive_power_root(const Rational& q) {
  if (q <= 0) fail(errc::bad_input, "primitive_power_root needs a positive rational");
  if (q == 1) return {Rational(1), 1};
  const mpz_class num = q.get_num(), den = q.get_den();
  const mpz_class& probe = num > 1 ? num : den;
  const std::size_t bits = mpz_sizeinbase(probe.get_mpz_t(), 2);
  for (unsigned m = static_cast<unsigned>(bits); m >= 2; --m) {
    mpz_class rn, rd;
    const bool en = num == 1 ? (rn = 1, true) : mpz_root(rn.get_mpz_t(), num.get_mpz_t(), m) != 0;
    const bool ed = den == 1 ? (rd = 1, true) : mpz_root(rd.get_mpz_t(), den.get_mpz_t(), m) != 0;
    if (en && ed) {
      Rational r(rn, rd);
      r.canonicalize();
      return {r, m};
    }
  }
  return {q, 1};
}

namespace {

// True (and sets rho) when q == rho^n for a positive rational rho.
bool exact_nth_root(const Rational& q, unsigned n, Rational& rho) {
  if (q <= 0) return false;
  if (n == 1) {
    rho = q;
    return true;
  }
  mpz_class rn, rd;
  const mpz_class num = q.get_num(), den = q.get_den();
  if (num == 1)
    rn = 1;
  else if (mpz_root(rn.get_mpz_t(), num.get_mpz_t(), n) == 0)
    return false;
  if (den == 1)
    rd = 1;
  else if (mpz_root(rd.get_mpz_t(), den.get_mpz_t(), n) == 0)
    return false;
  rho = Rational(rn, rd);
  rho.canonicalize();
  return true;
}

struct MpfrValue {
  mpfr_t v;
  explicit MpfrValue(mpfr_prec_t prec) { mpfr_init2(v, prec); }
  ~MpfrValue() { mpfr_clear(v); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;
};

}  // namespace

void RadicalSum::add_root(const Rational& coeff, const Rational& value, unsigned n) {
  if (coeff == 0) return;
  if (value <= 0) fail(errc::bad_input, "radicand must be positive");
  if (n == 0) fail(errc::bad_input, "zeroth root");
  Rational rho;
  if (exact_nth_root(value, n, rho)) {
    rational_ += coeff * rho;
    return;
  }
  auto key = std::make_pair(n, value);
  auto it = roots_.find(key);
  if (it == roots_.end())
    roots_.emplace(std::move(key), coeff);
  else {
    it->second += coeff;
    if (it->second == 0) roots_.erase(it);
  }
}

void RadicalSum::add_power(const Rational& coeff, const Rational& base, const Rational& exponent) {
  if (coeff == 0) return;
  if (base <= 0) fail(errc::bad_input, "power base must be positive");
  if (exponent < 0) fail(errc::bad_input, "negative exponent");
  const mpz_class num = exponent.get_num(), den = exponent.get_den();
  if (!num.fits_slong_p() || !den.fits_ulong_p()) fail(errc::size_exceeded, "exponent too large");
  add_root(coeff, pow_rational(base, num.get_si()), static_cast<unsigned>(den.get_ui()));
}

RadicalSum& RadicalSum::operator+=(const RadicalSum& o) {
  rational_ += o.rational_;
  for (const auto& [key, c] : o.roots_) add_root(c, key.second, key.first);
  return *this;
}

RadicalSum& RadicalSum::operator-=(const RadicalSum& o) {
  rational_ -= o.rational_;
  for (const auto& [key, c] : o.roots_) add_root(-c, key.second, key.first);
  return *this;
}

void RadicalSum::scale(const Rational& c) {
  if (c == 0) {
    rational_ = 0;
    roots_.clear();
    return;
  }
  rational_ *= c;
  for (auto& [key, coeff] : roots_) coeff *= c;
}

const Rational& RadicalSum::rational_value() const {
  if (!roots_.empty()) fail(errc::bad_input, "value has irrational terms");
  return rational_;
}

RadicalSum::Sign RadicalSum::sign(unsigned max_bits) const {
  // Normalize every term to a common root order N, then merge radicands
  // that differ by an exact N-th power; distinct classes of positive
  // rationals have Q-independent N-th roots, so an empty residual is an
  // exact zero.
  unsigned long N = 1;
  for (const auto& [key, c] : roots_) N = std::lcm(N, static_cast<unsigned long>(key.first));
  if (N > 4096) fail(errc::size_exceeded, "common root order too large");

  std::vector<Rational> reps;
  std::vector<Rational> coeffs;
  for (const auto& [key, c] : roots_) {
    const Rational w = pow_rational(key.second, static_cast<long>(N / key.first));
    bool merged = false;
    for (std::size_t i = 0; i < reps.size(); ++i) {
      Rational rho;
      if (exact_nth_root(w / reps[i], static_cast<unsigned>(N), rho)) {
        coeffs[i] += c * rho;
        merged = true;
        break;
      }
    }
    if (!merged) {
      reps.push_back(w);
      coeffs.push_back(c);
    }
  }
  std::vector<std::pair<Rational, Rational>> residual;  // (radicand, coeff)
  for (std::size_t i = 0; i < reps.size(); ++i)
    if (coeffs[i] != 0) residual.emplace_back(reps[i], coeffs[i]);

  if (residual.empty()) {
    const int s = sgn(rational_);
    return s < 0 ? Sign::negative : (s > 0 ? Sign::positive : Sign::zero);
  }

  for (mpfr_prec_t prec = 128; prec <= static_cast<mpfr_prec_t>(max_bits); prec *= 2) {
    MpfrValue lo(prec), hi(prec), t(prec), u(prec);
    mpfr_set_q(lo.v, rational_.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi.v, rational_.get_mpq_t(), MPFR_RNDU);
    for (const auto& [w, c] : residual) {
      // Enclose w^(1/N), then multiply by c with the rounding dictated by
      // c's sign, and accumulate.
      mpfr_set_q(t.v, w.get_mpq_t(), MPFR_RNDD);
      mpfr_rootn_ui(t.v, t.v, N, MPFR_RNDD);
      mpfr_set_q(u.v, w.get_mpq_t(), MPFR_RNDU);
      mpfr_rootn_ui(u.v, u.v, N, MPFR_RNDU);
      MpfrValue a(prec), b(prec);
      if (c > 0) {
        mpfr_mul_q(a.v, t.v, c.get_mpq_t(), MPFR_RNDD);
        mpfr_mul_q(b.v, u.v, c.get_mpq_t(), MPFR_RNDU);
      } else {
        mpfr_mul_q(a.v, u.v, c.get_mpq_t(), MPFR_RNDD);
        mpfr_mul_q(b.v, t.v, c.get_mpq_t(), MPFR_RNDU);
      }
      mpfr_add(lo.v, lo.v, a.v, MPFR_RNDD);
      mpfr_add(hi.v, hi.v, b.v, MPFR_RNDU);
    }
    if (mpfr_sgn(lo.v) > 0) return Sign::positive;
    if (mpfr_sgn(hi.v) < 0) return Sign::negative;
  }
  return Sign::indeterminate;
}

RadicalSum::Sign RadicalSum::compare(const Rational& bound, unsigned max_bits) const {
  RadicalSum d = *this;
  d.rational_ -= bound;
  return d.sign(max_bits);
}

double RadicalSum::to_double() const {
  double out = rational_.get_d();
  for (const auto& [key, c] : roots_) {
    MpfrValue t(64);
    mpfr_set_q(t.v, key.second.get_mpq_t(), MPFR_RNDN);
    mpfr_rootn_ui(t.v, t.v, key.first, MPFR_RNDN);
    out += c.get_d() * mpfr_get_d(t.v, MPFR_RNDN);
  }
  return out;
}

}  // namespace latcap

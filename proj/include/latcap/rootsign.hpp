#pragma once

#include <map>
#include <utility>

#include "latcap/rational.hpp"

namespace latcap {

// Exact value of the form  r + sum of coeff * v^(1/n)  with rational r,
// coeff, v > 0. Addition and scalar multiplication are exact; the sign is
// decided rigorously: terms whose values differ by an exact n-th power of a
// rational are merged symbolically (so structural cancellations vanish to an
// exact zero), and any residual is enclosed with MPFR directed rounding at
// escalating precision (128 -> max_bits). `indeterminate` is only possible
// when independent radicals cancel beyond the precision cap.
class RadicalSum {
 public:
  enum class Sign { negative, zero, positive, indeterminate };

  RadicalSum() = default;
  explicit RadicalSum(Rational r) : rational_(std::move(r)) {}

  void add_rational(const Rational& c) { rational_ += c; }
  // += coeff * value^(1/n), value > 0.
  void add_root(const Rational& coeff, const Rational& value, unsigned n);
  // += coeff * base^(num/den) for rational exponent >= 0, base > 0.
  void add_power(const Rational& coeff, const Rational& base, const Rational& exponent);

  RadicalSum& operator+=(const RadicalSum& o);
  RadicalSum& operator-=(const RadicalSum& o);
  void scale(const Rational& c);

  bool is_rational() const { return roots_.empty(); }
  const Rational& rational_value() const;  // bad_input when not rational

  Sign sign(unsigned max_bits = kDefaultMaxBits) const;
  // Sign of (this - bound).
  Sign compare(const Rational& bound, unsigned max_bits = kDefaultMaxBits) const;

  double to_double() const;

  static constexpr unsigned kDefaultMaxBits = 512;

 private:
  Rational rational_ = 0;
  // (root order n, radicand v) -> coefficient; exact-duplicate radicands
  // merge here, n-th-power-related radicands merge inside sign().
  std::map<std::pair<unsigned, Rational>, Rational> roots_;
};

}  // namespace latcap

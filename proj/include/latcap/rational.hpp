#pragma once

#include <gmpxx.h>

#include <string>

#include "latcap/error.hpp"

namespace latcap {

using Rational = mpq_class;

// Parses "p/q" or "p" (optional sign, arbitrary precision). Canonicalizes.
Rational parse_rational(const std::string& s);

// Serializes as "p/q" ("p" when q == 1), canonical form.
std::string format_rational(const Rational& q);

inline Rational rat(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// q^e for integer e (e < 0 requires q != 0).
Rational pow_rational(const Rational& q, long e);

// Largest m >= 1 with q == r^m for rational r > 0; returns {r, m}.
// Requires q > 0. For q == 1 returns {1, 1}.
std::pair<Rational, unsigned> primitive_power_root(const Rational& q);

}  // namespace latcap

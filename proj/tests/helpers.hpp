#pragma once

#include <vector>

#include "latcap/lattice.hpp"
#include "latcap/setfun.hpp"

namespace latcap::testing {

// Powerset of n points ordered by inclusion (element id == bitmask).
inline FiniteLattice powerset_subset(int n) {
  std::vector<std::string> names;
  std::vector<std::pair<Elem, Elem>> pairs;
  for (int m = 0; m < (1 << n); ++m) {
    std::string s = "{";
    for (int i = 0; i < n; ++i)
      if (m & (1 << i)) {
        if (s.size() > 1) s += ",";
        s += static_cast<char>('a' + i);
      }
    names.push_back(s + "}");
  }
  for (int a = 0; a < (1 << n); ++a)
    for (int b = 0; b < (1 << n); ++b)
      if ((a & ~b) == 0) pairs.emplace_back(a, b);
  return FiniteLattice::build(std::move(names), pairs);
}

inline FiniteLattice chain(int n) {
  std::vector<std::string> names;
  std::vector<std::pair<Elem, Elem>> pairs;
  for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
  return FiniteLattice::build(std::move(names), pairs);
}

inline SetFunction make_fn(const FiniteLattice& L, Direction dir, std::vector<Rational> values) {
  return SetFunction::make(std::make_shared<FiniteLattice>(L), dir, std::move(values));
}

}  // namespace latcap::testing

#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "latcap/rootsign.hpp"
#include "latcap/setfun.hpp"

namespace latcap {

// Infinite-divisibility certificate for an increasing, completely monotone f:
// the support {f > 0} must be a filter, and every n-th root f^(1/n) must stay
// completely monotone up to n_max. Signs of the root differences are decided
// by RadicalSum (exact merge + MPFR enclosure, 128 -> max_bits).
struct LevyReport {
  enum class Verdict { divisible, not_divisible, indeterminate };

  Verdict verdict = Verdict::not_divisible;
  bool support_is_filter = false;
  // f(x) > 0, f(y) > 0, f(x ^ y) == 0.
  std::optional<std::pair<Elem, Elem>> nonfilter_witness;

  struct RootWitness {
    int n = 0;
    std::vector<Elem> index_set;
    Elem at = -1;
  };
  std::optional<RootWitness> root_witness;

  // -log f per element (infinity off the support); double rendering only,
  // the exact content is f itself. Filled when divisible.
  std::vector<double> exponent;
  int n_checked = 0;
};

LevyReport levy_divisibility(const SetFunction& f, int n_max,
                             unsigned max_bits = RadicalSum::kDefaultMaxBits);

}  // namespace latcap

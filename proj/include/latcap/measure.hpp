#pragma once

#include <map>

#include "latcap/rational.hpp"

namespace latcap {

enum class CarrierKind { elements, filters, closed_sets };

const char* carrier_kind_name(CarrierKind k);
CarrierKind carrier_kind_from(const std::string& s);

// Weights on a finite carrier. Ids are lattice element ids (kind elements /
// filters, where id z stands for the principal filter of z) or ground-set
// bitmasks (kind closed_sets). kAdjoinedBottom is the fresh bottom element
// some representation carriers adjoin.
struct DiscreteMeasure {
  static constexpr long kAdjoinedBottom = -1;

  CarrierKind kind = CarrierKind::elements;
  bool allow_signed = false;
  std::map<long, Rational> weights;

  Rational total() const {
    Rational t = 0;
    for (const auto& [id, w] : weights) t += w;
    return t;
  }

  Rational at(long id) const {
    auto it = weights.find(id);
    return it == weights.end() ? Rational(0) : it->second;
  }

  void set(long id, const Rational& w) {
    if (w == 0)
      weights.erase(id);
    else
      weights[id] = w;
  }

  // bad_measure unless every weight is nonnegative (or allow_signed).
  void validate() const;
};

}  // namespace latcap

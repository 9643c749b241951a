#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "latcap/interval.hpp"
#include "latcap/measure.hpp"
#include "latcap/rng.hpp"

namespace latcap {

// Poisson variate: sequential inversion for mean < 30, Hormann's transformed
// rejection (PTRD) otherwise. The split point is fixed so that a report is
// reproducible from (seed, stream) alone.
long poisson_variate(Philox& rng, double mean);

// Realization of a general Poisson process restricted to a window: total
// count from the window mass, positions i.i.d. from the normalized measure.
// Atoms may repeat (the process need not be simple when the measure is
// atomic). Positions are exact rationals.
struct PointSample {
  std::vector<Rational> points;

  long count_in(const IntervalUnion& q) const;
};

// Precomputed sampling tables for a measure restricted to a window; draw()
// selects a component by the exact cumulative distribution (the uniform
// 64-bit word is compared against rational cutoffs without rounding).
class PoissonSampler {
 public:
  PoissonSampler(const MeasureModel& lambda, IntervalUnion window);
  PointSample draw(Philox& rng) const;
  const Rational& window_mass() const { return total_; }

 private:
  struct Component {
    bool atom;
    Rational lo, len;  // density piece
    Rational pos;      // atom position
  };
  std::vector<Component> comps_;
  std::vector<Rational> cum_;
  Rational total_;
  double total_d_ = 0;
  bool fast_ = false;
  unsigned long denom_ = 0;            // common denominator K with cum = C/K
  std::vector<unsigned long> cum_num_;  // C_i
  std::size_t pick(Philox& rng) const;
};

PointSample sample_poisson(const MeasureModel& lambda, const IntervalUnion& window, Philox& rng);

// Union of a Poisson number of i.i.d. grains drawn from a finite grain
// measure (closed-set bitmasks). The empty union is the empty set.
struct RandomSetSample {
  std::vector<long> grains;
  long realized = 0;
};

class CompoundSampler {
 public:
  explicit CompoundSampler(const DiscreteMeasure& grain_measure);
  RandomSetSample draw(Philox& rng) const;
  const Rational& total() const { return total_; }

 private:
  std::vector<long> masks_;
  std::vector<Rational> cum_;
  Rational total_;
  double total_d_ = 0;
  bool fast_ = false;
  unsigned long denom_ = 0;
  std::vector<unsigned long> cum_num_;
  std::size_t pick(Philox& rng) const;
};

RandomSetSample sample_compound_set(const DiscreteMeasure& grain_measure, Philox& rng);

// Theory value carried exactly until the float comparison boundary: a
// rational, exp(-rational) or 1 - exp(-rational).
struct TheoryValue {
  enum class Kind { rational, exp_neg_rational, one_minus_exp_neg } kind = Kind::rational;
  Rational value;

  static TheoryValue exact(Rational v) { return {Kind::rational, std::move(v)}; }
  static TheoryValue exp_neg(Rational v) { return {Kind::exp_neg_rational, std::move(v)}; }
  static TheoryValue complement_exp_neg(Rational v) { return {Kind::one_minus_exp_neg, std::move(v)}; }
  double to_double() const;
  std::string to_string() const;
};

struct SimReport {
  double estimate = 0;
  double std_error = 0;
  TheoryValue theory;
  double z = 0;
  long n = 0;
  std::uint64_t seed = 0;
  std::string functional;  // "hitting" or "avoidance"
};

// Runs n independent replications of a Bernoulli functional; replication i
// uses stream (stream_base + i), so reports are reproducible and
// schedule-independent. `event` returns whether the replication hit. When
// batch_counts is given, hits are also tallied into batches of batch_size
// (the merge is an associative count reduction, so batch totals are
// schedule-independent too).
SimReport estimate_bernoulli(const std::function<bool(Philox&)>& event, long n, std::uint64_t seed,
                             std::uint64_t stream_base, const TheoryValue& theory,
                             const std::string& functional,
                             std::vector<long>* batch_counts = nullptr, long batch_size = 1000);

enum class Functional { hitting, avoidance };

Functional functional_from(const std::string& s);

// Hitting / avoidance of q under the Poisson model.
SimReport estimate_poisson_functional(const MeasureModel& lambda, const IntervalUnion& window,
                                      Functional fn, const IntervalUnion& q, long n,
                                      std::uint64_t seed, std::uint64_t stream_base = 0,
                                      std::vector<long>* batch_counts = nullptr,
                                      long batch_size = 1000);

// Hitting / avoidance of the mask q under the compound grain model.
SimReport estimate_compound_functional(const DiscreteMeasure& grain_measure, Functional fn, long q,
                                       long n, std::uint64_t seed, std::uint64_t stream_base = 0,
                                       std::vector<long>* batch_counts = nullptr,
                                       long batch_size = 1000);

bool z_compare(const SimReport& r, double z_threshold);

// Empirical covariance of the zero-count indicators of two windows, with a
// delta-method standard error; used for independence checks on disjoint
// windows.
struct CovarianceReport {
  double cov = 0;
  double std_error = 0;
  double z = 0;
  long n = 0;
};

CovarianceReport poisson_zero_covariance(const MeasureModel& lambda, const IntervalUnion& window,
                                         const IntervalUnion& q1, const IntervalUnion& q2, long n,
                                         std::uint64_t seed, std::uint64_t stream_base = 0);

}  // namespace latcap

#include "latcap/sampling.hpp"

#include <cmath>
#include <limits>

namespace latcap {

long poisson_variate(Philox& rng, double mean) {
  if (mean < 0 || !std::isfinite(mean)) fail(errc::bad_input, "poisson mean must be finite and >= 0");
  if (mean == 0) return 0;
  if (mean < 30) {
    // Sequential inversion (Knuth): multiply uniforms until the product
    // drops below exp(-mean).
    const double limit = std::exp(-mean);
    double prod = 1;
    long k = -1;
    do {
      prod *= rng.next_double();
      ++k;
    } while (prod > limit);
    return k;
  }

  // Transformed rejection with dominating distribution G(u) (Hormann's PTRD,
  // 1993): propose k = floor((2a/us + b)*U + mean + 0.43) from the inverse of
  // G, accept with the squeeze or the exact log-density comparison.
  const double smu = std::sqrt(mean);
  const double b = 0.931 + 2.53 * smu;
  const double a = -0.059 + 0.02483 * b;
  const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
  const double v_r = 0.9277 - 3.6224 / (b - 2.0);
  const double log_mean = std::log(mean);
  for (;;) {
    double u = rng.next_double() - 0.5;
    double v = rng.next_double();
    const double us = 0.5 - std::fabs(u);
    const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= v_r) return static_cast<long>(kf);
    if (kf < 0 || (us < 0.013 && v > us)) continue;
    const double k = kf;
    if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
        k * log_mean - mean - std::lgamma(k + 1.0))
      return static_cast<long>(kf);
  }
}

long PointSample::count_in(const IntervalUnion& q) const {
  long c = 0;
  for (const Rational& p : points)
    if (q.contains_point(p)) ++c;
  return c;
}

namespace {

Rational u64_fraction(std::uint64_t u) {
  mpz_class den = 1;
  den <<= 64;
  Rational q(mpz_class(static_cast<unsigned long>(u)), den);
  q.canonicalize();
  return q;
}

// Precomputes the integer form of the cumulative cutoffs when they fit:
// picking component i for uniform word u means u * K < C_i * 2^64, an exact
// 128-bit comparison. Returns false when the denominators are too large, in
// which case the caller keeps the rational path.
bool integer_cutoffs(const std::vector<Rational>& cum, const Rational& total,
                     unsigned long* denom, std::vector<unsigned long>* cum_num) {
  mpz_class lcm = total.get_den();
  for (const Rational& c : cum) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den().get_mpz_t());
  const mpz_class k = total.get_num() * (lcm / total.get_den());
  if (!k.fits_ulong_p() || k.get_ui() >= (1uL << 62)) return false;
  *denom = k.get_ui();
  cum_num->clear();
  for (const Rational& c : cum) {
    const mpz_class num = c.get_num() * (lcm / c.get_den());
    if (!num.fits_ulong_p() || num.get_ui() > k.get_ui()) return false;
    cum_num->push_back(num.get_ui());
  }
  return true;
}

std::size_t pick_index(Philox& rng, bool fast, unsigned long denom,
                       const std::vector<unsigned long>& cum_num, const std::vector<Rational>& cum,
                       const Rational& total) {
  const std::uint64_t u = rng.next_u64();
  if (fast) {
    const unsigned __int128 lhs = static_cast<unsigned __int128>(u) * denom;
    for (std::size_t i = 0; i < cum_num.size(); ++i)
      if (lhs < (static_cast<unsigned __int128>(cum_num[i]) << 64)) return i;
    return cum_num.size() - 1;
  }
  const Rational target = u64_fraction(u) * total;
  for (std::size_t i = 0; i < cum.size(); ++i)
    if (target < cum[i]) return i;
  return cum.size() - 1;
}

}  // namespace

PoissonSampler::PoissonSampler(const MeasureModel& lambda, IntervalUnion window) {
  total_ = 0;
  for (const auto& piece : lambda.pieces()) {
    if (piece.height == 0) continue;
    for (const auto& p : window.parts()) {
      const Rational lo = std::max(piece.where.lo, p.lo);
      const Rational hi = std::min(piece.where.hi, p.hi);
      if (lo < hi) {
        comps_.push_back({false, lo, hi - lo, 0});
        total_ += piece.height * (hi - lo);
        cum_.push_back(total_);
      }
    }
  }
  for (const auto& [pos, mass] : lambda.atoms()) {
    if (mass == 0 || !window.contains_point(pos)) continue;
    comps_.push_back({true, 0, 0, pos});
    total_ += mass;
    cum_.push_back(total_);
  }
  total_d_ = total_.get_d();
  if (!comps_.empty()) fast_ = integer_cutoffs(cum_, total_, &denom_, &cum_num_);
}

std::size_t PoissonSampler::pick(Philox& rng) const {
  return pick_index(rng, fast_, denom_, cum_num_, cum_, total_);
}

PointSample PoissonSampler::draw(Philox& rng) const {
  PointSample out;
  if (total_ == 0) return out;
  const long n = poisson_variate(rng, total_d_);
  out.points.reserve(n);
  for (long i = 0; i < n; ++i) {
    const Component& c = comps_[pick(rng)];
    if (c.atom)
      out.points.push_back(c.pos);
    else
      out.points.push_back(c.lo + c.len * u64_fraction(rng.next_u64()));
  }
  return out;
}

PointSample sample_poisson(const MeasureModel& lambda, const IntervalUnion& window, Philox& rng) {
  return PoissonSampler(lambda, window).draw(rng);
}

CompoundSampler::CompoundSampler(const DiscreteMeasure& grain_measure) {
  if (grain_measure.kind != CarrierKind::closed_sets)
    fail(errc::bad_measure, "grain measure must live on closed sets");
  grain_measure.validate();
  total_ = 0;
  for (const auto& [mask, w] : grain_measure.weights) {
    if (w == 0) continue;
    masks_.push_back(mask);
    total_ += w;
    cum_.push_back(total_);
  }
  total_d_ = total_.get_d();
  if (!masks_.empty()) fast_ = integer_cutoffs(cum_, total_, &denom_, &cum_num_);
}

std::size_t CompoundSampler::pick(Philox& rng) const {
  return pick_index(rng, fast_, denom_, cum_num_, cum_, total_);
}

RandomSetSample CompoundSampler::draw(Philox& rng) const {
  RandomSetSample out;
  if (total_ == 0) return out;
  const long n = poisson_variate(rng, total_d_);
  out.grains.reserve(n);
  for (long i = 0; i < n; ++i) {
    const long mask = masks_[pick(rng)];
    out.grains.push_back(mask);
    out.realized |= mask;
  }
  return out;
}

RandomSetSample sample_compound_set(const DiscreteMeasure& grain_measure, Philox& rng) {
  return CompoundSampler(grain_measure).draw(rng);
}

double TheoryValue::to_double() const {
  switch (kind) {
    case Kind::rational: return value.get_d();
    case Kind::exp_neg_rational: return std::exp(-value.get_d());
    case Kind::one_minus_exp_neg: return -std::expm1(-value.get_d());
  }
  return 0;
}

std::string TheoryValue::to_string() const {
  switch (kind) {
    case Kind::rational: return format_rational(value);
    case Kind::exp_neg_rational: return "exp(-" + format_rational(value) + ")";
    case Kind::one_minus_exp_neg: return "1-exp(-" + format_rational(value) + ")";
  }
  return "?";
}

Functional functional_from(const std::string& s) {
  if (s == "hitting") return Functional::hitting;
  if (s == "avoidance") return Functional::avoidance;
  fail(errc::bad_input, "functional must be 'hitting' or 'avoidance'");
}

SimReport estimate_bernoulli(const std::function<bool(Philox&)>& event, long n, std::uint64_t seed,
                             std::uint64_t stream_base, const TheoryValue& theory,
                             const std::string& functional, std::vector<long>* batch_counts,
                             long batch_size) {
  if (n < 1) fail(errc::bad_input, "replication count must be >= 1");
  if (batch_counts) {
    batch_counts->assign(static_cast<std::size_t>((n + batch_size - 1) / batch_size), 0);
    if (batch_size < 1) fail(errc::bad_input, "batch size must be >= 1");
  }
  long hits = 0;
  for (long i = 0; i < n; ++i) {
    Philox rng(seed, stream_base + static_cast<std::uint64_t>(i));
    if (event(rng)) {
      ++hits;
      if (batch_counts) ++(*batch_counts)[static_cast<std::size_t>(i / batch_size)];
    }
  }
  SimReport r;
  r.n = n;
  r.seed = seed;
  r.functional = functional;
  r.estimate = static_cast<double>(hits) / static_cast<double>(n);
  r.std_error = std::sqrt(r.estimate * (1.0 - r.estimate) / static_cast<double>(n));
  r.theory = theory;
  const double t = theory.to_double();
  if (r.std_error > 0)
    r.z = (r.estimate - t) / r.std_error;
  else
    r.z = (r.estimate == t) ? 0.0 : std::numeric_limits<double>::infinity();
  return r;
}

SimReport estimate_poisson_functional(const MeasureModel& lambda, const IntervalUnion& window,
                                      Functional fn, const IntervalUnion& q, long n,
                                      std::uint64_t seed, std::uint64_t stream_base,
                                      std::vector<long>* batch_counts, long batch_size) {
  const Rational mass = measure_of(lambda, iu_intersect(q, window));
  const TheoryValue theory = fn == Functional::avoidance ? TheoryValue::exp_neg(mass)
                                                         : TheoryValue::complement_exp_neg(mass);
  const PoissonSampler sampler(lambda, window);
  auto event = [&](Philox& rng) {
    const bool hit = sampler.draw(rng).count_in(q) > 0;
    return fn == Functional::hitting ? hit : !hit;
  };
  return estimate_bernoulli(event, n, seed, stream_base, theory,
                            fn == Functional::hitting ? "hitting" : "avoidance", batch_counts,
                            batch_size);
}

SimReport estimate_compound_functional(const DiscreteMeasure& grain_measure, Functional fn, long q,
                                       long n, std::uint64_t seed, std::uint64_t stream_base,
                                       std::vector<long>* batch_counts, long batch_size) {
  // Levy exponent of the avoidance: total weight of grains meeting q.
  Rational exponent = 0;
  for (const auto& [mask, w] : grain_measure.weights)
    if ((mask & q) != 0) exponent += w;
  const TheoryValue theory = fn == Functional::avoidance
                                 ? TheoryValue::exp_neg(exponent)
                                 : TheoryValue::complement_exp_neg(exponent);
  const CompoundSampler sampler(grain_measure);
  auto event = [&](Philox& rng) {
    const bool hit = (sampler.draw(rng).realized & q) != 0;
    return fn == Functional::hitting ? hit : !hit;
  };
  return estimate_bernoulli(event, n, seed, stream_base, theory,
                            fn == Functional::hitting ? "hitting" : "avoidance", batch_counts,
                            batch_size);
}

bool z_compare(const SimReport& r, double z_threshold) {
  if (r.std_error == 0) return r.estimate == r.theory.to_double();
  return std::fabs(r.z) <= z_threshold;
}

CovarianceReport poisson_zero_covariance(const MeasureModel& lambda, const IntervalUnion& window,
                                         const IntervalUnion& q1, const IntervalUnion& q2, long n,
                                         std::uint64_t seed, std::uint64_t stream_base) {
  if (n < 2) fail(errc::bad_input, "need at least two replications");
  const PoissonSampler sampler(lambda, window);
  long c1 = 0, c2 = 0, c12 = 0;
  for (long i = 0; i < n; ++i) {
    Philox rng(seed, stream_base + static_cast<std::uint64_t>(i));
    const PointSample s = sampler.draw(rng);
    const bool z1 = s.count_in(q1) == 0;
    const bool z2 = s.count_in(q2) == 0;
    c1 += z1;
    c2 += z2;
    c12 += z1 && z2;
  }
  const double dn = static_cast<double>(n);
  const double p1 = c1 / dn, p2 = c2 / dn, p12 = c12 / dn;
  CovarianceReport r;
  r.n = n;
  r.cov = p12 - p1 * p2;
  // Delta method for g(p12, p1, p2) = p12 - p1 p2 with multinomial covariances.
  const double v12 = p12 * (1 - p12);
  const double v1 = p1 * (1 - p1);
  const double v2 = p2 * (1 - p2);
  const double c12_1 = p12 * (1 - p1);
  const double c12_2 = p12 * (1 - p2);
  const double c1_2 = p12 - p1 * p2;
  const double var = v12 + p2 * p2 * v1 + p1 * p1 * v2 - 2 * p2 * c12_1 - 2 * p1 * c12_2 +
                     2 * p1 * p2 * c1_2;
  r.std_error = var > 0 ? std::sqrt(var / dn) : 0.0;
  r.z = r.std_error > 0 ? r.cov / r.std_error : (r.cov == 0 ? 0.0 : std::numeric_limits<double>::infinity());
  return r;
}

}  // namespace latcap

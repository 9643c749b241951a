#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "latcap/json_io.hpp"
#include "latcap/rng.hpp"

namespace latcap {

// One verification suite per acceptance property; `suite` runs them from the
// CLI and the acceptance test binary runs them all.
struct SuiteCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteResult {
  std::string suite;
  bool pass = true;
  std::vector<SuiteCheck> checks;
  double seconds = 0;  // wall clock; sidecar only, never part of the report

  void check(const std::string& name, bool ok, const std::string& detail = "");
};

struct SuiteConfig {
  std::optional<std::uint64_t> seed;  // required by Monte Carlo suites
  double z_threshold = 3.0;
  bool bonferroni = false;  // widen the threshold across a suite's comparisons
  long mc_n = 100000;
  std::vector<std::string> suites;  // empty = all

  std::uint64_t seed_or_throw(const std::string& suite) const;
  // The per-comparison threshold for a block of m comparisons: z itself, or
  // the Bonferroni-corrected quantile with the same family-wise level.
  double block_threshold(int comparisons) const;
};

inline constexpr std::uint64_t kDefaultSuiteSeed = 101;

const std::vector<std::string>& all_suite_names();
bool suite_needs_seed(const std::string& name);
SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg);

Json suites_report(const std::vector<SuiteResult>& results, const SuiteConfig& cfg);
std::string suites_report_csv(const std::vector<SuiteResult>& results);

// Row-reduces A w = b over the rationals; the unique solution, or nullopt
// when the system is singular or inconsistent. Independent of the Mobius
// inversion path; the representation suites use it as an oracle.
std::optional<std::vector<Rational>> solve_linear(std::vector<std::vector<Rational>> A,
                                                  std::vector<Rational> b);

// Lattice of down-sets of a random poset on 2..4 points (every finite
// distributive lattice at this scale arises this way); at most max_size
// elements.
FiniteLattice random_distributive_lattice(Philox& rng, int max_size);

// Uniform-ish small rational in [0, max_num/1] with denominators 1..8.
Rational random_small_rational(Philox& rng, unsigned max_num);

}  // namespace latcap

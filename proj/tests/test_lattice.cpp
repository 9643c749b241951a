#include <doctest.h>

#include <numeric>
#include <set>

#include "latcap/lattice.hpp"
#include "latcap/rng.hpp"
#include "latcap/suites.hpp"

using namespace latcap;

namespace {

// Powerset of n points ordered by inclusion (element id == bitmask).
FiniteLattice powerset_subset(int n) {
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

FiniteLattice chain(int n) {
  std::vector<std::string> names;
  std::vector<std::pair<Elem, Elem>> pairs;
  for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
  return FiniteLattice::build(std::move(names), pairs);
}

}  // namespace

TEST_CASE("chain C3 builds with min/max tables") {
  const FiniteLattice L = chain(3);
  CHECK(L.top() == 2);
  CHECK(L.bottom() == 0);
  for (Elem x = 0; x < 3; ++x)
    for (Elem y = 0; y < 3; ++y) {
      CHECK(L.meet(x, y) == std::min(x, y));
      CHECK(L.join(x, y) == std::max(x, y));
    }
}

TEST_CASE("powerset under inclusion has intersection meet and union join") {
  const FiniteLattice L = powerset_subset(2);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      CHECK(L.meet(a, b) == (a & b));
      CHECK(L.join(a, b) == (a | b));
    }
  CHECK(L.top() == 3);
}

TEST_CASE("reverse-inclusion powerset swaps the roles") {
  const FiniteLattice L = FiniteLattice::powerset_reverse_inclusion(2);
  CHECK(L.top() == 0);       // empty set
  CHECK(L.bottom() == 3);    // full set
  CHECK(L.meet(1, 2) == 3);  // union
  CHECK(L.join(1, 2) == 0);  // intersection
}

TEST_CASE("two incomparable points report NoTop") {
  CHECK_THROWS_WITH_AS(FiniteLattice::build({"a", "b"}, {}), doctest::Contains("NoTop"), Error);
}

TEST_CASE("a cycle reports NotAPartialOrder") {
  CHECK_THROWS_WITH_AS(FiniteLattice::build({"a", "b", "t"}, {{0, 1}, {1, 0}, {0, 2}, {1, 2}}),
                       doctest::Contains("NotAPartialOrder"), Error);
}

TEST_CASE("glb failure reports NotALattice with the pair") {
  // Two maximal lower bounds below two incomparable mid elements.
  const std::vector<std::pair<Elem, Elem>> pairs = {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 3},
                                                    {2, 4}, {3, 5}, {4, 5}};
  CHECK_THROWS_WITH_AS(FiniteLattice::build({"bot", "p", "q", "x", "y", "top"}, pairs),
                       doctest::Contains("NotALattice"), Error);
}

TEST_CASE("meet and join satisfy the universal property") {
  Philox rng(7, 0);
  for (int t = 0; t < 10; ++t) {
    const FiniteLattice L = random_distributive_lattice(rng, 10);
    for (Elem x = 0; x < L.size(); ++x)
      for (Elem y = 0; y < L.size(); ++y) {
        const Elem m = L.meet(x, y), j = L.join(x, y);
        CHECK(L.leq(m, x));
        CHECK(L.leq(m, y));
        CHECK(L.leq(x, j));
        CHECK(L.leq(y, j));
        for (Elem z = 0; z < L.size(); ++z) {
          if (L.leq(z, x) && L.leq(z, y)) CHECK(L.leq(z, m));
          if (L.leq(x, z) && L.leq(y, z)) CHECK(L.leq(j, z));
        }
      }
  }
}

TEST_CASE("structure report on the diamond M3") {
  const FiniteLattice L = FiniteLattice::build(
      {"0", "x", "y", "z", "1"}, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}});
  const StructureReport r = structure_report(L);
  CHECK_FALSE(r.is_distributive);
  REQUIRE(r.distributivity_witness.has_value());
  const auto& [x, A] = *r.distributivity_witness;
  REQUIRE(A.size() == 2);
  CHECK(L.meet(x, L.join(A[0], A[1])) != L.join(L.meet(x, A[0]), L.meet(x, A[1])));
}

TEST_CASE("structure report on B2 under inclusion") {
  const FiniteLattice L = powerset_subset(2);
  const StructureReport r = structure_report(L);
  CHECK(r.is_distributive);
  CHECK(r.irreducibles == std::vector<Elem>{1, 2, 3});  // {a}, {b}, and the top
  CHECK(r.primes == std::vector<Elem>{1, 2});           // irreducibles minus top
  CHECK_FALSE(r.bottom_is_irreducible);                 // {} = {a} ^ {b}
}

TEST_CASE("chains are distributive and every non-top element is irreducible") {
  const FiniteLattice L = chain(3);
  const StructureReport r = structure_report(L);
  CHECK(r.is_distributive);
  CHECK(r.irreducibles == std::vector<Elem>{0, 1, 2});
  CHECK(r.primes == std::vector<Elem>{0, 1});
  CHECK(r.bottom_is_irreducible);  // single upper cover
}

TEST_CASE("primes of a reverse-inclusion powerset are the singletons") {
  const FiniteLattice L = FiniteLattice::powerset_reverse_inclusion(3);
  const StructureReport r = structure_report(L);
  std::set<Elem> primes(r.primes.begin(), r.primes.end());
  CHECK(primes == std::set<Elem>{0b001, 0b010, 0b100});
}

TEST_CASE("boundary antichains") {
  const FiniteLattice B2 = powerset_subset(2);
  CHECK(boundary_antichain(B2, 3) == std::vector<Elem>{1, 2});  // below top: {a}, {b}
  CHECK(boundary_antichain(B2, 0).empty());                     // bottom convention
  const FiniteLattice C3 = chain(3);
  CHECK(boundary_antichain(C3, 1) == std::vector<Elem>{0});
}

TEST_CASE("boundary antichain is an antichain whose ideal is the non-filter part") {
  Philox rng(11, 0);
  for (int t = 0; t < 20; ++t) {
    const FiniteLattice L = random_distributive_lattice(rng, 10);
    for (Elem x = 0; x < L.size(); ++x) {
      const auto B = boundary_antichain(L, x);
      for (std::size_t i = 0; i < B.size(); ++i)
        for (std::size_t j = i + 1; j < B.size(); ++j) {
          CHECK_FALSE(L.leq(B[i], B[j]));
          CHECK_FALSE(L.leq(B[j], B[i]));
        }
      if (x == L.bottom()) {
        CHECK(B.empty());
        continue;
      }
      for (Elem z = 0; z < L.size(); ++z) {
        bool in_ideal = false;
        for (Elem b : B)
          if (L.leq(z, b)) in_ideal = true;
        CHECK(in_ideal == !L.leq(x, z));
      }
    }
  }
}

TEST_CASE("generated sublattice of B3") {
  const FiniteLattice L = powerset_subset(3);
  const auto F = sublattice_elements(L, std::vector<Elem>{0b001, 0b010});
  CHECK(F == std::vector<Elem>{0b000, 0b001, 0b010, 0b011});
  CHECK(sublattice_elements(L, std::vector<Elem>{L.top()}) == std::vector<Elem>{L.top()});
  std::vector<Elem> all(L.size());
  std::iota(all.begin(), all.end(), 0);
  CHECK(sublattice_elements(L, all).size() == static_cast<std::size_t>(L.size()));
}

TEST_CASE("generated sublattice is the smallest closed superset") {
  Philox rng(13, 0);
  for (int t = 0; t < 40; ++t) {
    const FiniteLattice L = random_distributive_lattice(rng, 10);
    if (L.size() > 6) continue;  // the minimality scan below is 2^|L|
    std::vector<Elem> gens;
    const int k = 1 + static_cast<int>(rng.next_u64() % 3);
    for (int i = 0; i < k; ++i) gens.push_back(static_cast<Elem>(rng.next_u64() % L.size()));
    const auto F = sublattice_elements(L, gens);
    std::set<Elem> fs(F.begin(), F.end());
    for (Elem g : gens) CHECK(fs.count(g) == 1);
    for (Elem a : F)
      for (Elem b : F) {
        CHECK(fs.count(L.meet(a, b)) == 1);
        CHECK(fs.count(L.join(a, b)) == 1);
      }
    for (std::size_t mask = 0; mask < (std::size_t(1) << L.size()); ++mask) {
      std::set<Elem> cand;
      for (Elem e = 0; e < L.size(); ++e)
        if (mask & (std::size_t(1) << e)) cand.insert(e);
      bool contains_gens = true;
      for (Elem g : gens) contains_gens = contains_gens && cand.count(g) > 0;
      if (!contains_gens) continue;
      bool closed = true;
      for (Elem a : cand)
        for (Elem b : cand)
          closed = closed && cand.count(L.meet(a, b)) > 0 && cand.count(L.join(a, b)) > 0;
      if (!closed) continue;
      for (Elem e : F) CHECK(cand.count(e) == 1);
    }
  }
}

TEST_CASE("generated sublattice materializes with host ids attached") {
  const FiniteLattice L = powerset_subset(3);
  const FiniteLattice F = sublattice_generated(L, std::vector<Elem>{0b001, 0b010});
  REQUIRE(F.size() == 4);
  CHECK(F.origin_ids() == std::vector<Elem>{0b000, 0b001, 0b010, 0b011});
  CHECK(F.name(1) == L.name(0b001));
  CHECK(F.top() == 3);
  CHECK(F.bottom() == 0);
  for (Elem a = 0; a < F.size(); ++a)
    for (Elem b = 0; b < F.size(); ++b)
      CHECK(F.origin_ids()[F.meet(a, b)] == L.meet(F.origin_ids()[a], F.origin_ids()[b]));
}

TEST_CASE("sublattice generation requires distributivity") {
  const FiniteLattice M3 = FiniteLattice::build(
      {"0", "x", "y", "z", "1"}, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}});
  CHECK_THROWS_WITH_AS(sublattice_elements(M3, std::vector<Elem>{1, 2}),
                       doctest::Contains("NotDistributive"), Error);
}

TEST_CASE("antichain enumeration in lexicographic order") {
  const FiniteLattice B2 = powerset_subset(2);
  const auto a = antichains_of(B2, std::vector<Elem>{1, 2}, 2);
  REQUIRE(a.size() == 3);
  CHECK(a[0] == std::vector<Elem>{1});
  CHECK(a[1] == std::vector<Elem>{1, 2});
  CHECK(a[2] == std::vector<Elem>{2});

  const FiniteLattice C3 = chain(3);
  const auto b = antichains_of(C3, std::vector<Elem>{0, 1}, 2);
  REQUIRE(b.size() == 2);  // a comparable pair never appears together
  CHECK(b[0] == std::vector<Elem>{0});
  CHECK(b[1] == std::vector<Elem>{1});

  const FiniteLattice B3 = powerset_subset(3);
  CHECK(antichains_of(B3, std::vector<Elem>{0b001, 0b010, 0b100}, 3).size() == 7);
}

TEST_CASE("irreducibles encode the lattice as upper sets (fundamental theorem)") {
  Philox rng(17, 0);
  for (int t = 0; t < 20; ++t) {
    const FiniteLattice L = random_distributive_lattice(rng, 10);
    const StructureReport sr = structure_report(L);
    std::set<std::set<Elem>> images;
    for (Elem x = 0; x < L.size(); ++x) {
      std::set<Elem> img;
      for (Elem j : sr.irreducibles)
        if (L.leq(x, j)) img.insert(j);
      images.insert(img);
      for (Elem y = 0; y < L.size(); ++y) {
        std::set<Elem> other;
        for (Elem j : sr.irreducibles)
          if (L.leq(y, j)) other.insert(j);
        const bool superset = std::includes(img.begin(), img.end(), other.begin(), other.end());
        CHECK(L.leq(x, y) == superset);
      }
    }
    CHECK(images.size() == static_cast<std::size_t>(L.size()));  // injective

    // Surjective onto the nonempty upper subsets of the irreducibles.
    const auto& J = sr.irreducibles;
    std::size_t upper_sets = 0;
    for (std::size_t mask = 1; mask < (std::size_t(1) << J.size()); ++mask) {
      bool upper = true;
      for (std::size_t i = 0; i < J.size() && upper; ++i)
        for (std::size_t j = 0; j < J.size(); ++j)
          if ((mask & (std::size_t(1) << i)) && L.leq(J[i], J[j]) &&
              !(mask & (std::size_t(1) << j)))
            upper = false;
      upper_sets += upper;
    }
    CHECK(upper_sets == static_cast<std::size_t>(L.size()));
  }
}

TEST_CASE("element cap fails fast") {
  CHECK_THROWS_WITH_AS(FiniteLattice::build({"a", "b", "c"}, {{0, 2}, {1, 2}}, 2),
                       doctest::Contains("SizeExceeded"), Error);
}

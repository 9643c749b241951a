#include <doctest.h>

#include "latcap/interval.hpp"
#include "latcap/rng.hpp"

using namespace latcap;

namespace {

IntervalUnion random_iu(Philox& rng, int denom = 8) {
  std::vector<IntervalUnion::Interval> parts;
  const int k = 1 + static_cast<int>(rng.next_u64() % 3);
  for (int i = 0; i < k; ++i) {
    Rational lo(rng.next_u64() % (denom + 1), denom);
    Rational hi(rng.next_u64() % (denom + 1), denom);
    if (hi < lo) std::swap(lo, hi);
    parts.push_back({lo, hi});
  }
  return IntervalUnion::from_intervals(std::move(parts));
}

}  // namespace

TEST_CASE("union keeps components apart and merges touching ones") {
  const IntervalUnion a = iu_union(IntervalUnion::of(0, 1), IntervalUnion::of(2, 3));
  CHECK(a.parts().size() == 2);
  const IntervalUnion b = iu_union(IntervalUnion::of(0, 1), IntervalUnion::of(1, 2));
  REQUIRE(b.parts().size() == 1);
  CHECK(b.parts()[0].lo == 0);
  CHECK(b.parts()[0].hi == 2);
  CHECK(iu_union(IntervalUnion(), IntervalUnion::of(0, 1)) == IntervalUnion::of(0, 1));
}

TEST_CASE("intersection clips, vanishes on disjoint inputs, and is idempotent") {
  CHECK(iu_intersect(IntervalUnion::of(0, 2), IntervalUnion::of(1, 3)) == IntervalUnion::of(1, 2));
  CHECK(iu_intersect(IntervalUnion::of(0, 1), IntervalUnion::of(2, 3)).empty());
  Philox rng(3, 0);
  for (int t = 0; t < 20; ++t) {
    const IntervalUnion a = random_iu(rng);
    CHECK(iu_intersect(a, a) == a);
  }
}

TEST_CASE("way-below is strict containment in the interior") {
  CHECK(iu_way_below(IntervalUnion::of(0, 1), IntervalUnion::of(rat(1, 4), rat(1, 2))));
  CHECK_FALSE(iu_way_below(IntervalUnion::of(0, 1), IntervalUnion::of(rat(0), rat(1, 2))));
  CHECK(iu_way_below(IntervalUnion(), IntervalUnion()));  // the top is isolated from below
  CHECK(iu_way_below(IntervalUnion::of(0, 1), IntervalUnion()));
}

TEST_CASE("way-below is multiplicative under unions") {
  Philox rng(5, 0);
  int seen = 0;
  for (int t = 0; t < 400; ++t) {
    const IntervalUnion e1 = random_iu(rng), e2 = random_iu(rng);
    const IntervalUnion f1 = random_iu(rng, 16), f2 = random_iu(rng, 16);
    if (!iu_way_below(e1, f1) || !iu_way_below(e2, f2)) continue;
    ++seen;
    CHECK(iu_way_below(iu_union(e1, e2), iu_union(f1, f2)));
  }
  CHECK(seen > 0);
}

TEST_CASE("interval unions form a distributive set algebra") {
  Philox rng(7, 0);
  for (int t = 0; t < 60; ++t) {
    const IntervalUnion a = random_iu(rng), b = random_iu(rng), c = random_iu(rng);
    CHECK(iu_intersect(a, iu_union(b, c)) ==
          iu_union(iu_intersect(a, b), iu_intersect(a, c)));
    CHECK(iu_union(a, iu_intersect(b, c)) ==
          iu_intersect(iu_union(a, b), iu_union(a, c)));
  }
}

TEST_CASE("measure evaluation is exact") {
  const MeasureModel unit = MeasureModel::lebesgue(0, 1);
  CHECK(measure_of(unit, IntervalUnion::of(rat(1, 4), rat(3, 4))) == rat(1, 2));
  CHECK(measure_of(unit, IntervalUnion()) == rat(0));

  const MeasureModel atom({{{rat(0), rat(1)}, rat(1)}}, {{rat(0), rat(1, 2)}});
  CHECK(measure_of(atom, IntervalUnion::of(rat(0), rat(1, 10))) == rat(1, 10) + rat(1, 2));

  CHECK_THROWS_WITH_AS(MeasureModel({{{rat(0), rat(1)}, rat(-1)}}, {}),
                       doctest::Contains("negative"), Error);
}

TEST_CASE("measures are modular on interval unions") {
  Philox rng(11, 0);
  const MeasureModel m({{{rat(0), rat(1, 2)}, rat(2)}, {{rat(1, 2), rat(1)}, rat(1, 3)}},
                       {{rat(1, 4), rat(1, 5)}, {rat(7, 8), rat(3)}});
  for (int t = 0; t < 40; ++t) {
    const IntervalUnion a = random_iu(rng), b = random_iu(rng);
    CHECK(measure_of(m, iu_union(a, b)) + measure_of(m, iu_intersect(a, b)) ==
          measure_of(m, a) + measure_of(m, b));
  }
}

TEST_CASE("normalization rejects inverted endpoints and sorts input") {
  CHECK_THROWS_AS(IntervalUnion::of(1, 0), Error);
  const IntervalUnion u = IntervalUnion::from_intervals(
      {{rat(1, 2), rat(3, 4)}, {rat(0), rat(1, 4)}, {rat(1, 8), rat(5, 8)}});
  REQUIRE(u.parts().size() == 1);
  CHECK(u.parts()[0].lo == rat(0));
  CHECK(u.parts()[0].hi == rat(3, 4));
  CHECK(u.contains_point(rat(1, 3)));
  CHECK_FALSE(u.contains_point(rat(7, 8)));
}

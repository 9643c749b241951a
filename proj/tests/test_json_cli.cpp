#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "latcap/json_io.hpp"
#include "latcap/suites.hpp"

using namespace latcap;
using namespace latcap::testing;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(LATCAP_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

const char* kTmp = "cli_tmp";

void write_file(const std::string& name, const std::string& body) {
  std::ofstream out(std::string(kTmp) + "/" + name);
  out << body;
}

struct TmpDir {
  TmpDir() { [[maybe_unused]] int rc = std::system((std::string("mkdir -p ") + kTmp).c_str()); }
};

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("3/6") == rat(1, 2));
  CHECK(parse_rational("-4/8") == rat(-1, 2));
  CHECK(parse_rational("7") == rat(7));
  CHECK(format_rational(rat(2, 4)) == "1/2");
  CHECK(format_rational(rat(5)) == "5");
  CHECK_THROWS_AS(parse_rational(""), Error);
  CHECK_THROWS_AS(parse_rational("x/y"), Error);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
}

TEST_CASE("lattice JSON round trip") {
  const FiniteLattice L = powerset_subset(2);
  const Json j = lattice_to_json(L);
  const FiniteLattice back = lattice_from_json(j);
  REQUIRE(back.size() == L.size());
  for (Elem x = 0; x < L.size(); ++x)
    for (Elem y = 0; y < L.size(); ++y) CHECK(back.leq(x, y) == L.leq(x, y));
  CHECK_THROWS_AS(lattice_from_json(Json::object()), Error);
}

TEST_CASE("set function JSON round trip") {
  const FiniteLattice B2 = powerset_subset(2);
  const SetFunction f = make_fn(B2, Direction::increasing,
                                {rat(1, 4), rat(1, 2), rat(1, 2), rat(1)});
  const SetFunction back = set_function_from_json(set_function_to_json(f));
  CHECK(back.direction() == Direction::increasing);
  for (Elem x = 0; x < B2.size(); ++x) CHECK(back.value(x) == f.value(x));
}

TEST_CASE("measure JSON round trip with element names") {
  const FiniteLattice B2 = powerset_subset(2);
  DiscreteMeasure m;
  m.kind = CarrierKind::filters;
  m.set(1, rat(1, 3));
  m.set(3, rat(2, 3));
  const Json j = measure_to_json(m, &B2);
  CHECK(j["weights"].contains("{a}"));
  const DiscreteMeasure back = measure_from_json(j, &B2);
  CHECK(back.kind == CarrierKind::filters);
  CHECK(back.at(1) == rat(1, 3));
  CHECK(back.at(3) == rat(2, 3));
}

TEST_CASE("adjoined-bottom and closed-set carriers round trip") {
  DiscreteMeasure m;
  m.kind = CarrierKind::elements;
  m.set(DiscreteMeasure::kAdjoinedBottom, rat(1, 4));
  const FiniteLattice B2 = powerset_subset(2);
  m.set(0, rat(3, 4));
  const Json j = measure_to_json(m, &B2);
  CHECK(j["weights"].contains("(bot)"));
  const DiscreteMeasure back = measure_from_json(j, &B2);
  CHECK(back.at(DiscreteMeasure::kAdjoinedBottom) == rat(1, 4));

  const FiniteSpaceModel model({"a", "b"});
  DiscreteMeasure grains;
  grains.kind = CarrierKind::closed_sets;
  grains.set(0b11, rat(1, 2));
  grains.set(0b00, rat(1, 2));
  const Json g = measure_to_json(grains, nullptr, &model);
  CHECK(g["weights"].contains("{a,b}"));
  CHECK(g["weights"].contains("{}"));
  const DiscreteMeasure gback = measure_from_json(g, nullptr, &model);
  CHECK(gback.at(0b11) == rat(1, 2));
  CHECK(gback.at(0b00) == rat(1, 2));
}

TEST_CASE("an empty suite list still yields a valid report") {
  SuiteConfig cfg;
  const Json j = suites_report({}, cfg);
  CHECK(j["pass"] == true);
  CHECK(j["suites"].is_array());
  CHECK(j["suites"].empty());
}

TEST_CASE("interval and measure-model JSON round trips") {
  const IntervalUnion u = iu_union(IntervalUnion::of(rat(0), rat(1, 2)),
                                   IntervalUnion::of(rat(3, 4), rat(1)));
  CHECK(interval_union_from_json(interval_union_to_json(u)) == u);

  const MeasureModel m({{{rat(0), rat(1)}, rat(2)}}, {{rat(1, 2), rat(1, 8)}});
  const MeasureModel back = measure_model_from_json(measure_model_to_json(m));
  CHECK(measure_of(back, IntervalUnion::of(0, 1)) == measure_of(m, IntervalUnion::of(0, 1)));
  CHECK(measure_of(back, IntervalUnion::point(rat(1, 2))) == rat(1, 8));
}

TEST_CASE("cli: represent inverts the uniform-singleton avoidance") {
  TmpDir tmp;
  write_file("lat.json", R"({"elements":["{}","{a}","{b}","{a,b}"],
    "leq":[[0,1],[0,2],[0,3],[1,3],[2,3]]})");
  // Reverse-inclusion avoidance written over the abstract lattice: the top
  // is {} and carries value 1.
  write_file("phi.json", R"({"lattice":"lat.json","direction":"inc",
    "values":{"{}":"0","{a}":"1/2","{b}":"1/2","{a,b}":"1"}})");
  REQUIRE(run_cli(std::string("represent --in ") + kTmp +
                  "/phi.json --mode monotone --out " + kTmp + "/mu.json --transcript " + kTmp +
                  "/tr.json") == 0);
  const Json mu = load_json_file(std::string(kTmp) + "/mu.json");
  CHECK(mu["carrier_kind"] == "filters");
  CHECK(mu["weights"]["{a}"] == "1/2");
  CHECK(mu["weights"]["{b}"] == "1/2");
  const Json tr = load_json_file(std::string(kTmp) + "/tr.json");
  for (const auto& row : tr["identity"]) CHECK(row["equal"] == true);
}

TEST_CASE("cli: classify reports holds and witnesses") {
  TmpDir tmp;
  write_file("lat2.json", R"({"elements":["{}","{a}","{b}","{a,b}"],
    "leq":[[0,1],[0,2],[0,3],[1,3],[2,3]]})");
  write_file("bad.json", R"({"lattice":"lat2.json","direction":"inc",
    "values":{"{}":"0","{a}":"1","{b}":"1","{a,b}":"1"}})");
  REQUIRE(run_cli(std::string("classify --in ") + kTmp +
                  "/bad.json --class completely_monotone --out " + kTmp + "/rep.json") == 0);
  const Json rep = load_json_file(std::string(kTmp) + "/rep.json");
  CHECK(rep["holds"] == false);
  CHECK(rep["witness"]["x"] == "{a,b}");
  CHECK(rep["witness"]["value"] == "-1");
}

TEST_CASE("cli: simulate is deterministic and honors thresholds") {
  TmpDir tmp;
  write_file("model.json", R"({"kind":"compound","ground":["a","b"],
    "grains":{"{a}":"7/10","{a,b}":"1/5"}})");
  write_file("q.json", R"({"members":["a"]})");
  REQUIRE(run_cli(std::string("simulate --model ") + kTmp + "/model.json --q " + kTmp +
                  "/q.json --n 5000 --seed 7 --out " + kTmp + "/r1.json") == 0);
  REQUIRE(run_cli(std::string("simulate --model ") + kTmp + "/model.json --q " + kTmp +
                  "/q.json --n 5000 --seed 7 --out " + kTmp + "/r2.json") == 0);
  CHECK(slurp(std::string(kTmp) + "/r1.json") == slurp(std::string(kTmp) + "/r2.json"));
  const Json r = load_json_file(std::string(kTmp) + "/r1.json");
  CHECK(r["theory"] == "exp(-9/10)");
  CHECK(r["pass"] == true);

  // An absurd threshold turns the same run into a check failure (exit 1).
  CHECK(run_cli(std::string("simulate --model ") + kTmp + "/model.json --q " + kTmp +
                "/q.json --n 5000 --seed 7 --z 0.000001") == 1);

  // Per-batch counts: header plus one row per batch, totals matching n.
  REQUIRE(run_cli(std::string("simulate --model ") + kTmp + "/model.json --q " + kTmp +
                  "/q.json --n 5000 --seed 7 --out " + kTmp + "/r3.json --csv " + kTmp +
                  "/batches.csv") == 0);
  std::istringstream csv(slurp(std::string(kTmp) + "/batches.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "batch,hits,size");
  long rows = 0, total_size = 0;
  while (std::getline(csv, line) && !line.empty()) {
    ++rows;
    total_size += std::stol(line.substr(line.rfind(',') + 1));
  }
  CHECK(rows == 100);
  CHECK(total_size == 5000);
}

TEST_CASE("cli: simulate drives the Poisson point model") {
  TmpDir tmp;
  write_file("pmodel.json", R"({"kind":"poisson",
    "lambda":{"pieces":[[["0","1"],"1"]],"atoms":{}},
    "window":{"intervals":[["0","1"]]}})");
  write_file("pq.json", R"({"intervals":[["0","1/2"]]})");
  REQUIRE(run_cli(std::string("simulate --model ") + kTmp + "/pmodel.json --q " + kTmp +
                  "/pq.json --n 20000 --seed 11 --out " + kTmp + "/pr.json") == 0);
  const Json r = load_json_file(std::string(kTmp) + "/pr.json");
  CHECK(r["theory"] == "exp(-1/2)");
  CHECK(r["pass"] == true);

  REQUIRE(run_cli(std::string("simulate --model ") + kTmp + "/pmodel.json --functional hitting" +
                  " --q " + kTmp + "/pq.json --n 20000 --seed 11 --out " + kTmp +
                  "/ph.json") == 0);
  const Json h = load_json_file(std::string(kTmp) + "/ph.json");
  CHECK(h["theory"] == "1-exp(-1/2)");
  CHECK(h["pass"] == true);
}

TEST_CASE("cli: lfv certificate on an interval window") {
  TmpDir tmp;
  write_file("iphi.json", R"({"kind":"scaled_exponential",
    "nu":{"pieces":[[["0","1"],"1/50"]],"atoms":{}},"base":"1/2","unit":"1"})");
  write_file("iwin.json", R"({"intervals":[["0","1"]]})");
  REQUIRE(run_cli(std::string("lfv --phi ") + kTmp + "/iphi.json --window " + kTmp +
                  "/iwin.json --delta 1/20 --nmax 8 --budget 12 --out " + kTmp +
                  "/icert.json") == 0);
  const Json cert = load_json_file(std::string(kTmp) + "/icert.json");
  // Ladder families are a labeled generator, never a universal quantifier.
  CHECK(cert["verdict"] == "inconclusive");
  CHECK(cert["family_exhaustive"] == false);
  for (const auto& pc : cert["per_cover"]) CHECK(pc["pass"] == true);
}

TEST_CASE("cli: lfv certificate on a finite Poisson-type model") {
  TmpDir tmp;
  write_file("phi_lfv.json", R"({"kind":"compound_avoidance","ground":["a","b","c"],
    "factors":{"{a}":"199/200","{b}":"99/100","{c}":"199/200"}})");
  write_file("win.json", R"({"members":["a","b","c"]})");
  REQUIRE(run_cli(std::string("lfv --phi ") + kTmp + "/phi_lfv.json --window " + kTmp +
                  "/win.json --delta 1/20 --nmax 20 --budget 300 --out " + kTmp +
                  "/cert.json") == 0);
  const Json cert = load_json_file(std::string(kTmp) + "/cert.json");
  CHECK(cert["verdict"] == "pass");
  CHECK(cert["family_exhaustive"] == true);

  write_file("solid.json", R"({"kind":"deterministic_grain","ground":["a","b","c"],
    "grain":["a","b","c"]})");
  CHECK(run_cli(std::string("lfv --phi ") + kTmp + "/solid.json --window " + kTmp +
                "/win.json --delta 1/20 --nmax 5 --budget 300 --out " + kTmp +
                "/cert2.json") == 1);
  const Json cert2 = load_json_file(std::string(kTmp) + "/cert2.json");
  CHECK(cert2["verdict"] == "fail");
  CHECK(cert2["counterexample"]["lhs"] == 0.0);
}

TEST_CASE("cli: suite exit codes and seed requirements") {
  TmpDir tmp;
  CHECK(run_cli("suite --suites mobius_roundtrip") == 0);
  CHECK(run_cli("suite --suites poisson_mc") == 2);  // seed required
  CHECK(run_cli("suite --suites nonsense") == 2);
  CHECK(run_cli(std::string("suite --suites partition_lemma --format csv --output ") + kTmp +
                "/suite.csv") == 0);
  const std::string csv = slurp(std::string(kTmp) + "/suite.csv");
  CHECK(csv.find("partition_lemma") != std::string::npos);
}

TEST_CASE("structure reports serialize with names") {
  const FiniteLattice B2 = powerset_subset(2);
  const Json j = structure_report_to_json(structure_report(B2), B2);
  CHECK(j["is_distributive"] == true);
  CHECK(j["primes"] == Json::array({"{a}", "{b}"}));

  const FiniteLattice M3 = FiniteLattice::build(
      {"0", "x", "y", "z", "1"}, {{0, 1}, {0, 2}, {0, 3}, {1, 4}, {2, 4}, {3, 4}});
  const Json m = structure_report_to_json(structure_report(M3), M3);
  CHECK(m["is_distributive"] == false);
  CHECK(m.contains("distributivity_witness"));
}

TEST_CASE("cli: representation of an unclassified function is a check failure") {
  TmpDir tmp;
  write_file("lat3.json", R"({"elements":["{}","{a}","{b}","{a,b}"],
    "leq":[[0,1],[0,2],[0,3],[1,3],[2,3]]})");
  write_file("notcm.json", R"({"lattice":"lat3.json","direction":"inc",
    "values":{"{}":"0","{a}":"1","{b}":"1","{a,b}":"1"}})");
  CHECK(run_cli(std::string("represent --in ") + kTmp + "/notcm.json --mode monotone") == 1);
}

TEST_CASE("cli: malformed inputs exit with the config code") {
  TmpDir tmp;
  write_file("broken.json", "{ not json");
  CHECK(run_cli(std::string("classify --in ") + kTmp +
                "/broken.json --class completely_monotone") == 2);
  CHECK(run_cli("represent --in does_not_exist.json") == 2);
}

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <iostream>

#include "latcap/json_io.hpp"
#include "latcap/suites.hpp"

namespace {

using namespace latcap;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitConfigError = 2;

std::string dir_of(const std::string& path) {
  const auto slash = path.find_last_of('/');
  return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
}

void emit(const Json& j, const std::string& out) {
  if (out.empty())
    std::cout << j.dump(2) << "\n";
  else
    write_json_file(out, j);
}

int cmd_represent(const std::string& in, const std::string& mode_name, const std::string& out,
                  const std::string& transcript) {
  const SetFunction f = set_function_from_json(load_json_file(in), dir_of(in));
  const RepresentMode mode = represent_mode_from(mode_name);
  const DiscreteMeasure m = choquet_represent(f, mode);
  emit(measure_to_json(m, &f.lattice()), out);
  if (!transcript.empty()) {
    Json t;
    t["mode"] = mode_name;
    Json rows = Json::array();
    for (Elem x = 0; x < f.lattice().size(); ++x) {
      Json row;
      row["x"] = f.lattice().name(x);
      row["f"] = format_rational(f.value(x));
      row["measure_side"] = format_rational(evaluate_mode(f.lattice(), mode, m, x));
      row["equal"] = evaluate_mode(f.lattice(), mode, m, x) == f.value(x);
      rows.push_back(std::move(row));
    }
    t["identity"] = std::move(rows);
    write_json_file(transcript, t);
  }
  return kExitOk;
}

int cmd_classify(const std::string& in, const std::string& cls, int k, const std::string& out) {
  const SetFunction f = set_function_from_json(load_json_file(in), dir_of(in));
  ClassReport rep;
  if (cls == "valuation")
    rep = is_valuation(f);
  else if (cls == "exponential_valuation")
    rep = is_exponential_valuation(f);
  else if (cls == "k_valuation")
    rep = is_k_valuation(f, k);
  else {
    FnClass fc;
    if (cls == "completely_monotone")
      fc = FnClass::completely_monotone;
    else if (cls == "completely_alternating")
      fc = FnClass::completely_alternating;
    else if (cls == "completely_vee_monotone")
      fc = FnClass::completely_vee_monotone;
    else if (cls == "completely_vee_alternating")
      fc = FnClass::completely_vee_alternating;
    else
      fail(errc::config_error, "unknown class '" + cls + "'");
    rep = classify(f, fc);
  }
  emit(class_report_to_json(rep, f.lattice()), out);
  return kExitOk;
}

int cmd_simulate(const std::string& model_path, const std::string& functional,
                 const std::string& q_path, long n, std::uint64_t seed, double z,
                 const std::string& out, const std::string& csv_path) {
  const Json model = load_json_file(model_path);
  const Functional fn = functional_from(functional);
  SimReport rep;
  std::vector<long> batches;
  std::vector<long>* batches_ptr = csv_path.empty() ? nullptr : &batches;
  const long batch_size = std::max<long>(1, n / 100);
  const std::string kind = model.value("kind", "");
  if (kind == "poisson") {
    const MeasureModel lambda = measure_model_from_json(model.at("lambda"));
    const IntervalUnion window = interval_union_from_json(model.at("window"));
    const IntervalUnion q = interval_union_from_json(load_json_file(q_path));
    rep = estimate_poisson_functional(lambda, window, fn, q, n, seed, 0, batches_ptr, batch_size);
  } else if (kind == "compound") {
    std::vector<std::string> ground;
    for (const auto& g : model.at("ground")) ground.push_back(g.get<std::string>());
    const FiniteSpaceModel space(ground);
    DiscreteMeasure grains;
    grains.kind = CarrierKind::closed_sets;
    for (const auto& [key, val] : model.at("grains").items()) {
      Json mjson;
      mjson["carrier_kind"] = "closed_sets";
      mjson["weights"] = Json::object({{key, val}});
      const DiscreteMeasure one = measure_from_json(mjson, nullptr, &space);
      for (const auto& [mask, w] : one.weights) grains.set(mask, grains.at(mask) + w);
    }
    const Json qj = load_json_file(q_path);
    std::vector<std::string> members;
    for (const auto& e : qj.at("members")) members.push_back(e.get<std::string>());
    rep = estimate_compound_functional(grains, fn, space.mask_of_names(members), n, seed, 0,
                                       batches_ptr, batch_size);
  } else {
    fail(errc::config_error, "model kind must be 'poisson' or 'compound'");
  }
  Json j = sim_report_to_json(rep);
  j["z_threshold"] = z;
  j["pass"] = z_compare(rep, z);
  emit(j, out);
  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) fail(errc::io_error, "cannot open '" + csv_path + "'");
    csv << "batch,hits,size\n";
    for (std::size_t b = 0; b < batches.size(); ++b) {
      const long size = std::min<long>(batch_size, n - static_cast<long>(b) * batch_size);
      csv << b << "," << batches[b] << "," << size << "\n";
    }
  }
  return j["pass"].get<bool>() ? kExitOk : kExitCheckFailure;
}

Evaluator<long> finite_phi_from_json(const Json& j, const FiniteSpaceModel& space) {
  const std::string kind = j.value("kind", "");
  if (kind == "compound_avoidance") {
    std::vector<std::pair<long, Rational>> factors;
    for (const auto& [key, val] : j.at("factors").items()) {
      Json mj;
      mj["carrier_kind"] = "closed_sets";
      mj["weights"] = Json::object({{key, val}});
      for (const auto& [mask, w] : measure_from_json(mj, nullptr, &space).weights)
        factors.emplace_back(mask, w);
    }
    return compound_avoidance_evaluator(std::move(factors));
  }
  if (kind == "deterministic_grain") {
    std::vector<std::string> members;
    for (const auto& e : j.at("grain")) members.push_back(e.get<std::string>());
    return deterministic_grain_evaluator(space.mask_of_names(members));
  }
  fail(errc::config_error, "unknown finite phi kind '" + kind + "'");
}

int cmd_lfv(const std::string& phi_path, const std::string& window_path, const std::string& delta,
            int nmax, int budget, const std::string& out) {
  const Json phi_json = load_json_file(phi_path);
  const Json window_json = load_json_file(window_path);
  const Rational d = parse_rational(delta);
  LfvCertificate cert;
  if (window_json.contains("members")) {
    std::vector<std::string> ground;
    for (const auto& g : phi_json.at("ground")) ground.push_back(g.get<std::string>());
    const FiniteSpaceModel space(ground);
    std::vector<std::string> members;
    for (const auto& e : window_json.at("members")) members.push_back(e.get<std::string>());
    const long window = space.mask_of_names(members);
    bool exhaustive = false;
    const auto covers = finite_cover_family(window, budget, &exhaustive);
    cert = lfv_certificate<long>(finite_phi_from_json(phi_json, space), covers, d, nmax, exhaustive);
  } else {
    const IntervalUnion window = interval_union_from_json(window_json);
    Evaluator<IntervalUnion> phi;
    const std::string kind = phi_json.value("kind", "");
    if (kind == "scaled_exponential")
      phi = scaled_exponential_evaluator(measure_model_from_json(phi_json.at("nu")),
                                         parse_rational(phi_json.at("base").get<std::string>()),
                                         parse_rational(phi_json.at("unit").get<std::string>()));
    else if (kind == "deterministic_grain")
      phi = deterministic_grain_evaluator(interval_union_from_json(phi_json.at("grain")));
    else
      fail(errc::config_error, "unknown interval phi kind '" + kind + "'");
    cert = lfv_certificate<IntervalUnion>(phi, interval_cover_family(window, budget), d, nmax, false);
  }
  emit(lfv_certificate_to_json(cert), out);
  return cert.verdict == LfvVerdict::fail ? kExitCheckFailure : kExitOk;
}

int cmd_suite(std::vector<std::string> suites, bool seed_set, std::uint64_t seed, double z,
              bool bonferroni, long n, const std::string& output, const std::string& format) {
  SuiteConfig cfg;
  if (seed_set) cfg.seed = seed;
  cfg.z_threshold = z;
  cfg.bonferroni = bonferroni;
  cfg.mc_n = n;
  if (suites.empty()) suites = all_suite_names();
  for (const std::string& s : suites) {
    if (std::find(all_suite_names().begin(), all_suite_names().end(), s) == all_suite_names().end())
      fail(errc::config_error, "unknown suite '" + s + "'");
    if (suite_needs_seed(s) && !cfg.seed)
      fail(errc::config_error, "suite '" + s + "' needs --seed");
  }
  std::vector<SuiteResult> results;
  for (const std::string& s : suites) results.push_back(run_suite(s, cfg));
  const Json report = suites_report(results, cfg);
  if (format == "csv") {
    const std::string csv = suites_report_csv(results);
    if (output.empty())
      std::cout << csv;
    else {
      std::ofstream f(output);
      if (!f) fail(errc::io_error, "cannot open '" + output + "'");
      f << csv;
    }
  } else {
    emit(report, output);
  }
  // Wall-clock timings stay on stderr so reports are byte-reproducible.
  for (const SuiteResult& r : results) {
    std::cerr << (r.pass ? "[PASS] " : "[FAIL] ") << r.suite;
    std::cerr << " (" << std::fixed << std::setprecision(2) << r.seconds << " s)\n";
  }
  return report["pass"].get<bool>() ? kExitOk : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact lattice Choquet machinery with random-set samplers"};
  app.require_subcommand(1);

  auto* rep = app.add_subcommand("represent", "Invert a classified set function into its measure");
  std::string rep_in, rep_mode = "monotone", rep_out, rep_transcript;
  rep->add_option("--in", rep_in, "set function JSON")->required();
  rep->add_option("--mode", rep_mode, "monotone|alternating|containment|vee_alternating");
  rep->add_option("--out", rep_out, "measure JSON output (stdout when omitted)");
  rep->add_option("--transcript", rep_transcript, "verification transcript JSON");

  auto* cls = app.add_subcommand("classify", "Evaluate a monotonicity/valuation class");
  std::string cls_in, cls_name, cls_out;
  int cls_k = 1;
  cls->add_option("--in", cls_in, "set function JSON")->required();
  cls->add_option("--class", cls_name, "class id")->required();
  cls->add_option("--k", cls_k, "order for k_valuation");
  cls->add_option("--out", cls_out, "report output");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo hitting/avoidance estimate");
  std::string sim_model, sim_fn = "avoidance", sim_q, sim_out;
  long sim_n = 100000;
  std::uint64_t sim_seed = 0;
  bool sim_seed_set = false;
  double sim_z = 3.0;
  sim->add_option("--model", sim_model, "model JSON (poisson or compound)")->required();
  sim->add_option("--functional", sim_fn, "hitting|avoidance");
  sim->add_option("--q", sim_q, "query set JSON")->required();
  sim->add_option("--n", sim_n, "replications");
  sim->add_option("--seed", sim_seed, "RNG seed")->required()->each([&](const std::string&) {
    sim_seed_set = true;
  });
  sim->add_option("--z", sim_z, "z threshold");
  sim->add_option("--out", sim_out, "report output");
  std::string sim_csv;
  sim->add_option("--csv", sim_csv, "per-batch hit counts CSV");

  auto* lfvc = app.add_subcommand("lfv", "Locally-finite-valuation certificate");
  std::string lfv_phi, lfv_window, lfv_delta = "1/20", lfv_out;
  int lfv_nmax = 20, lfv_budget = 256;
  lfvc->add_option("--phi", lfv_phi, "exact evaluator JSON")->required();
  lfvc->add_option("--window", lfv_window, "window JSON")->required();
  lfvc->add_option("--delta", lfv_delta, "slack p/q");
  lfvc->add_option("--nmax", lfv_nmax, "max antichain order");
  lfvc->add_option("--budget", lfv_budget, "cover member budget");
  lfvc->add_option("--out", lfv_out, "certificate output");

  auto* ste = app.add_subcommand("suite", "Run verification suites");
  std::vector<std::string> ste_suites;
  std::uint64_t ste_seed = 0;
  bool ste_seed_set = false;
  double ste_z = 3.0;
  long ste_n = 100000;
  std::string ste_out, ste_format = "json";
  ste->add_option("--suites", ste_suites, "suite names (default: all)")->delimiter(',');
  ste->add_option("--seed", ste_seed, "RNG seed (required for sampling suites)")
      ->each([&](const std::string&) { ste_seed_set = true; });
  ste->add_option("--z", ste_z, "z threshold");
  bool ste_bonferroni = false;
  ste->add_flag("--bonferroni", ste_bonferroni, "correct the threshold across a suite's comparisons");
  ste->add_option("--n", ste_n, "Monte Carlo replications per estimate");
  ste->add_option("--output", ste_out, "report path (stdout when omitted)");
  ste->add_option("--format", ste_format, "json|csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (rep->parsed()) return cmd_represent(rep_in, rep_mode, rep_out, rep_transcript);
    if (cls->parsed()) return cmd_classify(cls_in, cls_name, cls_k, cls_out);
    if (sim->parsed())
      return cmd_simulate(sim_model, sim_fn, sim_q, sim_n, sim_seed, sim_z, sim_out, sim_csv);
    if (lfvc->parsed()) return cmd_lfv(lfv_phi, lfv_window, lfv_delta, lfv_nmax, lfv_budget, lfv_out);
    if (ste->parsed())
      return cmd_suite(ste_suites, ste_seed_set, ste_seed, ste_z, ste_bonferroni, ste_n, ste_out,
                       ste_format);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == errc::config_error || e.code() == errc::bad_input ||
                   e.code() == errc::io_error
               ? kExitConfigError
               : kExitCheckFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
  return kExitConfigError;
}

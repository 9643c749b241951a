#include "latcap/json_io.hpp"

#include <fstream>

namespace latcap {

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io_error, "cannot open '" + path + "'");
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(errc::bad_input, "malformed JSON in '" + path + "': " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) fail(errc::io_error, "cannot open '" + path + "' for writing");
  out << j.dump(2) << "\n";
  if (!out) fail(errc::io_error, "short write to '" + path + "'");
}

FiniteLattice lattice_from_json(const Json& j) {
  if (!j.contains("elements") || !j["elements"].is_array())
    fail(errc::bad_input, "lattice JSON needs an 'elements' array");
  std::vector<std::string> names;
  for (const auto& e : j["elements"]) names.push_back(e.get<std::string>());
  std::vector<std::pair<Elem, Elem>> pairs;
  if (j.contains("leq"))
    for (const auto& p : j["leq"]) {
      if (!p.is_array() || p.size() != 2) fail(errc::bad_input, "'leq' entries are [i,j] pairs");
      pairs.emplace_back(p[0].get<int>(), p[1].get<int>());
    }
  return FiniteLattice::build(std::move(names), pairs);
}

Json lattice_to_json(const FiniteLattice& L) {
  Json j;
  j["elements"] = Json::array();
  for (Elem x = 0; x < L.size(); ++x) j["elements"].push_back(L.name(x));
  j["leq"] = Json::array();
  for (Elem x = 0; x < L.size(); ++x)
    for (Elem y = 0; y < L.size(); ++y)
      if (x != y && L.leq(x, y)) j["leq"].push_back(Json::array({x, y}));
  return j;
}

SetFunction set_function_from_json(const Json& j, const std::string& base_dir) {
  if (!j.contains("lattice")) fail(errc::bad_input, "set function JSON needs 'lattice'");
  LatticePtr lat;
  if (j["lattice"].is_string()) {
    std::string path = j["lattice"].get<std::string>();
    if (!base_dir.empty() && !path.empty() && path[0] != '/') path = base_dir + "/" + path;
    lat = std::make_shared<FiniteLattice>(lattice_from_json(load_json_file(path)));
  } else {
    lat = std::make_shared<FiniteLattice>(lattice_from_json(j["lattice"]));
  }
  const std::string dir = j.value("direction", "");
  Direction d;
  if (dir == "inc")
    d = Direction::increasing;
  else if (dir == "dec")
    d = Direction::decreasing;
  else
    fail(errc::bad_input, "direction must be 'inc' or 'dec'");
  if (!j.contains("values") || !j["values"].is_object())
    fail(errc::bad_input, "set function JSON needs a 'values' object");
  std::vector<Rational> values(lat->size(), Rational(-1));
  for (const auto& [key, val] : j["values"].items())
    values[lat->index_of(key)] = parse_rational(val.get<std::string>());
  for (Elem x = 0; x < lat->size(); ++x)
    if (values[x] == -1) fail(errc::bad_input, "missing value for element '" + lat->name(x) + "'");
  return SetFunction::make(std::move(lat), d, std::move(values));
}

Json set_function_to_json(const SetFunction& f) {
  Json j;
  j["lattice"] = lattice_to_json(f.lattice());
  j["direction"] = f.direction() == Direction::increasing ? "inc" : "dec";
  Json values = Json::object();
  for (Elem x = 0; x < f.lattice().size(); ++x)
    values[f.lattice().name(x)] = format_rational(f.value(x));
  j["values"] = std::move(values);
  return j;
}

namespace {

std::string carrier_id_name(long id, CarrierKind kind, const FiniteLattice* lattice,
                            const FiniteSpaceModel* model) {
  if (id == DiscreteMeasure::kAdjoinedBottom) return "(bot)";
  if (kind == CarrierKind::closed_sets)
    return model ? model->set_name(id) : std::to_string(id);
  return lattice ? lattice->name(static_cast<Elem>(id)) : std::to_string(id);
}

}  // namespace

Json measure_to_json(const DiscreteMeasure& m, const FiniteLattice* lattice,
                     const FiniteSpaceModel* model) {
  Json j;
  j["carrier_kind"] = carrier_kind_name(m.kind);
  if (m.allow_signed) j["signed"] = true;
  Json w = Json::object();
  for (const auto& [id, q] : m.weights)
    w[carrier_id_name(id, m.kind, lattice, model)] = format_rational(q);
  j["weights"] = std::move(w);
  return j;
}

DiscreteMeasure measure_from_json(const Json& j, const FiniteLattice* lattice,
                                  const FiniteSpaceModel* model) {
  DiscreteMeasure m;
  m.kind = carrier_kind_from(j.value("carrier_kind", "elements"));
  m.allow_signed = j.value("signed", false);
  if (!j.contains("weights") || !j["weights"].is_object())
    fail(errc::bad_input, "measure JSON needs a 'weights' object");
  for (const auto& [key, val] : j["weights"].items()) {
    long id;
    if (key == "(bot)") {
      id = DiscreteMeasure::kAdjoinedBottom;
    } else if (m.kind == CarrierKind::closed_sets) {
      if (model && !key.empty() && key[0] == '{') {
        std::vector<std::string> names;
        std::string body = key.substr(1, key.size() - 2);
        std::size_t pos = 0;
        while (pos < body.size()) {
          std::size_t comma = body.find(',', pos);
          if (comma == std::string::npos) comma = body.size();
          names.push_back(body.substr(pos, comma - pos));
          pos = comma + 1;
        }
        id = model->mask_of_names(names);
      } else {
        id = std::stol(key);
      }
    } else if (lattice) {
      id = lattice->index_of(key);
    } else {
      id = std::stol(key);
    }
    m.set(id, parse_rational(val.get<std::string>()));
  }
  m.validate();
  return m;
}

IntervalUnion interval_union_from_json(const Json& j) {
  const Json& arr = j.is_array() ? j : j.at("intervals");
  std::vector<IntervalUnion::Interval> parts;
  for (const auto& p : arr) {
    if (!p.is_array() || p.size() != 2) fail(errc::bad_input, "interval entries are [lo, hi]");
    parts.push_back({parse_rational(p[0].get<std::string>()), parse_rational(p[1].get<std::string>())});
  }
  return IntervalUnion::from_intervals(std::move(parts));
}

Json interval_union_to_json(const IntervalUnion& u) {
  Json arr = Json::array();
  for (const auto& p : u.parts())
    arr.push_back(Json::array({format_rational(p.lo), format_rational(p.hi)}));
  Json j;
  j["intervals"] = std::move(arr);
  return j;
}

MeasureModel measure_model_from_json(const Json& j) {
  std::vector<MeasureModel::Piece> pieces;
  if (j.contains("pieces"))
    for (const auto& p : j["pieces"]) {
      if (!p.is_array() || p.size() != 2 || !p[0].is_array() || p[0].size() != 2)
        fail(errc::bad_input, "density pieces are [[lo,hi], height]");
      pieces.push_back({{parse_rational(p[0][0].get<std::string>()),
                         parse_rational(p[0][1].get<std::string>())},
                        parse_rational(p[1].get<std::string>())});
    }
  std::vector<std::pair<Rational, Rational>> atoms;
  if (j.contains("atoms"))
    for (const auto& [pos, mass] : j["atoms"].items())
      atoms.emplace_back(parse_rational(pos), parse_rational(mass.get<std::string>()));
  return MeasureModel(std::move(pieces), std::move(atoms));
}

Json measure_model_to_json(const MeasureModel& m) {
  Json j;
  j["pieces"] = Json::array();
  for (const auto& p : m.pieces())
    j["pieces"].push_back(Json::array(
        {Json::array({format_rational(p.where.lo), format_rational(p.where.hi)}), format_rational(p.height)}));
  Json atoms = Json::object();
  for (const auto& [pos, mass] : m.atoms()) atoms[format_rational(pos)] = format_rational(mass);
  j["atoms"] = std::move(atoms);
  return j;
}

Json structure_report_to_json(const StructureReport& r, const FiniteLattice& L) {
  Json j;
  j["is_distributive"] = r.is_distributive;
  Json irr = Json::array(), primes = Json::array();
  for (Elem e : r.irreducibles) irr.push_back(L.name(e));
  for (Elem e : r.primes) primes.push_back(L.name(e));
  j["irreducibles"] = std::move(irr);
  j["primes"] = std::move(primes);
  j["bottom_is_irreducible"] = r.bottom_is_irreducible;
  if (r.distributivity_witness) {
    Json w;
    w["x"] = L.name(r.distributivity_witness->first);
    Json a = Json::array();
    for (Elem e : r.distributivity_witness->second) a.push_back(L.name(e));
    w["A"] = std::move(a);
    j["distributivity_witness"] = std::move(w);
  }
  return j;
}

Json class_report_to_json(const ClassReport& r, const FiniteLattice& L) {
  Json j;
  j["class"] = r.query.name();
  j["holds"] = r.holds;
  if (r.witness) {
    Json w;
    Json a = Json::array();
    for (Elem e : r.witness->index_set) a.push_back(L.name(e));
    w["A"] = std::move(a);
    w["x"] = L.name(r.witness->at);
    w["value"] = format_rational(r.witness->value);
    j["witness"] = std::move(w);
  }
  if (r.strictly_positive.has_value()) {
    j["strictly_positive"] = *r.strictly_positive;
    if (r.positivity_witness) j["positivity_witness"] = L.name(*r.positivity_witness);
  }
  return j;
}

Json levy_report_to_json(const LevyReport& r, const FiniteLattice& L) {
  Json j;
  switch (r.verdict) {
    case LevyReport::Verdict::divisible: j["verdict"] = "divisible"; break;
    case LevyReport::Verdict::not_divisible: j["verdict"] = "not_divisible"; break;
    case LevyReport::Verdict::indeterminate: j["verdict"] = "indeterminate"; break;
  }
  j["support_is_filter"] = r.support_is_filter;
  if (r.nonfilter_witness)
    j["nonfilter_witness"] =
        Json::array({L.name(r.nonfilter_witness->first), L.name(r.nonfilter_witness->second)});
  if (r.root_witness) {
    Json w;
    w["n"] = r.root_witness->n;
    Json a = Json::array();
    for (Elem e : r.root_witness->index_set) a.push_back(L.name(e));
    w["A"] = std::move(a);
    w["x"] = L.name(r.root_witness->at);
    j["root_witness"] = std::move(w);
  }
  j["n_checked"] = r.n_checked;
  if (!r.exponent.empty()) {
    Json e = Json::object();
    for (Elem x = 0; x < L.size(); ++x)
      if (std::isfinite(r.exponent[x]))
        e[L.name(x)] = r.exponent[x];
      else
        e[L.name(x)] = "inf";
    j["exponent"] = std::move(e);
  }
  return j;
}

Json sim_report_to_json(const SimReport& r) {
  Json j;
  j["functional"] = r.functional;
  j["estimate"] = r.estimate;
  j["std_error"] = r.std_error;
  j["theory"] = r.theory.to_string();
  j["theory_value"] = r.theory.to_double();
  j["z"] = r.z;
  j["n"] = r.n;
  j["seed"] = r.seed;
  return j;
}

Json lfv_certificate_to_json(const LfvCertificate& c) {
  Json j;
  j["delta"] = format_rational(c.delta);
  j["verdict"] = lfv_verdict_name(c.verdict);
  j["n_used"] = c.n_used;
  j["family_exhaustive"] = c.family_exhaustive;
  Json pc = Json::array();
  for (const auto& r : c.per_cover) {
    Json e;
    e["cover"] = r.cover;
    e["lhs"] = r.lhs;
    e["n_used"] = r.n_used;
    e["pass"] = r.pass;
    pc.push_back(std::move(e));
  }
  j["per_cover"] = std::move(pc);
  if (c.counterexample) {
    Json e;
    e["cover"] = c.counterexample->cover;
    e["lhs"] = c.counterexample->lhs;
    j["counterexample"] = std::move(e);
  }
  return j;
}

}  // namespace latcap

#pragma once

#include <json.hpp>

#include "latcap/choquet.hpp"
#include "latcap/interval.hpp"
#include "latcap/levy.hpp"
#include "latcap/lfv.hpp"
#include "latcap/sampling.hpp"
#include "latcap/setfun.hpp"

namespace latcap {

// All emitted documents use ordered_json: stable field order, so identical
// inputs (and seeds) give byte-identical reports.
using Json = nlohmann::ordered_json;

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

// {"elements": [...], "leq": [[i,j], ...]}
FiniteLattice lattice_from_json(const Json& j);
Json lattice_to_json(const FiniteLattice& L);

// {"lattice": <inline lattice or path string>, "direction": "inc|dec",
//  "values": {"<element>": "p/q"}}
SetFunction set_function_from_json(const Json& j, const std::string& base_dir = "");
Json set_function_to_json(const SetFunction& f);

// {"carrier_kind": "...", "weights": {"<id>": "p/q"}}; element ids are
// element names when a lattice is given, "(bot)" is the adjoined bottom,
// closed-set ids are decimal bitmasks (or set names under a model).
Json measure_to_json(const DiscreteMeasure& m, const FiniteLattice* lattice = nullptr,
                     const FiniteSpaceModel* model = nullptr);
DiscreteMeasure measure_from_json(const Json& j, const FiniteLattice* lattice = nullptr,
                                  const FiniteSpaceModel* model = nullptr);

// {"intervals": [["p/q","r/s"], ...]}
IntervalUnion interval_union_from_json(const Json& j);
Json interval_union_to_json(const IntervalUnion& u);

// {"pieces": [[["a","b"],"h"], ...], "atoms": {"x": "m"}}
MeasureModel measure_model_from_json(const Json& j);
Json measure_model_to_json(const MeasureModel& m);

Json structure_report_to_json(const StructureReport& r, const FiniteLattice& L);
Json class_report_to_json(const ClassReport& r, const FiniteLattice& L);
Json levy_report_to_json(const LevyReport& r, const FiniteLattice& L);
Json sim_report_to_json(const SimReport& r);
Json lfv_certificate_to_json(const LfvCertificate& c);

}  // namespace latcap

#pragma once

#include <ostream>
#include <string>

#include <json.hpp>

#include "asymap/pairing.hpp"
#include "asymap/residue.hpp"
#include "asymap/riemann.hpp"

namespace asymap::io {

using json = nlohmann::json;

// Strict parsing: every object is checked against its schema and unknown
// fields are rejected before any computation touches the payload.

json to_json(const Jet2& g);
Jet2 jet_from_json(const json& j);

json to_json(const Series1& s);
Series1 series_from_json(const json& j);

json to_json(const AnalyticWeight& w);
AnalyticWeight weight_from_json(const json& j);

json to_json(const Form1D& f);
Form1D form_from_json(const json& j);

json to_json(const HoloForm& f);
HoloForm holoform_from_json(const json& j);

json to_json(const CutoffSpec& lam);
CutoffSpec cutoff_from_json(const json& j);

json to_json(const PairingFit& fit);

// Per-eps solver run report.
json solve_report(double eps, const SolveResult& res, double residual);

// One row per eps: eps, log_eps, re_value, im_value.
void write_pairing_csv(std::ostream& os, const PairingFit& fit);

json complex_to_json(Complex v);
Complex complex_from_json(const json& j, const char* what);

// Throws std::invalid_argument when j is not an object or carries a key
// outside `allowed`.
void check_keys(const json& j, const char* what,
                std::initializer_list<const char*> allowed);

}  // namespace asymap::io

#include "asymap/io.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace asymap::io {

namespace {

std::string msg(const char* what, const std::string& detail) {
  return std::string(what) + ": " + detail;
}

double number_from(const json& j, const char* what) {
  if (!j.is_number()) throw std::invalid_argument(msg(what, "expected a number"));
  return j.get<double>();
}

int integer_from(const json& j, const char* what) {
  if (!j.is_number_integer()) throw std::invalid_argument(msg(what, "expected an integer"));
  return j.get<int>();
}

}  // namespace

void check_keys(const json& j, const char* what,
                std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw std::invalid_argument(msg(what, "expected a JSON object"));
  for (const auto& item : j.items()) {
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
          return item.key() == k;
        }) == allowed.end())
      throw std::invalid_argument(msg(what, "unknown field \"" + item.key() + "\""));
  }
}

json complex_to_json(Complex v) { return json::array({v.real(), v.imag()}); }

Complex complex_from_json(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2)
    throw std::invalid_argument(msg(what, "expected [re, im]"));
  return Complex(number_from(j[0], what), number_from(j[1], what));
}

json to_json(const Jet2& g) {
  json coeffs = json::array();
  for (int r = 0; r <= g.order(); ++r)
    for (int s = 0; s <= g.order(); ++s) {
      const Complex v = g.at(r, s);
      if (v != Complex(0)) coeffs.push_back({r, s, v.real(), v.imag()});
    }
  return json{{"order", g.order()}, {"coeffs", coeffs}};
}

Jet2 jet_from_json(const json& j) {
  check_keys(j, "jet", {"order", "coeffs"});
  if (!j.contains("order") || !j.contains("coeffs"))
    throw std::invalid_argument("jet: fields \"order\" and \"coeffs\" are required");
  const int order = integer_from(j["order"], "jet.order");
  if (order < 0) throw std::invalid_argument("jet.order: must be >= 0");
  Jet2 g(order);
  std::set<std::pair<int, int>> seen;
  if (!j["coeffs"].is_array()) throw std::invalid_argument("jet.coeffs: expected an array");
  for (const auto& entry : j["coeffs"]) {
    if (!entry.is_array() || entry.size() != 4)
      throw std::invalid_argument("jet.coeffs: expected entries [r, s, re, im]");
    const int r = integer_from(entry[0], "jet.coeffs.r");
    const int s = integer_from(entry[1], "jet.coeffs.s");
    if (r < 0 || s < 0 || r > order || s > order)
      throw std::invalid_argument("jet.coeffs: index outside [0, order]");
    if (!seen.insert({r, s}).second)
      throw std::invalid_argument("jet.coeffs: duplicate index pair");
    g.set(r, s, Complex(number_from(entry[2], "jet.coeffs.re"),
                        number_from(entry[3], "jet.coeffs.im")));
  }
  return g;
}

json to_json(const Series1& s) {
  json coeffs = json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back({c.real(), c.imag()});
  return json{{"coeffs", coeffs}, {"normalized", s.normalized()}};
}

Series1 series_from_json(const json& j) {
  check_keys(j, "series", {"coeffs", "normalized"});
  if (!j.contains("coeffs") || !j.contains("normalized"))
    throw std::invalid_argument("series: fields \"coeffs\" and \"normalized\" are required");
  if (!j["normalized"].is_boolean())
    throw std::invalid_argument("series.normalized: expected a boolean");
  if (!j["coeffs"].is_array()) throw std::invalid_argument("series.coeffs: expected an array");
  std::vector<Complex> coeffs;
  for (const auto& entry : j["coeffs"])
    coeffs.push_back(complex_from_json(entry, "series.coeffs"));
  return j["normalized"].get<bool>() ? Series1::normalized(std::move(coeffs))
                                     : Series1::plain(std::move(coeffs));
}

json to_json(const AnalyticWeight& w) {
  json coeffs = json::array();
  for (int r = 0; r <= w.order(); ++r)
    for (int s = 0; s <= w.order(); ++s) {
      const Complex v = w.coeff(r, s);
      if (v != Complex(0)) coeffs.push_back({r, s, v.real(), v.imag()});
    }
  return json{{"c", coeffs}, {"order", w.order()}};
}

AnalyticWeight weight_from_json(const json& j) {
  check_keys(j, "weight", {"c", "order"});
  if (!j.contains("c") || !j.contains("order"))
    throw std::invalid_argument("weight: fields \"c\" and \"order\" are required");
  const int order = integer_from(j["order"], "weight.order");
  if (order < 0) throw std::invalid_argument("weight.order: must be >= 0");
  if (!j["c"].is_array()) throw std::invalid_argument("weight.c: expected an array");
  std::vector<std::tuple<int, int, Complex>> coeffs;
  std::set<std::pair<int, int>> seen;
  for (const auto& entry : j["c"]) {
    if (!entry.is_array() || entry.size() != 4)
      throw std::invalid_argument("weight.c: expected entries [r, s, re, im]");
    const int r = integer_from(entry[0], "weight.c.r");
    const int s = integer_from(entry[1], "weight.c.s");
    if (r < 0 || s < 0 || r > order || s > order)
      throw std::invalid_argument("weight.c: index outside [0, order]");
    if (!seen.insert({r, s}).second)
      throw std::invalid_argument("weight.c: duplicate index pair");
    coeffs.emplace_back(r, s, Complex(number_from(entry[2], "weight.c.re"),
                                      number_from(entry[3], "weight.c.im")));
  }
  return AnalyticWeight::from_coeffs(order, coeffs);
}

json to_json(const Form1D& f) {
  return json{{"m", f.m}, {"P", to_json(f.P)}, {"rho", f.rho}};
}

Form1D form_from_json(const json& j) {
  check_keys(j, "form", {"m", "P", "rho"});
  if (!j.contains("m") || !j.contains("P") || !j.contains("rho"))
    throw std::invalid_argument("form: fields \"m\", \"P\", \"rho\" are required");
  const int m = integer_from(j["m"], "form.m");
  const double rho = number_from(j["rho"], "form.rho");
  return Form1D(m, jet_from_json(j["P"]), rho);
}

json to_json(const HoloForm& f) { return json{{"b", to_json(f.b)}}; }

HoloForm holoform_from_json(const json& j) {
  check_keys(j, "beta", {"b"});
  if (!j.contains("b")) throw std::invalid_argument("beta: field \"b\" is required");
  return HoloForm(series_from_json(j["b"]));
}

json to_json(const CutoffSpec& lam) { return json{{"eta", to_json(lam.eta())}}; }

CutoffSpec cutoff_from_json(const json& j) {
  check_keys(j, "cutoff", {"eta"});
  if (!j.contains("eta")) throw std::invalid_argument("cutoff: field \"eta\" is required");
  return CutoffSpec(jet_from_json(j["eta"]));
}

json to_json(const PairingFit& fit) {
  json grid = json::array();
  for (double e : fit.grid) grid.push_back(e);
  json values = json::array();
  for (const auto& v : fit.values) values.push_back({v.real(), v.imag()});
  json out{{"I0", complex_to_json(fit.I0)},
           {"I1", complex_to_json(fit.I1)},
           {"grid", grid},
           {"values", values},
           {"fit_residual", fit.fit_residual},
           {"remainder_slope", fit.remainder_slope}};
  if (fit.remainder_used) out["I2"] = complex_to_json(fit.I2);
  return out;
}

json solve_report(double eps, const SolveResult& res, double residual) {
  json a = json::array();
  for (const auto& v : res.a.a) a.push_back({v.real(), v.imag()});
  return json{{"eps", eps},
              {"a", a},
              {"R", res.cert.R},
              {"delta", res.cert.delta},
              {"theta", res.cert.theta},
              {"iters", res.iters},
              {"boundary_residual", residual}};
}

void write_pairing_csv(std::ostream& os, const PairingFit& fit) {
  os << "eps,log_eps,re_value,im_value\n";
  for (size_t k = 0; k < fit.grid.size(); ++k) {
    const json row{fit.grid[k], std::log(fit.grid[k]), fit.values[k].real(),
                   fit.values[k].imag()};
    os << row[0].dump() << ',' << row[1].dump() << ',' << row[2].dump() << ','
       << row[3].dump() << '\n';
  }
}

}  // namespace asymap::io

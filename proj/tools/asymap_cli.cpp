// Command-line front end: JSON problem configs in, JSON reports and CSV
// plot data out.  Exit codes: 0 success, 2 validation, 3 numerical failure,
// 4 I/O failure.

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "asymap/errors.hpp"
#include "asymap/io.hpp"
#include "asymap/pairing.hpp"
#include "asymap/residue.hpp"
#include "asymap/riemann.hpp"
#include "asymap/verify.hpp"

namespace {

using asymap::io::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&t));
  return buf;
}

struct CliArgs {
  std::string config_path;
  std::string out_path;
  std::string csv_path;
  std::optional<int> order;
  std::optional<double> tol;
  std::string eps_list;
  std::string suite;
};

std::vector<double> parse_eps_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("--eps: malformed number: " + item);
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("--eps: empty list");
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::ios_base::failure("cannot open output file: " + path);
  os << text;
  if (!os.flush()) throw std::ios_base::failure("write failed: " + path);
}

void write_report(const std::string& path, json report) {
  report["timestamp"] = iso_timestamp();
  write_text(path, report.dump(2) + "\n");
}

asymap::SolveOptions solve_options_from(const json& config, const CliArgs& args) {
  asymap::SolveOptions opts;
  if (config.contains("order")) opts.order = config["order"].get<int>();
  if (config.contains("tol")) opts.tol = config["tol"].get<double>();
  if (config.contains("max_iter")) opts.max_iter = config["max_iter"].get<int>();
  if (config.contains("delta")) opts.delta = config["delta"].get<double>();
  if (args.order) opts.order = *args.order;
  if (args.tol) opts.tol = *args.tol;
  return opts;
}

asymap::PairingOptions pairing_options() {
  asymap::PairingOptions opts;
  if (const char* env = std::getenv("ASYMAP_THREADS")) {
    const int n = std::atoi(env);
    if (n < 1) throw std::invalid_argument("ASYMAP_THREADS must be a positive integer");
    opts.threads = n;
  }
  return opts;
}

std::vector<double> grid_from(const json& config, const CliArgs& args) {
  if (!args.eps_list.empty()) return parse_eps_list(args.eps_list);
  if (config.contains("grid")) {
    std::vector<double> g;
    for (const auto& v : config["grid"]) g.push_back(v.get<double>());
    return g;
  }
  return asymap::default_eps_grid();
}

int cmd_riemann(const json& config, const CliArgs& args) {
  asymap::io::check_keys(config, "config",
                         {"kind", "weight", "eps", "order", "tol", "max_iter", "delta"});
  if (!config.contains("weight"))
    throw std::invalid_argument("config: field \"weight\" is required");
  const asymap::AnalyticWeight mu = asymap::io::weight_from_json(config["weight"]);
  const asymap::SolveOptions opts = solve_options_from(config, args);

  std::vector<double> eps_values;
  if (!args.eps_list.empty()) {
    eps_values = parse_eps_list(args.eps_list);
  } else if (config.contains("eps")) {
    for (const auto& v : config["eps"]) eps_values.push_back(v.get<double>());
  } else {
    throw std::invalid_argument("config: an eps list is required (field or --eps)");
  }

  const asymap::ContractionCert cert = asymap::radius_certificate(mu, opts.delta);
  json runs = json::array();
  for (double eps : eps_values) {
    if (std::abs(eps) / std::sqrt(mu.scale()) > 0.5 * cert.R)
      std::cerr << "warning: eps = " << eps
                << " beyond half the certified radius R = " << cert.R
                << " (normalized frame); relying on a-posteriori residual\n";
    const asymap::SolveResult res = asymap::solve(mu, eps, opts);
    const double residual =
        eps != 0.0 ? asymap::boundary_residual(mu, eps, res.a) : 0.0;
    runs.push_back(asymap::io::solve_report(eps, res, residual));
  }
  json report{{"kind", "riemann"},
              {"certificate",
               {{"R", cert.R}, {"delta", cert.delta}, {"theta", cert.theta}}},
              {"limit_map", asymap::io::to_json(asymap::limit_map(mu))},
              {"runs", runs}};
  write_report(args.out_path, report);
  return kExitOk;
}

int cmd_limit_map(const json& config, const CliArgs& args) {
  asymap::io::check_keys(config, "config", {"kind", "weight"});
  if (!config.contains("weight"))
    throw std::invalid_argument("config: field \"weight\" is required");
  const asymap::AnalyticWeight mu = asymap::io::weight_from_json(config["weight"]);
  json report{{"kind", "limit-map"},
              {"limit_map", asymap::io::to_json(asymap::limit_map(mu))}};
  write_report(args.out_path, report);
  return kExitOk;
}

int cmd_residue(const json& config, const CliArgs& args) {
  asymap::io::check_keys(config, "config", {"kind", "form", "classical_radius"});
  if (!config.contains("form"))
    throw std::invalid_argument("config: field \"form\" is required");
  const asymap::Form1D alpha = asymap::io::form_from_json(config["form"]);
  const asymap::ResidueValue res = asymap::res_dolbeault(alpha);
  json report{{"kind", "residue"},
              {"res_dolbeault", asymap::io::complex_to_json(res.value)},
              {"pole_free", res.pole_free}};
  if (alpha.m == 1) {
    double r = -1.0;
    if (config.contains("classical_radius")) r = config["classical_radius"].get<double>();
    report["res_classical"] = asymap::io::complex_to_json(asymap::res_classical(alpha, r));
  } else {
    report["res_classical"] = nullptr;
  }
  const asymap::PoleReduction red = asymap::pole_reduce(alpha);
  report["reduced_m"] = red.reduced.m;
  report["reduced_residue"] =
      asymap::io::complex_to_json(asymap::res_dolbeault(red.reduced).value);
  write_report(args.out_path, report);
  return kExitOk;
}

int cmd_pairing(const json& config, const CliArgs& args) {
  asymap::io::check_keys(config, "config", {"kind", "alpha", "beta", "lambda", "grid"});
  for (const char* field : {"alpha", "beta", "lambda"})
    if (!config.contains(field))
      throw std::invalid_argument(std::string("config: field \"") + field +
                                  "\" is required");
  const asymap::Form1D alpha = asymap::io::form_from_json(config["alpha"]);
  const asymap::HoloForm beta = asymap::io::holoform_from_json(config["beta"]);
  const asymap::CutoffSpec lam = asymap::io::cutoff_from_json(config["lambda"]);
  const std::vector<double> grid = grid_from(config, args);

  const asymap::PairingFit fit =
      asymap::divergence_fit(alpha, beta, lam, grid, pairing_options());
  json report = asymap::io::to_json(fit);
  report["kind"] = "pairing";
  write_report(args.out_path, report);
  if (!args.csv_path.empty()) {
    std::ofstream csv(args.csv_path);
    if (!csv) throw std::ios_base::failure("cannot open CSV file: " + args.csv_path);
    asymap::io::write_pairing_csv(csv, fit);
    if (!csv.flush()) throw std::ios_base::failure("CSV write failed: " + args.csv_path);
  }
  return kExitOk;
}

int cmd_variation(const json& config, const CliArgs& args) {
  asymap::io::check_keys(config, "config",
                         {"kind", "alpha", "beta", "lambda", "phi", "grid"});
  for (const char* field : {"alpha", "beta", "lambda", "phi"})
    if (!config.contains(field))
      throw std::invalid_argument(std::string("config: field \"") + field +
                                  "\" is required");
  const asymap::Form1D alpha = asymap::io::form_from_json(config["alpha"]);
  const asymap::HoloForm beta = asymap::io::holoform_from_json(config["beta"]);
  const asymap::CutoffSpec lam = asymap::io::cutoff_from_json(config["lambda"]);
  const asymap::Jet2 phi = asymap::io::jet_from_json(config["phi"]);
  if (!asymap::is_hermitian(phi))
    throw std::invalid_argument("config: phi must be real-valued");
  const std::vector<double> grid = grid_from(config, args);

  const asymap::VariationResult v =
      asymap::variation(alpha, beta, lam, phi, grid, pairing_options());
  json report{{"kind", "variation"},
              {"measured", asymap::io::complex_to_json(v.measured)},
              {"predicted", asymap::io::complex_to_json(v.predicted)},
              {"I0_base", asymap::io::complex_to_json(v.base.I0)},
              {"I0_shifted", asymap::io::complex_to_json(v.shifted.I0)},
              {"base", asymap::io::to_json(v.base)},
              {"shifted", asymap::io::to_json(v.shifted)}};
  write_report(args.out_path, report);
  return kExitOk;
}

int cmd_verify(const std::string& suite, const CliArgs& args) {
  const auto results = asymap::verify::run_suite(suite);
  json checks = json::array();
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name << " (" << r.detail
              << ") [" << r.seconds << "s]\n";
    checks.push_back(
        {{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
  }
  const bool ok = asymap::verify::all_pass(results);
  std::cout << (ok ? "all checks passed" : "some checks FAILED") << "\n";
  if (!args.out_path.empty())
    write_report(args.out_path,
                 json{{"kind", "verify"}, {"suite", suite}, {"checks", checks}, {"pass", ok}});
  return ok ? kExitOk : kExitNumerical;
}

int dispatch(const CliArgs& args) {
  if (!args.suite.empty() && args.config_path.empty())
    return cmd_verify(args.suite, args);
  if (args.config_path.empty())
    throw std::invalid_argument("either --config or --suite is required");

  std::ifstream is(args.config_path);
  if (!is) throw std::ios_base::failure("cannot open config: " + args.config_path);
  json config;
  try {
    config = json::parse(is);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!config.is_object() || !config.contains("kind") || !config["kind"].is_string())
    throw std::invalid_argument("config: a string field \"kind\" is required");
  const std::string kind = config["kind"].get<std::string>();

  if (kind == "riemann") return cmd_riemann(config, args);
  if (kind == "limit-map") return cmd_limit_map(config, args);
  if (kind == "residue") return cmd_residue(config, args);
  if (kind == "pairing") return cmd_pairing(config, args);
  if (kind == "variation") return cmd_variation(config, args);
  if (kind == "verify") {
    asymap::io::check_keys(config, "config", {"kind", "suite"});
    std::string suite = args.suite;
    if (suite.empty() && config.contains("suite"))
      suite = config["suite"].get<std::string>();
    if (suite.empty()) throw std::invalid_argument("config: verify needs a suite");
    return cmd_verify(suite, args);
  }
  throw std::invalid_argument("config: unknown kind \"" + kind + "\"");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymptotic Riemann maps, Dolbeault residues, and regularized pairings"};
  CliArgs args;
  app.add_option("--config", args.config_path, "problem config (JSON)");
  app.add_option("--out", args.out_path, "report output path (default: stdout)");
  app.add_option("--csv", args.csv_path, "CSV output path (pairing values)");
  int order = 0;
  double tol = 0.0;
  auto* order_opt = app.add_option("--order", order, "series truncation order");
  auto* tol_opt = app.add_option("--tol", tol, "fixed-point tolerance");
  app.add_option("--eps", args.eps_list, "comma-separated eps values");
  app.add_option("--suite", args.suite,
                 "verification suite: series|riemann|residue|pairing|all");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }
  if (*order_opt) args.order = order;
  if (*tol_opt) args.tol = tol;

  try {
    return dispatch(args);
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitIo;
  } catch (const asymap::io::json::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitValidation;
  } catch (const asymap::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}

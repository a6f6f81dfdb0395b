#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "asymap/io.hpp"
#include "asymap/numerics.hpp"

using asymap::io::json;
namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code;
  std::string out_path;
};

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / ("asymap_test_" + name);
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream os(p);
  REQUIRE(os.good());
  os << text;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(ASYMAP_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return (rc >= 0) ? ((rc >> 8) & 0xff) : -1;
}

json read_json(const fs::path& p) {
  std::ifstream is(p);
  REQUIRE(is.good());
  return json::parse(is);
}

}  // namespace

TEST_CASE("cli riemann on the flat weight") {
  const fs::path cfg = temp_file("flat.json");
  const fs::path out = temp_file("flat_report.json");
  write_file(cfg, R"({"kind":"riemann","weight":{"c":[[0,0,1,0]],"order":0},"eps":[0.1]})");
  const int rc = run_cli("--config " + cfg.string() + " --out " + out.string());
  CHECK(rc == 0);
  const json report = read_json(out);
  CHECK(report["kind"] == "riemann");
  CHECK(report["runs"].size() == 1);
  CHECK(report["runs"][0]["a"][0][0].get<double>() == 1.0);
  CHECK(report["runs"][0]["boundary_residual"].get<double>() < 1e-14);
}

TEST_CASE("cli riemann reproduces the radial-profile dilation") {
  const fs::path cfg = temp_file("radial.json");
  const fs::path out = temp_file("radial_report.json");
  write_file(cfg,
             R"({"kind":"riemann","weight":{"c":[[0,0,1,0],[1,1,1,0]],"order":1},"eps":[0.1]})");
  const int rc = run_cli("--config " + cfg.string() + " --out " + out.string());
  CHECK(rc == 0);
  const json report = read_json(out);
  const double a0 = report["runs"][0]["a"][0][0].get<double>();
  const double e2 = 0.01;
  const double t = asymap::find_root([&](double x) { return x + x * x - e2; },
                                     [](double x) { return 1.0 + 2.0 * x; }, 0.0, e2);
  CHECK(std::abs(a0 - std::sqrt(t) / 0.1) < 1e-9);
}

TEST_CASE("cli rejects malformed payloads with exit 2") {
  const fs::path cfg = temp_file("bad.json");
  write_file(cfg, R"({"kind":"riemann","weight":{"c":[[-1,0,1,0]],"order":0},"eps":[0.1]})");
  CHECK(run_cli("--config " + cfg.string()) == 2);

  const fs::path unknown = temp_file("unknown.json");
  write_file(unknown,
             R"({"kind":"riemann","weight":{"c":[[0,0,1,0]],"order":0,"extra":1},"eps":[0.1]})");
  CHECK(run_cli("--config " + unknown.string()) == 2);

  const fs::path nokind = temp_file("nokind.json");
  write_file(nokind, R"({"weight":{"c":[[0,0,1,0]],"order":0}})");
  CHECK(run_cli("--config " + nokind.string()) == 2);
}

TEST_CASE("cli rejects wrongly typed fields and bad flags with exit 2") {
  const fs::path cfg = temp_file("badtype.json");
  write_file(cfg, R"({"kind":"riemann","weight":{"c":[[0,0,1,0]],"order":0},"eps":["x"]})");
  CHECK(run_cli("--config " + cfg.string()) == 2);
  CHECK(run_cli("--no-such-flag") == 2);
}

TEST_CASE("cli pairing with a two-point grid fails validation") {
  const fs::path cfg = temp_file("pair2.json");
  write_file(cfg, R"({
    "kind":"pairing",
    "alpha":{"m":1,"P":{"order":0,"coeffs":[[0,0,1,0]]},"rho":1.0},
    "beta":{"b":{"coeffs":[[1,0]],"normalized":false}},
    "lambda":{"eta":{"order":0,"coeffs":[]}},
    "grid":[0.02,0.01]})");
  CHECK(run_cli("--config " + cfg.string()) == 2);
}

TEST_CASE("cli pairing produces a report and csv deterministically") {
  const fs::path cfg = temp_file("pair.json");
  const fs::path out1 = temp_file("pair_report1.json");
  const fs::path out2 = temp_file("pair_report2.json");
  const fs::path csv = temp_file("pair.csv");
  write_file(cfg, R"({
    "kind":"pairing",
    "alpha":{"m":1,"P":{"order":0,"coeffs":[[0,0,1,0]]},"rho":1.0},
    "beta":{"b":{"coeffs":[[1,0]],"normalized":false}},
    "lambda":{"eta":{"order":0,"coeffs":[]}},
    "grid":[0.02,0.01,0.005]})");
  CHECK(run_cli("--config " + cfg.string() + " --out " + out1.string() + " --csv " +
                csv.string()) == 0);
  CHECK(run_cli("--config " + cfg.string() + " --out " + out2.string()) == 0);

  json r1 = read_json(out1);
  json r2 = read_json(out2);
  CHECK(std::abs(r1["I0"][0].get<double>() - 2.0) < 1e-4);
  r1.erase("timestamp");
  r2.erase("timestamp");
  CHECK(r1.dump() == r2.dump());

  std::ifstream is(csv);
  std::string header;
  std::getline(is, header);
  CHECK(header == "eps,log_eps,re_value,im_value");
}

TEST_CASE("cli eps flag overrides the config") {
  const fs::path cfg = temp_file("epsflag.json");
  const fs::path out = temp_file("epsflag_report.json");
  write_file(cfg, R"({"kind":"riemann","weight":{"c":[[0,0,1,0]],"order":0}})");
  CHECK(run_cli("--config " + cfg.string() + " --eps 0.05,0.1 --out " + out.string()) == 0);
  const json report = read_json(out);
  REQUIRE(report["runs"].size() == 2);
  CHECK(report["runs"][0]["eps"].get<double>() == 0.05);
  CHECK(report["runs"][1]["eps"].get<double>() == 0.1);
  for (const char* key : {"eps", "a", "R", "delta", "theta", "iters", "boundary_residual"})
    CHECK(report["runs"][0].contains(key));
}

TEST_CASE("cli limit-map and residue commands") {
  const fs::path lm_cfg = temp_file("lm.json");
  const fs::path lm_out = temp_file("lm_report.json");
  write_file(lm_cfg,
             R"({"kind":"limit-map","weight":{"c":[[0,0,1,0],[1,0,0.5,0],[0,1,0.5,0]],"order":1}})");
  CHECK(run_cli("--config " + lm_cfg.string() + " --out " + lm_out.string()) == 0);
  const json lm = read_json(lm_out);
  CHECK(lm["limit_map"]["coeffs"][1][0].get<double>() == 0.5);

  const fs::path res_cfg = temp_file("res.json");
  const fs::path res_out = temp_file("res_report.json");
  write_file(res_cfg, R"({
    "kind":"residue",
    "form":{"m":2,"P":{"order":1,"coeffs":[[0,0,1,0],[1,0,1,0]]},"rho":1.0}})");
  CHECK(run_cli("--config " + res_cfg.string() + " --out " + res_out.string()) == 0);
  const json res = read_json(res_out);
  CHECK(res["res_dolbeault"][0].get<double>() == 1.0);
  CHECK(res["res_classical"].is_null());
  CHECK(res["reduced_m"].get<int>() == 1);
  CHECK(res["reduced_residue"][0].get<double>() == 1.0);
}

TEST_CASE("cli variation reproduces the constant-shift prediction") {
  const fs::path cfg = temp_file("var.json");
  const fs::path out = temp_file("var_report.json");
  write_file(cfg, R"({
    "kind":"variation",
    "alpha":{"m":1,"P":{"order":0,"coeffs":[[0,0,1,0]]},"rho":1.0},
    "beta":{"b":{"coeffs":[[1,0]],"normalized":false}},
    "lambda":{"eta":{"order":0,"coeffs":[]}},
    "phi":{"order":0,"coeffs":[[0,0,0.3,0]]},
    "grid":[0.02,0.01,0.005,0.0025]})");
  CHECK(run_cli("--config " + cfg.string() + " --out " + out.string()) == 0);
  const json report = read_json(out);
  CHECK(std::abs(report["predicted"][0].get<double>() + 0.6) < 1e-12);
  CHECK(std::abs(report["measured"][0].get<double>() + 0.6) < 1e-4);
}

TEST_CASE("cli verify runs the series suite") {
  CHECK(run_cli("--suite series") == 0);
}

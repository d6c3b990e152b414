#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fracrd/cli/commands.hpp"
#include "fracrd/cli/config.hpp"
#include "fracrd/cli/tables.hpp"

using namespace fracrd::cli;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "fracrd");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& body) {
  const auto path = std::filesystem::temp_directory_path() / ("fracrd_test_" + name);
  std::ofstream(path) << body;
  return path.string();
}

}  // namespace

TEST_CASE("config parsing: values, lists, diagnostics") {
  const auto c = parse_config("problem: fisher\nalpha: [1.1, 1.4]\nbeta: [1.2, 1.5]\nsteps: 8\npreconditioner: chan\n");
  CHECK(c.alpha == std::vector<double>{1.1, 1.4});
  CHECK(c.steps == 8);
  REQUIRE(c.kinds.size() == 1);
  CHECK(c.kinds[0] == fracrd::PreconditionerKind::ChanCirculant);

  try {
    parse_config("steps: 8\nbogus: 1\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "bogus");
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  try {
    parse_config("grid: 64\nsteps: eight\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "steps");
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_config("alpha: 2.5\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("steps: 8\nsteps: 9\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("solver:\n  tolerance: 1e-8\n"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/fracrd.yaml"), ConfigError);
  for (auto key : known_keys()) CHECK_FALSE(key.empty());
}

TEST_CASE("CSV numbers round-trip and tables render both formats") {
  for (double v : {0.1, 1.0 / 3.0, 2.93465e-7, 1e300, -0.0, 5e-324}) {
    CHECK(std::strtod(format_csv_number(v).c_str(), nullptr) == v);
  }
  Table t({{"name"}, {"value", Style::Scientific}, {"iter", Style::Fixed2}});
  t.add_row({std::string("a,b"), 2.93465e-7, 10.0});
  t.add_row({std::string("plain"), 1.0 / 3.0, Exceeded{}});
  std::ostringstream csv, md;
  t.write_csv(csv);
  t.write_markdown(md);
  const auto rec = parse_csv(csv.str());
  REQUIRE(rec.size() == 3);
  CHECK(rec[1][0] == "a,b");
  CHECK(std::stod(rec[2][1]) == 1.0 / 3.0);
  CHECK(rec[2][2] == ">1000");
  CHECK(csv.str().find('\r') == std::string::npos);
  CHECK(md.str().find("2.9347e-07") != std::string::npos);
  CHECK(md.str().find("†") != std::string::npos);
  CHECK(md.str().find("10.00") != std::string::npos);
  CHECK(format_markdown(1.0 / 64, Style::Reciprocal) == "1/64");
  CHECK_THROWS(t.add_row({1.0}));
}

TEST_CASE("solve: small run emits one CSV row") {
  const auto r = invoke({"solve", "--grid", "16", "--steps", "4", "--precond", "tau"});
  REQUIRE(r.code == kExitOk);
  const auto rec = parse_csv(r.out);
  REQUIRE(rec.size() == 2);
  CHECK(rec[0][0] == "problem");
  CHECK(rec[1].size() == rec[0].size());
  CHECK(std::stod(rec[1][8]) > 0.0);
}

TEST_CASE("exit codes for bad input") {
  CHECK(invoke({"solve", "--config", "/nonexistent/cfg.yaml"}).code == kExitConfig);
  CHECK(invoke({"solve", "--precond", "jacobi"}).code == kExitConfig);
  CHECK(invoke({"solve", "--alpha", "2.5"}).code == kExitConfig);
  CHECK(invoke({}).code == kExitConfig);
  const auto bad = invoke({"solve", "--config", temp_file("bad.yaml", "grid: 16\nbogus: 3\n")});
  CHECK(bad.code == kExitConfig);
  CHECK(bad.err.find("line 2") != std::string::npos);
  CHECK(bad.err.find("bogus") != std::string::npos);
}

TEST_CASE("convergence: single level has an empty order") {
  const auto r = invoke({"convergence", "--mode", "time", "--grid", "8", "--levels", "1", "--alpha", "1.4", "--beta", "1.5"});
  REQUIRE(r.code == kExitOk);
  const auto rec = parse_csv(r.out);
  REQUIRE(rec.size() == 2);
  CHECK(rec[1][5].empty());
}

TEST_CASE("spectra: pass, tampered bounds fail, 1x1 row present") {
  const auto ok = invoke({"spectra", "--alpha", "1.3", "--beta", "1.6", "--grid", "8"});
  CHECK(ok.code == kExitOk);
  const auto cfg = temp_file("tampered.yaml", "bound_lo: 0.9\nbound_hi: 1.1\nsizes: [1, 7]\nalpha: [1.5]\nbeta: [1.5]\n");
  const auto bad = invoke({"spectra", "--config", cfg});
  CHECK(bad.code == kExitFailure);
  CHECK(bad.out.find("FAIL") != std::string::npos);
  const auto defaults = invoke({"spectra", "--config", temp_file("one.yaml", "sizes: [1]\nalpha: [1.5]\nbeta: [1.5]\n")});
  CHECK(defaults.code == kExitOk);
}

TEST_CASE("bench: single kind and the exceeded marker") {
  const auto one = invoke({"bench", "--alpha", "1.1", "--beta", "1.2", "--grid", "16", "--steps", "2", "--precond", "tau"});
  REQUIRE(one.code == kExitOk);
  const auto rec = parse_csv(one.out);
  REQUIRE(rec.size() == 2);
  CHECK(rec[0].size() == 6);
  CHECK(rec[0][5] == "tau_iter");

  const auto cfg = temp_file("cap.yaml", "max_iterations: 2\npreconditioner: identity\nalpha: [1.1]\nbeta: [1.2]\n");
  const auto csv = invoke({"bench", "--config", cfg, "--grid", "32", "--steps", "2"});
  REQUIRE(csv.code == kExitOk);
  CHECK(csv.out.find(">1000") != std::string::npos);
  const auto md = invoke({"bench", "--config", cfg, "--grid", "32", "--steps", "2", "--format", "md"});
  CHECK(md.out.find("†") != std::string::npos);
}

TEST_CASE("--out writes the file") {
  const auto path = (std::filesystem::temp_directory_path() / "fracrd_test_out.csv").string();
  std::filesystem::remove(path);
  const auto r = invoke({"solve", "--grid", "8", "--steps", "2", "--out", path});
  CHECK(r.code == kExitOk);
  CHECK(r.out.empty());
  CHECK(std::filesystem::exists(path));
}

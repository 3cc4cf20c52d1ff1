#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "delaywave/driver.hpp"
#include "delaywave/error.hpp"

using namespace delaywave;
namespace fs = std::filesystem;

namespace {

std::string value_of(const RunSummary& s, const std::string& key) {
  for (const auto& [k, v] : s.entries) {
    if (k == key) return v;
  }
  return "<missing>";
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("delaywave_driver_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("validate on defaults") {
  const RunSummary s = run_command("validate", Config{}, "");
  CHECK(s.exit_status == 0);
  CHECK(value_of(s, "all_passed") == "true");
  CHECK(value_of(s, "steep_crossing") == "pass");
  CHECK(std::abs(std::stod(value_of(s, "w0")) - 0.69581140290126391) <= 1e-12);
  CHECK(s.artifacts.empty());

  Config bad;
  bad.b = 1.0;
  const RunSummary f = run_command("validate", bad, "");
  CHECK(f.exit_status == 1);
  CHECK(value_of(f, "increasing_at_zero") == "fail");
}

TEST_CASE("unknown command") {
  try {
    run_command("plot", Config{}, "");
    FAIL("expected UnknownCommand");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownCommand);
  }
}

TEST_CASE("inadmissible family is an argument error") {
  Config c;
  c.a = 0.5;
  try {
    run_command("wave0", c, "");
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("wave0 artifacts are deterministic") {
  const fs::path d1 = scratch("w1");
  const fs::path d2 = scratch("w2");
  const RunSummary a = run_command("wave0", Config{}, d1.string());
  const RunSummary b = run_command("wave0", Config{}, d2.string());
  CHECK(format_summary(a) == format_summary(b));
  REQUIRE(a.artifacts.size() == 1);
  const std::string text = slurp(a.artifacts[0]);
  CHECK(text == slurp(b.artifacts[0]));
  CHECK(text.rfind("x,w,dw\n-60,", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 2402);
  CHECK(std::stod(value_of(a, "c")) < 0.0);
  CHECK(value_of(a, "c0") != "<missing>");
  fs::remove_all(d1);
  fs::remove_all(d2);
}

TEST_CASE("wave at tau = 0.5") {
  Config c;
  c.tau = 0.5;
  c.dtau = 0.25;
  const fs::path dir = scratch("wave");
  const RunSummary s = run_command("wave", c, dir.string());
  CHECK(s.exit_status == 0);
  CHECK(value_of(s, "monotone") == "true");
  CHECK(value_of(s, "tau") == "0.5");
  CHECK(std::stod(value_of(s, "residual")) <= 1e-10);
  CHECK(std::stoi(value_of(s, "iterations")) >= 1);
  REQUIRE(s.artifacts.size() == 1);
  CHECK(fs::path(s.artifacts[0]).filename() == "wave.csv");
  fs::remove_all(dir);
}

TEST_CASE("spectrum summary") {
  Config c;
  c.tau = 0.2;
  c.n_xi = 11;
  const fs::path dir = scratch("spectrum");
  const RunSummary s = run_command("spectrum", c, dir.string());
  CHECK(value_of(s, "ns") == "true");
  CHECK(std::stod(value_of(s, "margin")) > 0.0);
  const std::string text = slurp(s.artifacts.at(0));
  CHECK(text.rfind("xi,re_plus,im_plus,re_minus,im_minus\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 12);
  fs::remove_all(dir);
}

TEST_CASE("short simulation") {
  Config c;
  c.L_sim = 30.0;
  c.t_final = 20.0;
  const fs::path dir = scratch("sim");
  const RunSummary s = run_command("simulate", c, dir.string());
  CHECK(s.artifacts.size() == 2);
  CHECK(value_of(s, "c_sim") != "<missing>");
  CHECK(value_of(s, "stderr") != "<missing>");
  CHECK(slurp(s.artifacts.at(0)).rfind("t,x_half\n", 0) == 0);
  fs::remove_all(dir);
}

TEST_CASE("summary formatting") {
  RunSummary s;
  s.add("x", 0.1);
  s.add("flag", true);
  s.add("count", 3LL);
  CHECK(format_summary(s) == "x=0.10000000000000001\nflag=true\ncount=3\n");
}

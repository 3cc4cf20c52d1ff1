#include <doctest.h>

#include <string>

#include "delaywave/config.hpp"
#include "delaywave/error.hpp"

using namespace delaywave;

namespace {

ErrorCode code_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error for: " << text);
  return ErrorCode::InvalidArgument;
}

std::string message_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("empty text gives the defaults") {
  const Config c = parse_config("");
  CHECK(c.kappa == 0.0);
  CHECK(c.a == 1.2);
  CHECK(c.b == 3.0);
  CHECK(c.L == 60.0);
  CHECK(c.n == 2401);
  CHECK(c.newton_tol == 1e-10);
  CHECK(c.max_iter == 40);
  CHECK(c.mode == ProfileMode::Pinned);
  CHECK(c.alpha == 0.5);
  CHECK(c.tau_max == 2.0);
  CHECK(c.dtau == 0.1);
  CHECK(c.L_sim == 150.0);
  CHECK(c.dx == 0.05);
  CHECK(c.dt_target == 0.01);
  CHECK(c.t_final == 200.0);
  CHECK(c.xi_max == 20.0);
  CHECK(c.n_xi == 4001);
  CHECK(c.tau == 0.0);
}

TEST_CASE("sections, comments and values") {
  const Config c = parse_config(
      "# family B\n"
      "[function]\n"
      "kappa = 0.5\n"
      "  a=0.8\n"
      "b = 2.6\n"
      "\n"
      "[profile]\n"
      "mode = operator\n"
      "n = 1201\r\n"
      "; another comment\n"
      "[sim]\n"
      "t_final = 50");
  CHECK(c.kappa == 0.5);
  CHECK(c.b == 2.6);
  CHECK(c.mode == ProfileMode::Operator);
  CHECK(c.n == 1201);
  CHECK(c.t_final == 50.0);
}

TEST_CASE("malformed and out-of-domain values") {
  CHECK(code_of("[function]\nkappa = -1\n") == ErrorCode::ParseError);
  CHECK(code_of("[function]\nkappa = 1\n") == ErrorCode::ParseError);
  CHECK(code_of("[function]\na = 0\n") == ErrorCode::ParseError);
  CHECK(code_of("[function]\na = abc\n") == ErrorCode::ParseError);
  CHECK(code_of("[function]\na = inf\n") == ErrorCode::ParseError);
  CHECK(code_of("[function]\na = nan\n") == ErrorCode::ParseError);
  CHECK(code_of("[profile]\nn = 2400\n") == ErrorCode::ParseError);
  CHECK(code_of("[profile]\nn = 24.5\n") == ErrorCode::ParseError);
  CHECK(code_of("[profile]\nmode = fancy\n") == ErrorCode::ParseError);
  CHECK(code_of("[profile]\nalpha = 1\n") == ErrorCode::ParseError);
  CHECK(code_of("[function\n") == ErrorCode::ParseError);
  CHECK(code_of("[function]\nkappa\n") == ErrorCode::ParseError);
  CHECK(code_of("[function]\nkappa =\n") == ErrorCode::ParseError);
  CHECK(message_of("[function]\n\nkappa = -1\n").find("line 3, column 9") != std::string::npos);
  CHECK(message_of("[function]\n  a = x\n").find("line 2, column 7") != std::string::npos);
}

TEST_CASE("unknown keys and sections") {
  CHECK(code_of("[function]\nkapa = 0.1\n") == ErrorCode::UnknownKey);
  CHECK(code_of("[solver]\n") == ErrorCode::UnknownKey);
  CHECK(code_of("kappa = 0.1\n") == ErrorCode::UnknownKey);
  CHECK(message_of("[function]\n\n\nkapa = 0.1\n").find("line 4") != std::string::npos);
  // tau comes only from the command line
  CHECK(code_of("[continuation]\ntau = 1\n") == ErrorCode::UnknownKey);
}

TEST_CASE("family presets") {
  Config c;
  apply_family_preset(c, "B");
  CHECK(c.kappa == 0.5);
  CHECK(c.a == 0.8);
  CHECK(c.b == 2.6);
  apply_family_preset(c, "C");
  CHECK(c.a == 1.05);
  CHECK_THROWS_AS(apply_family_preset(c, "D"), Error);
}

TEST_CASE("missing file") {
  try {
    load_config("/nonexistent/delaywave.ini");
    FAIL("expected IoError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IoError);
  }
}

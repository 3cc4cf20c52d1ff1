// Exercises the shared library through its C header only.
#include <doctest.h>

#include <cstring>
#include <string>

#include "delaywave/delaywave.h"

TEST_CASE("status names and exit codes") {
  CHECK(std::string(dw_status_name(DW_OK)) == "ok");
  CHECK(std::string(dw_status_name(DW_PARSE_ERROR)) == "parse_error");
  CHECK(std::string(dw_status_name(DW_UNKNOWN_COMMAND)) == "unknown_command");
  CHECK(std::string(dw_status_name(DW_INTERNAL)) == "internal");
  CHECK(dw_status_exit_code(DW_OK) == 0);
  CHECK(dw_status_exit_code(DW_UNKNOWN_KEY) == 2);
  CHECK(dw_status_exit_code(DW_NO_CONVERGENCE) == 1);
  CHECK(dw_status_exit_code(DW_BLOW_UP) == 1);
}

TEST_CASE("config handles") {
  dw_config* c = nullptr;
  REQUIRE(dw_config_default(&c) == DW_OK);
  double tau = -1.0;
  CHECK(dw_config_get_tau(c, &tau) == DW_OK);
  CHECK(tau == 0.0);
  CHECK(dw_config_set_tau(c, 0.75) == DW_OK);
  CHECK(dw_config_get_tau(c, &tau) == DW_OK);
  CHECK(tau == 0.75);
  CHECK(dw_config_set_tau(c, -1.0) == DW_INVALID_ARGUMENT);
  CHECK(dw_config_set_family(c, "B") == DW_OK);
  CHECK(dw_config_set_family(c, "Z") == DW_INVALID_ARGUMENT);
  CHECK(std::strstr(dw_last_error(), "Z") != nullptr);
  dw_config_free(c);
  dw_config_free(nullptr);

  dw_config* bad = nullptr;
  CHECK(dw_config_parse("[function]\nkappa = -1\n", &bad) == DW_PARSE_ERROR);
  CHECK(bad == nullptr);
  CHECK(std::strstr(dw_last_error(), "line 2") != nullptr);
  CHECK(dw_config_parse("[nope]\n", &bad) == DW_UNKNOWN_KEY);
  CHECK(dw_config_load("/nonexistent/x.ini", &bad) == DW_IO_ERROR);
  CHECK(dw_config_parse(nullptr, &bad) == DW_INVALID_ARGUMENT);
}

TEST_CASE("running commands") {
  dw_config* c = nullptr;
  REQUIRE(dw_config_parse("[function]\nkappa = 0\na = 1.2\nb = 3\n", &c) == DW_OK);
  dw_summary* s = nullptr;
  REQUIRE(dw_run("validate", c, nullptr, &s) == DW_OK);
  CHECK(dw_summary_exit_status(s) == 0);
  CHECK(dw_summary_size(s) > 9);
  CHECK(std::string(dw_summary_key(s, 0)) == "w0");
  CHECK(std::string(dw_summary_find(s, "all_passed")) == "true");
  CHECK(dw_summary_find(s, "nope") == nullptr);
  CHECK(dw_summary_key(s, 1000) == nullptr);
  CHECK(dw_summary_artifact_count(s) == 0);
  dw_summary_free(s);

  s = nullptr;
  CHECK(dw_run("fly", c, "", &s) == DW_UNKNOWN_COMMAND);
  CHECK(s == nullptr);
  CHECK(std::strstr(dw_last_error(), "fly") != nullptr);
  dw_config_free(c);
}

TEST_CASE("non-delayed speed") {
  double c = 0.0;
  CHECK(dw_nondelayed_speed(0.0, 1.2, 3.0, &c) == DW_OK);
  CHECK(c < 0.0);
  CHECK(dw_nondelayed_speed(0.0, 1.05, 2.2, &c) == DW_OK);
  CHECK(c > 0.0);
  CHECK(dw_nondelayed_speed(0.0, 0.5, 3.0, &c) == DW_INVALID_ARGUMENT);
  CHECK(dw_nondelayed_speed(0.0, 1.2, 3.0, nullptr) == DW_INVALID_ARGUMENT);
}

#include "delaywave/delaywave.h"

#include <cstring>
#include <exception>
#include <string>

#include "delaywave/config.hpp"
#include "delaywave/driver.hpp"
#include "delaywave/error.hpp"
#include "delaywave/scalar_wave.hpp"

struct dw_config {
  delaywave::Config config;
};

struct dw_summary {
  delaywave::RunSummary summary;
};

namespace {

thread_local std::string last_error;

template <typename Body>
dw_status guarded(Body&& body) noexcept {
  try {
    body();
    last_error.clear();
    return DW_OK;
  } catch (const delaywave::Error& e) {
    last_error = e.what();
    return static_cast<dw_status>(static_cast<int>(e.code()));
  } catch (const std::exception& e) {
    last_error = e.what();
    return DW_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return DW_INTERNAL;
  }
}

dw_status null_argument(const char* what) noexcept {
  last_error = std::string(what) + " must not be null";
  return DW_INVALID_ARGUMENT;
}

}  // namespace

extern "C" {

const char* dw_status_name(dw_status status) {
  if (status == DW_OK) return "ok";
  if (status == DW_INTERNAL) return "internal";
  if (status >= DW_INVALID_ARGUMENT && status <= DW_IO_ERROR) {
    return delaywave::error_code_name(static_cast<delaywave::ErrorCode>(status)).data();
  }
  return "unknown_status";
}

int dw_status_exit_code(dw_status status) {
  switch (status) {
    case DW_OK:
      return 0;
    case DW_INVALID_ARGUMENT:
    case DW_PARSE_ERROR:
    case DW_UNKNOWN_KEY:
    case DW_UNKNOWN_COMMAND:
    case DW_IO_ERROR:
      return 2;
    default:
      return 1;
  }
}

const char* dw_last_error(void) { return last_error.c_str(); }

dw_status dw_config_default(dw_config** out) {
  if (!out) return null_argument("out");
  return guarded([&] { *out = new dw_config{}; });
}

dw_status dw_config_parse(const char* text, dw_config** out) {
  if (!text) return null_argument("text");
  if (!out) return null_argument("out");
  return guarded([&] { *out = new dw_config{delaywave::parse_config(text)}; });
}

dw_status dw_config_load(const char* path, dw_config** out) {
  if (!path) return null_argument("path");
  if (!out) return null_argument("out");
  return guarded([&] { *out = new dw_config{delaywave::load_config(path)}; });
}

dw_status dw_config_set_family(dw_config* config, const char* name) {
  if (!config) return null_argument("config");
  if (!name) return null_argument("name");
  return guarded([&] { delaywave::apply_family_preset(config->config, name); });
}

dw_status dw_config_set_tau(dw_config* config, double tau) {
  if (!config) return null_argument("config");
  return guarded([&] {
    if (!(tau >= 0.0) || tau > 1e6) {
      throw delaywave::Error(delaywave::ErrorCode::InvalidArgument,
                             "tau must be finite and >= 0");
    }
    config->config.tau = tau;
  });
}

dw_status dw_config_get_tau(const dw_config* config, double* tau) {
  if (!config) return null_argument("config");
  if (!tau) return null_argument("tau");
  *tau = config->config.tau;
  return DW_OK;
}

void dw_config_free(dw_config* config) { delete config; }

dw_status dw_run(const char* command, const dw_config* config, const char* out_dir,
                 dw_summary** out) {
  if (!command) return null_argument("command");
  if (!config) return null_argument("config");
  if (!out) return null_argument("out");
  *out = nullptr;
  return guarded([&] {
    auto summary = delaywave::run_command(command, config->config, out_dir ? out_dir : "");
    *out = new dw_summary{std::move(summary)};
  });
}

int dw_summary_exit_status(const dw_summary* summary) {
  return summary ? summary->summary.exit_status : 2;
}

size_t dw_summary_size(const dw_summary* summary) {
  return summary ? summary->summary.entries.size() : 0;
}

const char* dw_summary_key(const dw_summary* summary, size_t index) {
  if (!summary || index >= summary->summary.entries.size()) return nullptr;
  return summary->summary.entries[index].first.c_str();
}

const char* dw_summary_value(const dw_summary* summary, size_t index) {
  if (!summary || index >= summary->summary.entries.size()) return nullptr;
  return summary->summary.entries[index].second.c_str();
}

const char* dw_summary_find(const dw_summary* summary, const char* key) {
  if (!summary || !key) return nullptr;
  for (const auto& [k, v] : summary->summary.entries) {
    if (k == key) return v.c_str();
  }
  return nullptr;
}

size_t dw_summary_artifact_count(const dw_summary* summary) {
  return summary ? summary->summary.artifacts.size() : 0;
}

const char* dw_summary_artifact(const dw_summary* summary, size_t index) {
  if (!summary || index >= summary->summary.artifacts.size()) return nullptr;
  return summary->summary.artifacts[index].c_str();
}

void dw_summary_free(dw_summary* summary) { delete summary; }

dw_status dw_nondelayed_speed(double kappa, double a, double b, double* c) {
  if (!c) return null_argument("c");
  return guarded([&] {
    const auto f = delaywave::make_family(kappa, a, b);
    *c = delaywave::solve_nondelayed(delaywave::Reaction::from_response(f)).c;
  });
}

}  // extern "C"

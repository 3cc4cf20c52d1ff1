#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "delaywave/config.hpp"

namespace delaywave {

struct RunSummary {
  std::vector<std::pair<std::string, std::string>> entries;  ///< in emission order
  int exit_status = 0;  ///< 0 ok, 1 a check or condition failed
  std::vector<std::string> artifacts;

  void add(std::string key, std::string value);
  void add(std::string key, double value);  ///< 17 significant digits
  void add(std::string key, bool value);    ///< true / false
  void add(std::string key, long long value);
};

/// Dispatches `validate`, `wave0`, `wave`, `sweep`, `spectrum`, `simulate` or
/// `check`. CSV artifacts go to `out_dir` (none if empty); the directory is
/// created if missing. Module errors propagate as Error; an unknown name
/// throws Error(UnknownCommand).
RunSummary run_command(std::string_view name, const Config& config, const std::string& out_dir);

/// One "key=value" line per entry.
std::string format_summary(const RunSummary& summary);

}  // namespace delaywave

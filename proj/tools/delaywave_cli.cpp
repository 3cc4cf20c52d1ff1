// delaywave <command> [--config path] [--out-dir dir] [--tau value] [--family A|B|C]
#include <cstdio>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "delaywave/delaywave.h"

namespace {

struct ConfigDeleter {
  void operator()(dw_config* c) const noexcept { dw_config_free(c); }
};
struct SummaryDeleter {
  void operator()(dw_summary* s) const noexcept { dw_summary_free(s); }
};

std::string one_line(std::string text) {
  for (char& ch : text) {
    if (ch == '\n' || ch == '\r') ch = ' ';
  }
  return text;
}

int fail(dw_status status) {
  std::fprintf(stderr, "error=%s message=%s\n", dw_status_name(status),
               one_line(dw_last_error()).c_str());
  return dw_status_exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monotone traveling waves of the delayed bistable equation"};
  std::string command;
  std::string config_path;
  std::string out_dir = ".";
  std::optional<double> tau;
  std::string family;
  app.add_option("command", command,
                 "validate | wave0 | wave | sweep | spectrum | simulate | check")
      ->required();
  app.add_option("--config", config_path, "INI configuration file");
  app.add_option("--out-dir", out_dir, "directory for CSV artifacts")->capture_default_str();
  app.add_option("--tau", tau, "delay (default 0)");
  app.add_option("--family", family, "preset response function")
      ->check(CLI::IsMember({"A", "B", "C"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error=usage message=%s\n", one_line(e.what()).c_str());
    return 2;
  }

  dw_config* raw = nullptr;
  dw_status st = config_path.empty() ? dw_config_default(&raw) : dw_config_load(config_path.c_str(), &raw);
  if (st != DW_OK) return fail(st);
  const std::unique_ptr<dw_config, ConfigDeleter> config(raw);
  if (!family.empty() && (st = dw_config_set_family(config.get(), family.c_str())) != DW_OK) {
    return fail(st);
  }
  if (tau && (st = dw_config_set_tau(config.get(), *tau)) != DW_OK) return fail(st);

  dw_summary* raw_summary = nullptr;
  st = dw_run(command.c_str(), config.get(), out_dir.c_str(), &raw_summary);
  if (st != DW_OK) return fail(st);
  const std::unique_ptr<dw_summary, SummaryDeleter> summary(raw_summary);
  for (size_t i = 0; i < dw_summary_size(summary.get()); ++i) {
    std::printf("%s=%s\n", dw_summary_key(summary.get(), i), dw_summary_value(summary.get(), i));
  }
  return dw_summary_exit_status(summary.get());
}

#pragma once

#include <string>
#include <string_view>

#include "delaywave/profile.hpp"

namespace delaywave {

struct Config {
  // [function]
  double kappa = 0.0;
  double a = 1.2;
  double b = 3.0;
  // [profile]
  double L = 60.0;
  std::size_t n = 2401;
  double newton_tol = 1e-10;
  int max_iter = 40;
  ProfileMode mode = ProfileMode::Pinned;
  double alpha = 0.5;
  // [continuation]
  double tau_max = 2.0;
  double dtau = 0.1;
  // [sim]
  double L_sim = 150.0;
  double dx = 0.05;
  double dt_target = 0.01;
  double t_final = 200.0;
  // [spectrum]
  double xi_max = 20.0;
  std::size_t n_xi = 4001;

  /// Delay used by `wave`, `spectrum` and `simulate`; only set from the command line.
  double tau = 0.0;
};

/// INI text: `[section]` headers, `key = value` lines, `#` or `;` comments.
/// Omitted keys keep their defaults (family A). Throws Error(ParseError) with
/// line and column for malformed lines and out-of-domain values, and
/// Error(UnknownKey) for unknown sections or keys.
Config parse_config(std::string_view text);

/// Reads and parses a file. Throws Error(IoError) if it cannot be read.
Config load_config(const std::string& path);

/// Applies preset "A" (0, 1.2, 3), "B" (0.5, 0.8, 2.6) or "C" (0, 1.05, 2.2).
/// Throws Error(InvalidArgument) for any other name.
void apply_family_preset(Config& config, std::string_view name);

}  // namespace delaywave

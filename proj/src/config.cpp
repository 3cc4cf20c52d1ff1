#include "delaywave/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "delaywave/error.hpp"

namespace delaywave {
namespace {

struct Location {
  std::size_t line;
  std::size_t column;
};

[[noreturn]] void parse_error(Location at, const std::string& what) {
  throw Error(ErrorCode::ParseError, fmt::format("line {}, column {}: {}", at.line, at.column, what));
}

double parse_real(std::string_view token, Location at) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || end != token.data() + token.size() || !std::isfinite(value)) {
    parse_error(at, fmt::format("'{}' is not a finite decimal", token));
  }
  return value;
}

long long parse_integer(std::string_view token, Location at) {
  long long value = 0;
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || end != token.data() + token.size()) {
    parse_error(at, fmt::format("'{}' is not an integer", token));
  }
  return value;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

using Setter = std::function<void(Config&, std::string_view, Location)>;

Setter real(double Config::*field, std::function<bool(double)> ok, const char* domain) {
  return [=](Config& c, std::string_view token, Location at) {
    const double v = parse_real(token, at);
    if (!ok(v)) parse_error(at, fmt::format("value {} outside domain {}", v, domain));
    c.*field = v;
  };
}

bool positive(double v) { return v > 0.0; }

const std::map<std::string, std::map<std::string, Setter>>& schema() {
  static const std::map<std::string, std::map<std::string, Setter>> table = {
      {"function",
       {{"kappa", real(&Config::kappa, [](double v) { return v >= 0.0 && v < 1.0; }, "[0, 1)")},
        {"a", real(&Config::a, positive, "(0, inf)")},
        {"b", real(&Config::b, [](double) { return true; }, "R")}}},
      {"profile",
       {{"L", real(&Config::L, positive, "(0, inf)")},
        {"n",
         [](Config& c, std::string_view token, Location at) {
           const long long v = parse_integer(token, at);
           if (v < 5 || v % 2 == 0) parse_error(at, fmt::format("n={} must be odd and >= 5", v));
           c.n = static_cast<std::size_t>(v);
         }},
        {"newton_tol", real(&Config::newton_tol, positive, "(0, inf)")},
        {"max_iter",
         [](Config& c, std::string_view token, Location at) {
           const long long v = parse_integer(token, at);
           if (v < 1 || v > 10000) parse_error(at, fmt::format("max_iter={} outside [1, 10000]", v));
           c.max_iter = static_cast<int>(v);
         }},
        {"mode",
         [](Config& c, std::string_view token, Location at) {
           if (token == "pinned") {
             c.mode = ProfileMode::Pinned;
           } else if (token == "operator") {
             c.mode = ProfileMode::Operator;
           } else {
             parse_error(at, fmt::format("mode '{}' is not pinned or operator", token));
           }
         }},
        {"alpha", real(&Config::alpha, [](double v) { return v > 0.0 && v < 1.0; }, "(0, 1)")}}},
      {"continuation",
       {{"tau_max", real(&Config::tau_max, [](double v) { return v >= 0.0; }, "[0, inf)")},
        {"dtau", real(&Config::dtau, positive, "(0, inf)")}}},
      {"sim",
       {{"L_sim", real(&Config::L_sim, positive, "(0, inf)")},
        {"dx", real(&Config::dx, positive, "(0, inf)")},
        {"dt_target", real(&Config::dt_target, positive, "(0, inf)")},
        {"t_final", real(&Config::t_final, positive, "(0, inf)")}}},
      {"spectrum",
       {{"xi_max", real(&Config::xi_max, positive, "(0, inf)")},
        {"n_xi",
         [](Config& c, std::string_view token, Location at) {
           const long long v = parse_integer(token, at);
           if (v < 2) parse_error(at, fmt::format("n_xi={} must be >= 2", v));
           c.n_xi = static_cast<std::size_t>(v);
         }}}},
  };
  return table;
}

}  // namespace

Config parse_config(std::string_view text) {
  Config config;
  const std::map<std::string, Setter>* section = nullptr;
  std::string section_name;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    const std::string_view line = trim(raw);
    const std::size_t indent = raw.find_first_not_of(" \t") + 1;
    if (line.empty() || line.front() == '#' || line.front() == ';') {
      if (end == text.size()) break;
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']') parse_error({line_no, indent}, "unterminated section header");
      section_name = std::string(trim(line.substr(1, line.size() - 2)));
      const auto it = schema().find(section_name);
      if (it == schema().end()) {
        throw Error(ErrorCode::UnknownKey,
                    fmt::format("line {}: unknown section [{}]", line_no, section_name));
      }
      section = &it->second;
    } else {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) parse_error({line_no, indent}, "expected 'key = value'");
      const std::string key(trim(line.substr(0, eq)));
      std::string_view value = line.substr(eq + 1);
      const std::size_t value_offset = value.find_first_not_of(" \t");
      value = trim(value);
      const Location value_at{line_no, indent + eq + 1 + (value_offset == std::string_view::npos ? 0 : value_offset)};
      if (key.empty()) parse_error({line_no, indent}, "missing key");
      if (value.empty()) parse_error(value_at, fmt::format("missing value for '{}'", key));
      if (section == nullptr) {
        throw Error(ErrorCode::UnknownKey,
                    fmt::format("line {}: key '{}' outside any section", line_no, key));
      }
      const auto it = section->find(key);
      if (it == section->end()) {
        throw Error(ErrorCode::UnknownKey,
                    fmt::format("line {}: unknown key '{}' in [{}]", line_no, key, section_name));
      }
      it->second(config, value, value_at);
    }
    if (end == text.size()) break;
  }
  return config;
}

Config load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, fmt::format("cannot read config '{}'", path));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

void apply_family_preset(Config& config, std::string_view name) {
  if (name == "A") {
    config.kappa = 0.0;
    config.a = 1.2;
    config.b = 3.0;
  } else if (name == "B") {
    config.kappa = 0.5;
    config.a = 0.8;
    config.b = 2.6;
  } else if (name == "C") {
    config.kappa = 0.0;
    config.a = 1.05;
    config.b = 2.2;
  } else {
    throw Error(ErrorCode::InvalidArgument, fmt::format("unknown family preset '{}'", name));
  }
}

}  // namespace delaywave

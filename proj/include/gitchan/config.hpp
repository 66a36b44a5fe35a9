// Copyright 2026 The git-channel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Flat run configuration: one `key = value` per line, `#` starts a comment.
// Rates in s^-1, temperatures in K.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <utility>
#include <vector>

#include "gitchan/errors.hpp"

namespace gitchan::io {

/// Every key any subcommand understands. Anything else is rejected.
inline const std::vector<std::string_view>& known_keys() {
  static const std::vector<std::string_view> keys{
      // symmetric systems
      "omega_B", "gamma", "kappa", "g", "lambda", "temperature_K", "N_T",
      // asymmetric systems
      "omega_B_1", "gamma_1", "kappa_1", "g_1", "Delta_1", "temperature_K_1", "N_T_1",
      "omega_B_2", "gamma_2", "kappa_2", "g_2", "Delta_2", "temperature_K_2", "N_T_2", "tune",
      // spectrum
      "omega_min", "omega_max", "n_points",
      // map
      "radius", "density", "distance", "omega_B_min", "omega_B_max", "Q_min", "Q_max", "n_omega",
      "n_Q", "omega_A", "figure",
      // protocol
      "protocol", "probe_amplitude", "shots", "N_in", "n_inputs", "sampling", "squeezing",
      "k_sigma", "omega",
      // check
      "margin_factor",
      // run
      "seed", "workers"};
  return keys;
}

inline bool is_known_key(std::string_view k) {
  const auto& keys = known_keys();
  return std::find(keys.begin(), keys.end(), k) != keys.end();
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

class Config {
 public:
  /// Parses the text; `source` names it in error messages.
  static Config parse(std::string_view text, std::string_view source = "config") {
    Config c;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto nl = text.find('\n', pos);
      std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      line = detail::trim(line);
      if (line.empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigError(std::string(source) + ":" + std::to_string(line_no) +
                          ": expected 'key = value'");
      }
      const auto key = detail::trim(line.substr(0, eq));
      const auto value = detail::trim(line.substr(eq + 1));
      if (key.empty() || value.empty()) {
        throw ConfigError(std::string(source) + ":" + std::to_string(line_no) +
                          ": expected 'key = value'");
      }
      if (c.has(key)) {
        throw ConfigError(std::string(source) + ":" + std::to_string(line_no) + ": duplicate key '" +
                          std::string(key) + "'");
      }
      c.set(key, value);
    }
    return c;
  }

  static Config load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.string());
  }

  /// Rejects keys no subcommand understands, naming the first offender.
  void require_known() const {
    for (const auto& [k, v] : entries_) {
      if (!is_known_key(k)) throw ConfigError("unknown config key '" + k + "'");
    }
  }

  /// Applies `key=value`; the key replaces any earlier value.
  void apply_override(std::string_view kv) {
    const auto eq = kv.find('=');
    const auto key = detail::trim(kv.substr(0, eq));
    if (eq == std::string_view::npos || key.empty() || detail::trim(kv.substr(eq + 1)).empty()) {
      throw ConfigError("override must look like key=value, got '" + std::string(kv) + "'");
    }
    if (!is_known_key(key)) throw ConfigError("unknown config key '" + std::string(key) + "'");
    set(key, detail::trim(kv.substr(eq + 1)));
  }

  void set(std::string_view key, std::string_view value) {
    for (auto& [k, v] : entries_) {
      if (k == key) {
        v = std::string(value);
        return;
      }
    }
    entries_.emplace_back(std::string(key), std::string(value));
  }

  void erase(std::string_view key) {
    std::erase_if(entries_, [&](const auto& e) { return e.first == key; });
  }

  bool has(std::string_view key) const { return find(key) != nullptr; }

  std::optional<std::string> get(std::string_view key) const {
    if (const auto* v = find(key)) return *v;
    return std::nullopt;
  }

  std::string text(std::string_view key) const {
    if (const auto* v = find(key)) return *v;
    throw ConfigError("missing config key '" + std::string(key) + "'");
  }

  double number(std::string_view key) const { return to_number(key, text(key)); }

  double number_or(std::string_view key, double fallback) const {
    const auto* v = find(key);
    return v ? to_number(key, *v) : fallback;
  }

  std::uint64_t count_or(std::string_view key, std::uint64_t fallback) const {
    const auto* v = find(key);
    if (!v) return fallback;
    std::uint64_t out = 0;
    const auto res = std::from_chars(v->data(), v->data() + v->size(), out);
    if (res.ec != std::errc() || res.ptr != v->data() + v->size()) {
      throw ConfigError("config key '" + std::string(key) + "' must be a non-negative integer, got '" +
                        *v + "'");
    }
    return out;
  }

  bool flag_or(std::string_view key, bool fallback) const {
    const auto* v = find(key);
    if (!v) return fallback;
    if (*v == "true" || *v == "1" || *v == "yes") return true;
    if (*v == "false" || *v == "0" || *v == "no") return false;
    throw ConfigError("config key '" + std::string(key) + "' must be true or false, got '" + *v + "'");
  }

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  /// Same format as the input, in key order of first appearance.
  std::string serialize() const {
    std::string out;
    for (const auto& [k, v] : entries_) out += k + " = " + v + "\n";
    return out;
  }

 private:
  const std::string* find(std::string_view key) const {
    for (const auto& [k, v] : entries_)
      if (k == key) return &v;
    return nullptr;
  }

  static double to_number(std::string_view key, const std::string& v) {
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
      throw ConfigError("config key '" + std::string(key) + "' must be a number, got '" + v + "'");
    }
    return out;
  }

  std::vector<std::pair<std::string, std::string>> entries_;
};

}  // namespace gitchan::io

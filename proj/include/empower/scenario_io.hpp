#pragma once

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The empower-blockworld Authors

// Text formats for scenarios and traces.
//
// Scenario files are UTF-8 lines of `key = value`; '#' starts a comment.
//
//   name            = exp3
//   dims            = 8 3 7          # width depth height
//   earth_slab      = 0 3            # z range, repeatable
//   earth           = x y z          # repeatable, applied after slabs
//   empty           = x y z          # repeatable, applied after earth
//   lava            = 7 2 4          # repeatable, applied last
//   lava_period     = 5              # or "none"
//   agent           = 0 0 4
//   embodiment      = climbing       # climbing | nonclimbing | flying
//   horizon         = 15
//   samples         = 1000
//   turns           = 300
//   seed            = 1
//   snapshot_every  = 0
//   counterfactuals = false
//
// Unset keys keep their defaults. `dims` and `agent` are required.

#include <charconv>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>

#include "empower/errors.hpp"
#include "empower/scenarios.hpp"

namespace empower {

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

template <typename T>
T parse_number(const std::string& text, const std::string& key) {
  T v{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw ConfigError("config: bad number for " + key + ": " + text);
  return v;
}

inline std::vector<int> parse_ints(const std::string& value, std::size_t count,
                                   const std::string& key) {
  std::istringstream in(value);
  std::vector<int> out;
  std::string tok;
  while (in >> tok) out.push_back(parse_number<int>(tok, key));
  if (out.size() != count) {
    throw ConfigError("config: " + key + " expects " + std::to_string(count) + " integers");
  }
  return out;
}

inline Vec3 parse_vec(const std::string& value, const std::string& key) {
  const auto v = parse_ints(value, 3, key);
  return {v[0], v[1], v[2]};
}

}  // namespace detail

inline ScenarioConfig read_config(std::istream& in) {
  ScenarioConfig c;
  c.earth_slabs.clear();
  bool have_dims = false;
  bool have_agent = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = detail::trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = detail::trim(std::string_view(body).substr(0, eq));
    const std::string value = detail::trim(std::string_view(body).substr(eq + 1));

    if (key == "name") {
      c.name = value;
    } else if (key == "dims") {
      const auto v = detail::parse_ints(value, 3, key);
      c.dims = {v[0], v[1], v[2]};
      have_dims = true;
    } else if (key == "earth_slab") {
      const auto v = detail::parse_ints(value, 2, key);
      c.earth_slabs.push_back({v[0], v[1]});
    } else if (key == "earth") {
      c.earth_cells.push_back(detail::parse_vec(value, key));
    } else if (key == "empty") {
      c.empty_cells.push_back(detail::parse_vec(value, key));
    } else if (key == "lava") {
      c.lava_cells.push_back(detail::parse_vec(value, key));
    } else if (key == "lava_period") {
      if (value == "none") {
        c.lava_period.reset();
      } else {
        c.lava_period = detail::parse_number<std::uint32_t>(value, key);
      }
    } else if (key == "agent") {
      c.agent_start = detail::parse_vec(value, key);
      have_agent = true;
    } else if (key == "embodiment") {
      const auto e = parse_embodiment(value);
      if (!e) throw ConfigError("config: unknown embodiment " + value);
      c.embodiment = *e;
    } else if (key == "horizon") {
      c.horizon = detail::parse_number<int>(value, key);
    } else if (key == "samples") {
      c.samples = detail::parse_number<int>(value, key);
    } else if (key == "turns") {
      c.turns = detail::parse_number<int>(value, key);
    } else if (key == "seed") {
      c.seed = detail::parse_number<std::uint64_t>(value, key);
    } else if (key == "snapshot_every") {
      c.snapshot_every = detail::parse_number<int>(value, key);
    } else if (key == "counterfactuals") {
      if (value != "true" && value != "false") throw ConfigError("config: counterfactuals must be true or false");
      c.counterfactuals = value == "true";
    } else {
      throw ConfigError("config line " + std::to_string(lineno) + ": unknown key " + key);
    }
  }
  if (!have_dims) throw ConfigError("config: missing dims");
  if (!have_agent) throw ConfigError("config: missing agent");
  c.validate();
  return c;
}

inline ScenarioConfig read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open scenario file " + path);
  return read_config(in);
}

/// Canonical form; `read_config(write_config(c)) == c`.
inline std::string write_config(const ScenarioConfig& c) {
  std::ostringstream out;
  auto vec = [&](const char* key, Vec3 p) { out << key << " = " << p.x << ' ' << p.y << ' ' << p.z << '\n'; };
  out << "name = " << c.name << '\n';
  out << "dims = " << c.dims.width << ' ' << c.dims.depth << ' ' << c.dims.height << '\n';
  for (const auto& s : c.earth_slabs) out << "earth_slab = " << s.z_min << ' ' << s.z_max << '\n';
  for (Vec3 p : c.earth_cells) vec("earth", p);
  for (Vec3 p : c.empty_cells) vec("empty", p);
  for (Vec3 p : c.lava_cells) vec("lava", p);
  out << "lava_period = " << (c.lava_period ? std::to_string(*c.lava_period) : "none") << '\n';
  vec("agent", c.agent_start);
  out << "embodiment = " << to_string(c.embodiment) << '\n';
  out << "horizon = " << c.horizon << '\n';
  out << "samples = " << c.samples << '\n';
  out << "turns = " << c.turns << '\n';
  out << "seed = " << c.seed << '\n';
  out << "snapshot_every = " << c.snapshot_every << '\n';
  out << "counterfactuals = " << (c.counterfactuals ? "true" : "false") << '\n';
  return out.str();
}

/// FNV-1a 64 of the canonical config text.
inline std::uint64_t config_hash(const ScenarioConfig& c) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : write_config(c)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  static constexpr char digits[] = "0123456789abcdef";
  for (int i = 15; i >= 0; --i, v >>= 4) buf[i] = digits[v & 0xF];
  buf[16] = '\0';
  return buf;
}

/// `# scenario=<name> seed=<seed> config_hash=<hex>`
inline std::string output_header(const ScenarioConfig& c) {
  return "# scenario=" + c.name + " seed=" + std::to_string(c.seed) +
         " config_hash=" + hex64(config_hash(c));
}

/// Header comment, column line, then one row per decision.
inline void write_trace(std::ostream& out, const ScenarioConfig& c,
                        const std::vector<TurnRecord>& trace) {
  out << output_header(c) << '\n';
  out << "turn,x,y,z,alive,chosen_action";
  for (Action a : action_set(c.embodiment)) out << ",count_" << to_string(a);
  if (c.counterfactuals) {
    for (Embodiment e : kAllEmbodiments) out << ",cf_" << to_string(e);
  }
  out << '\n';
  for (const auto& r : trace) {
    out << r.turn << ',' << r.position.x << ',' << r.position.y << ',' << r.position.z << ','
        << (r.alive ? 1 : 0) << ',' << to_string(r.chosen);
    for (auto n : r.action_counts) out << ',' << n;
    if (r.counterfactual) {
      for (auto n : *r.counterfactual) out << ',' << n;
    }
    out << '\n';
  }
}

inline std::string trace_text(const ScenarioConfig& c, const std::vector<TurnRecord>& trace) {
  std::ostringstream out;
  write_trace(out, c, trace);
  return out.str();
}

}  // namespace empower

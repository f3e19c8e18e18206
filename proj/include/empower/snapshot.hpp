#pragma once

// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The empower-blockworld Authors

// Voxel snapshot text format.
//
//   dims W D H turn T
//   <layer z = H-1>
//
//   <layer z = H-2>
//   ...
//
// Each layer is D lines (north row y = D-1 first) of W characters (x = 0 first):
// '.' empty, '#' earth, 'L' lava, 'A' live agent, 'a' dead agent. Inventory and
// lava period are not part of the snapshot.

#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "empower/blockworld.hpp"
#include "empower/errors.hpp"

namespace empower {

inline std::string to_snapshot(const WorldState& w) {
  const Dims d = w.dims();
  std::string out;
  out.reserve(static_cast<std::size_t>(d.volume() + d.depth * d.height + d.height + 48));
  out += "dims " + std::to_string(d.width) + ' ' + std::to_string(d.depth) + ' ' +
         std::to_string(d.height) + " turn " + std::to_string(w.turn()) + '\n';
  for (int z = d.height - 1; z >= 0; --z) {
    for (int y = d.depth - 1; y >= 0; --y) {
      for (int x = 0; x < d.width; ++x) {
        const Vec3 p{x, y, z};
        if (p == w.agent_pos()) {
          out += w.alive() ? 'A' : 'a';
          continue;
        }
        switch (w.cell(p)) {
          case Cell::Empty: out += '.'; break;
          case Cell::Earth: out += '#'; break;
          case Cell::Lava: out += 'L'; break;
        }
      }
      out += '\n';
    }
    if (z > 0) out += '\n';
  }
  return out;
}

inline WorldState parse_snapshot(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("snapshot: missing header");
  std::istringstream header(line);
  std::string dims_kw;
  std::string turn_kw;
  Dims d;
  long long turn = 0;
  if (!(header >> dims_kw >> d.width >> d.depth >> d.height >> turn_kw >> turn) ||
      dims_kw != "dims" || turn_kw != "turn" || d.width < 1 || d.depth < 1 || d.height < 1 ||
      turn < 0) {
    throw ConfigError("snapshot: header must read \"dims W D H turn T\"");
  }

  std::vector<Cell> cells(static_cast<std::size_t>(d.volume()), Cell::Empty);
  int agents = 0;
  Vec3 agent{};
  bool alive = true;
  for (int z = d.height - 1; z >= 0; --z) {
    for (int y = d.depth - 1; y >= 0; --y) {
      if (!std::getline(in, line)) throw ConfigError("snapshot: truncated layer data");
      if (static_cast<int>(line.size()) != d.width) {
        throw ConfigError("snapshot: row width does not match header");
      }
      for (int x = 0; x < d.width; ++x) {
        const std::size_t idx =
            static_cast<std::size_t>(x + d.width * (y + d.depth * z));
        switch (line[static_cast<std::size_t>(x)]) {
          case '.': break;
          case '#': cells[idx] = Cell::Earth; break;
          case 'L': cells[idx] = Cell::Lava; break;
          case 'A':
          case 'a':
            ++agents;
            agent = {x, y, z};
            alive = line[static_cast<std::size_t>(x)] == 'A';
            break;
          default: throw ConfigError("snapshot: unknown cell character");
        }
      }
    }
    if (z > 0 && (!std::getline(in, line) || !line.empty())) {
      throw ConfigError("snapshot: layers must be separated by a blank line");
    }
  }
  if (agents != 1) throw ConfigError("snapshot: expected exactly one agent");

  WorldState w(d, agent);
  for (int z = 0; z < d.height; ++z)
    for (int y = 0; y < d.depth; ++y)
      for (int x = 0; x < d.width; ++x) {
        const Cell c = cells[static_cast<std::size_t>(x + d.width * (y + d.depth * z))];
        if (c != Cell::Empty) w.set_cell({x, y, z}, c);
      }
  w.set_turn(static_cast<std::uint32_t>(turn));
  if (!alive) w.kill();
  return w;
}

inline WorldState parse_snapshot(const std::string& text) {
  std::istringstream in(text);
  return parse_snapshot(in);
}

}  // namespace empower

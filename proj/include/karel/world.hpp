// Copyright 2026 The kareldbg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef KAREL_WORLD_HPP_
#define KAREL_WORLD_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "json.hpp"
#include "karel/rng.hpp"

namespace karel {

inline constexpr int kMinGridSize = 2;
inline constexpr int kMaxGridSize = 18;
inline constexpr int kMaxMarkers = 10;
inline constexpr int kCellFeatures = 16;

// Row 0 is the top row: North decreases the row, East increases the column.
enum class Dir : std::uint8_t { kNorth, kEast, kSouth, kWest };

constexpr Dir turn_left(Dir d) {
  return static_cast<Dir>((static_cast<int>(d) + 3) % 4);
}
constexpr Dir turn_right(Dir d) {
  return static_cast<Dir>((static_cast<int>(d) + 1) % 4);
}
constexpr int dir_drow(Dir d) {
  return d == Dir::kNorth ? -1 : d == Dir::kSouth ? 1 : 0;
}
constexpr int dir_dcol(Dir d) {
  return d == Dir::kEast ? 1 : d == Dir::kWest ? -1 : 0;
}
constexpr char dir_letter(Dir d) { return "NESW"[static_cast<int>(d)]; }

struct Robot {
  int row = 0;
  int col = 0;
  Dir dir = Dir::kEast;

  friend bool operator==(const Robot&, const Robot&) = default;
};

// One Karel grid. Cells are stored densely: -1 marks an obstacle, otherwise
// the value is the marker count in [0, 10].
class WorldState {
 public:
  static constexpr std::int8_t kObstacle = -1;

  WorldState() : WorldState(kMinGridSize, kMinGridSize, Robot{}) {}
  WorldState(int height, int width, Robot robot)
      : height_(height),
        width_(width),
        robot_(robot),
        cells_(static_cast<std::size_t>(height * width), 0) {
    if (height < kMinGridSize || height > kMaxGridSize ||
        width < kMinGridSize || width > kMaxGridSize) {
      throw std::invalid_argument("grid dimensions must lie in [2, 18]");
    }
  }

  int height() const { return height_; }
  int width() const { return width_; }
  const Robot& robot() const { return robot_; }
  Robot& robot() { return robot_; }

  bool in_bounds(int r, int c) const {
    return r >= 0 && r < height_ && c >= 0 && c < width_;
  }
  bool obstacle(int r, int c) const { return cell(r, c) == kObstacle; }
  int markers(int r, int c) const {
    const int v = cell(r, c);
    return v == kObstacle ? 0 : v;
  }

  void set_obstacle(int r, int c, bool on) {
    cell_ref(r, c) = on ? kObstacle : 0;
  }
  void set_markers(int r, int c, int count) {
    cell_ref(r, c) = static_cast<std::int8_t>(count);
  }

  // Sorted (row, col) lists; the canonical enumeration order for export.
  std::vector<std::pair<int, int>> obstacle_cells() const {
    std::vector<std::pair<int, int>> out;
    for (int r = 0; r < height_; ++r)
      for (int c = 0; c < width_; ++c)
        if (obstacle(r, c)) out.emplace_back(r, c);
    return out;
  }
  std::vector<std::array<int, 3>> marker_cells() const {
    std::vector<std::array<int, 3>> out;
    for (int r = 0; r < height_; ++r)
      for (int c = 0; c < width_; ++c)
        if (markers(r, c) > 0) out.push_back({r, c, markers(r, c)});
    return out;
  }

  // Empty when every invariant holds, otherwise a description of the first
  // violation found.
  std::optional<std::string> validate() const {
    if (!in_bounds(robot_.row, robot_.col)) return "robot out of bounds";
    if (obstacle(robot_.row, robot_.col)) return "robot on an obstacle";
    for (auto v : cells_) {
      if (v < kObstacle || v > kMaxMarkers) return "marker count out of range";
    }
    return std::nullopt;
  }

  friend bool operator==(const WorldState&, const WorldState&) = default;

 private:
  std::int8_t cell(int r, int c) const {
    return cells_[static_cast<std::size_t>(r * width_ + c)];
  }
  std::int8_t& cell_ref(int r, int c) {
    return cells_[static_cast<std::size_t>(r * width_ + c)];
  }

  int height_;
  int width_;
  Robot robot_;
  std::vector<std::int8_t> cells_;
};

// Table of per-cell features, in order: facing N, E, S, W; obstacle; grid
// boundary; 1..10 markers (one-hot). Cells outside the grid have only the
// boundary feature set.
inline std::array<float, kCellFeatures> encode_cell(const WorldState& w, int r,
                                                    int c) {
  std::array<float, kCellFeatures> f{};
  if (!w.in_bounds(r, c)) {
    f[5] = 1.0f;
    return f;
  }
  const Robot& robot = w.robot();
  if (robot.row == r && robot.col == c) f[static_cast<int>(robot.dir)] = 1.0f;
  if (w.obstacle(r, c)) f[4] = 1.0f;
  const int m = w.markers(r, c);
  if (m > 0) f[5 + m] = 1.0f;
  return f;
}

// ASCII dump: '#' obstacle, '.' empty, digit or 'X' (10) marker count, and
// the robot as ^ > v <.
inline std::string render(const WorldState& w) {
  std::string out;
  for (int r = 0; r < w.height(); ++r) {
    for (int c = 0; c < w.width(); ++c) {
      char ch = '.';
      if (w.robot().row == r && w.robot().col == c) {
        ch = "^>v<"[static_cast<int>(w.robot().dir)];
      } else if (w.obstacle(r, c)) {
        ch = '#';
      } else if (int m = w.markers(r, c); m > 0) {
        ch = m == 10 ? 'X' : static_cast<char>('0' + m);
      }
      out.push_back(ch);
    }
    out.push_back('\n');
  }
  return out;
}

// --- JSON -----------------------------------------------------------------

using Json = nlohmann::ordered_json;

inline Json world_to_json(const WorldState& w) {
  Json j;
  j["h"] = w.height();
  j["w"] = w.width();
  Json robot;
  robot["r"] = w.robot().row;
  robot["c"] = w.robot().col;
  robot["dir"] = std::string(1, dir_letter(w.robot().dir));
  j["robot"] = std::move(robot);
  Json obstacles = Json::array();
  for (auto [r, c] : w.obstacle_cells()) obstacles.push_back({r, c});
  j["obstacles"] = std::move(obstacles);
  Json markers = Json::array();
  for (const auto& m : w.marker_cells()) markers.push_back({m[0], m[1], m[2]});
  j["markers"] = std::move(markers);
  return j;
}

// Canonical single-line serialization, stable for hashing and golden files.
inline std::string world_to_string(const WorldState& w) {
  return world_to_json(w).dump();
}

inline Dir parse_dir(const std::string& s) {
  if (s == "N") return Dir::kNorth;
  if (s == "E") return Dir::kEast;
  if (s == "S") return Dir::kSouth;
  if (s == "W") return Dir::kWest;
  throw std::invalid_argument("bad robot direction '" + s + "'");
}

template <class J>
WorldState world_from_json(const J& j) {
  Robot robot;
  robot.row = j.at("robot").at("r").template get<int>();
  robot.col = j.at("robot").at("c").template get<int>();
  robot.dir = parse_dir(j.at("robot").at("dir").template get<std::string>());
  WorldState w(j.at("h").template get<int>(), j.at("w").template get<int>(),
               robot);
  if (j.contains("obstacles")) {
    for (const auto& o : j.at("obstacles")) {
      const int r = o.at(0).template get<int>();
      const int c = o.at(1).template get<int>();
      if (!w.in_bounds(r, c)) throw std::invalid_argument("obstacle out of bounds");
      w.set_obstacle(r, c, true);
    }
  }
  if (j.contains("markers")) {
    for (const auto& m : j.at("markers")) {
      const int r = m.at(0).template get<int>();
      const int c = m.at(1).template get<int>();
      const int n = m.at(2).template get<int>();
      if (!w.in_bounds(r, c)) throw std::invalid_argument("marker out of bounds");
      if (w.obstacle(r, c)) {
        throw std::invalid_argument("markers on an obstacle cell");
      }
      if (n < 1 || n > kMaxMarkers) {
        throw std::invalid_argument("marker count must lie in [1, 10]");
      }
      w.set_markers(r, c, n);
    }
  }
  if (auto err = w.validate()) throw std::invalid_argument(*err);
  return w;
}

inline WorldState world_from_string(const std::string& text) {
  return world_from_json(Json::parse(text));
}

// --- Sampling -------------------------------------------------------------

inline constexpr double kObstacleProbability = 0.1;
inline constexpr int kMaxMarkerCells = 10;

// Random valid world. Dimensions are uniform in [2, 18] unless given; every
// non-robot cell is an obstacle with probability 0.1; between 0 and 10
// non-obstacle cells receive a uniform [1, 10] marker count.
inline WorldState sample_world(std::uint64_t seed,
                               std::optional<std::pair<int, int>> dims = {}) {
  Rng rng(seed);
  int h, w;
  if (dims) {
    std::tie(h, w) = *dims;
  } else {
    h = uniform_int(rng, kMinGridSize, kMaxGridSize);
    w = uniform_int(rng, kMinGridSize, kMaxGridSize);
  }
  Robot robot;
  robot.row = uniform_int(rng, 0, h - 1);
  robot.col = uniform_int(rng, 0, w - 1);
  robot.dir = static_cast<Dir>(uniform_int(rng, 0, 3));
  WorldState world(h, w, robot);

  std::vector<std::pair<int, int>> free_cells;
  for (int r = 0; r < h; ++r) {
    for (int c = 0; c < w; ++c) {
      const bool is_robot = r == robot.row && c == robot.col;
      if (!is_robot && bernoulli(rng, kObstacleProbability)) {
        world.set_obstacle(r, c, true);
      } else {
        free_cells.emplace_back(r, c);
      }
    }
  }
  const int wanted = uniform_int(rng, 0, kMaxMarkerCells);
  // Partial Fisher-Yates over the free cells.
  const int n = std::min<int>(wanted, static_cast<int>(free_cells.size()));
  for (int i = 0; i < n; ++i) {
    const int j = uniform_int(rng, i, static_cast<int>(free_cells.size()) - 1);
    std::swap(free_cells[i], free_cells[j]);
    world.set_markers(free_cells[i].first, free_cells[i].second,
                      uniform_int(rng, 1, kMaxMarkers));
  }
  return world;
}

}  // namespace karel

#endif  // KAREL_WORLD_HPP_

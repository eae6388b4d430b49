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

// Alignment between execution states and program tokens, plus the tensors a
// trace-embedding network consumes.
//
// A state (u, t) is linked to token i when i is the action that produced it,
// or the keyword of a loop or conditional whose body was executing when it
// was produced. Per-token state summaries are the mean of the linked state
// vectors; tokens without links get zeros.

#ifndef KAREL_TRACEMAP_HPP_
#define KAREL_TRACEMAP_HPP_

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstring>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "karel/ast.hpp"
#include "karel/interpreter.hpp"
#include "karel/world.hpp"

namespace karel {

// Identifies trace event t of example u (both zero-based).
struct StateId {
  std::size_t example = 0;
  std::size_t step = 0;

  friend auto operator<=>(const StateId&, const StateId&) = default;
};

struct AlignmentEdge {
  StateId state;
  std::size_t token = 0;

  friend auto operator<=>(const AlignmentEdge&, const AlignmentEdge&) = default;
};

struct AlignmentGraph {
  std::size_t num_tokens = 0;
  // Events per example, including the initial state.
  std::vector<std::size_t> trace_lengths;
  // Sorted by (example, step, token).
  std::vector<AlignmentEdge> edges;

  std::size_t degree_of_state(StateId s) const {
    auto lo = std::lower_bound(edges.begin(), edges.end(), AlignmentEdge{s, 0});
    std::size_t n = 0;
    for (; lo != edges.end() && lo->state == s; ++lo) ++n;
    return n;
  }

  std::vector<std::size_t> token_degrees() const {
    std::vector<std::size_t> deg(num_tokens, 0);
    for (const auto& e : edges) ++deg[e.token];
    return deg;
  }
};

class TokenRangeMismatch : public std::invalid_argument {
 public:
  explicit TokenRangeMismatch(const std::string& what)
      : std::invalid_argument("trace does not match program: " + what) {}
};

class DimensionMismatch : public std::invalid_argument {
 public:
  explicit DimensionMismatch(const std::string& what)
      : std::invalid_argument("dimension mismatch: " + what) {}
};

inline AlignmentGraph build_alignment(const Program& program,
                                      std::span<const Trace> traces) {
  const TokenSeq tokens = flatten(program);
  AlignmentGraph g;
  g.num_tokens = tokens.size();
  for (std::size_t u = 0; u < traces.size(); ++u) {
    const auto& events = traces[u].events;
    g.trace_lengths.push_back(events.size());
    for (std::size_t t = 1; t < events.size(); ++t) {
      const TraceEvent& ev = events[t];
      if (!ev.producing_token) {
        throw TokenRangeMismatch("event without a producing token");
      }
      const std::size_t i = *ev.producing_token;
      if (i >= tokens.size() || !is_action(tokens[i])) {
        throw TokenRangeMismatch("producing token " + std::to_string(i) +
                                 " is not an action");
      }
      g.edges.push_back({{u, t}, i});
      for (std::size_t c : ev.active_control_tokens) {
        if (c >= tokens.size() || !is_control_keyword(tokens[c])) {
          throw TokenRangeMismatch("control token " + std::to_string(c) +
                                   " is not a control keyword");
        }
        g.edges.push_back({{u, t}, c});
      }
    }
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

// Traces `program` on every input of `spec` and aligns the result.
inline AlignmentGraph align_on_spec(const Program& program, const Spec& spec,
                                    int step_limit = kDefaultStepLimit) {
  std::vector<Trace> traces;
  traces.reserve(spec.pairs.size());
  for (const auto& pair : spec.pairs) {
    traces.push_back(execute(program, pair.input, step_limit).trace);
  }
  return build_alignment(program, traces);
}

// {"edges":[[u,t,i],...]} in sorted order.
inline Json alignment_to_json(const AlignmentGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges) {
    edges.push_back({e.state.example, e.state.step, e.token});
  }
  Json j;
  j["edges"] = std::move(edges);
  return j;
}

// Mean of the linked state vectors for every token index in the program.
// T needs a zero value T{}, +=, and division by T(count).
template <class T>
std::vector<std::vector<T>> aggregate(
    const AlignmentGraph& g, const std::map<StateId, std::vector<T>>& vectors) {
  std::size_t dim = 0;
  bool have_dim = false;
  for (const auto& [id, v] : vectors) {
    if (!have_dim) {
      dim = v.size();
      have_dim = true;
    } else if (v.size() != dim) {
      throw DimensionMismatch("state vectors differ in length");
    }
  }
  std::vector<std::vector<T>> sums(g.num_tokens, std::vector<T>(dim, T{}));
  std::vector<std::size_t> counts(g.num_tokens, 0);
  for (const auto& e : g.edges) {
    auto it = vectors.find(e.state);
    if (it == vectors.end()) {
      throw std::invalid_argument("no vector for state (" +
                                  std::to_string(e.state.example) + ", " +
                                  std::to_string(e.state.step) + ")");
    }
    auto& acc = sums[e.token];
    for (std::size_t k = 0; k < dim; ++k) acc[k] += it->second[k];
    ++counts[e.token];
  }
  for (std::size_t i = 0; i < g.num_tokens; ++i) {
    if (counts[i] == 0) continue;
    const T n(static_cast<long long>(counts[i]));
    for (auto& x : sums[i]) x = x / n;
  }
  return sums;
}

// --- State features ------------------------------------------------------------

inline constexpr int kFeaturePad = kMaxGridSize;
inline constexpr int kFeatureChannels = 3 * kCellFeatures;

// Channel-major [channel][row][col] tensor over the padded 18x18 extent.
// Channels 0-15 encode the current state, 16-31 the input, 32-47 the
// expected output.
struct StateFeature {
  int channels = kFeatureChannels;
  int height = kFeaturePad;
  int width = kFeaturePad;
  std::vector<float> data;

  float at(int ch, int r, int c) const {
    return data[(static_cast<std::size_t>(ch) * height + r) * width + c];
  }

  friend bool operator==(const StateFeature&, const StateFeature&) = default;
};

inline StateFeature featurize_state(const WorldState& current,
                                    const WorldState& input,
                                    const WorldState& output) {
  for (const WorldState* w : {&input, &output}) {
    if (w->height() != current.height() || w->width() != current.width()) {
      throw DimensionMismatch("states must share grid dimensions");
    }
  }
  StateFeature f;
  f.data.assign(static_cast<std::size_t>(f.channels) * f.height * f.width, 0.0f);
  const WorldState* blocks[3] = {&current, &input, &output};
  for (int b = 0; b < 3; ++b) {
    for (int r = 0; r < f.height; ++r) {
      for (int c = 0; c < f.width; ++c) {
        const auto cell = encode_cell(*blocks[b], r, c);
        for (int k = 0; k < kCellFeatures; ++k) {
          const int ch = b * kCellFeatures + k;
          f.data[(static_cast<std::size_t>(ch) * f.height + r) * f.width + c] =
              cell[k];
        }
      }
    }
  }
  return f;
}

// Binary layout: four little-endian uint16 (channels, height, width, 0)
// followed by row-major little-endian float32 data.
inline void write_feature_binary(std::ostream& out, const StateFeature& f) {
  auto put16 = [&](std::uint16_t v) {
    const char b[2] = {static_cast<char>(v & 0xff), static_cast<char>(v >> 8)};
    out.write(b, 2);
  };
  put16(static_cast<std::uint16_t>(f.channels));
  put16(static_cast<std::uint16_t>(f.height));
  put16(static_cast<std::uint16_t>(f.width));
  put16(0);
  for (float x : f.data) {
    std::uint32_t bits;
    std::memcpy(&bits, &x, sizeof bits);
    const char b[4] = {static_cast<char>(bits & 0xff),
                       static_cast<char>((bits >> 8) & 0xff),
                       static_cast<char>((bits >> 16) & 0xff),
                       static_cast<char>((bits >> 24) & 0xff)};
    out.write(b, 4);
  }
}

inline StateFeature read_feature_binary(std::istream& in) {
  auto get16 = [&]() {
    unsigned char b[2];
    if (!in.read(reinterpret_cast<char*>(b), 2)) {
      throw std::runtime_error("truncated feature header");
    }
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
  };
  StateFeature f;
  f.channels = get16();
  f.height = get16();
  f.width = get16();
  get16();
  f.data.resize(static_cast<std::size_t>(f.channels) * f.height * f.width);
  for (float& x : f.data) {
    unsigned char b[4];
    if (!in.read(reinterpret_cast<char*>(b), 4)) {
      throw std::runtime_error("truncated feature data");
    }
    const std::uint32_t bits = b[0] | (b[1] << 8) | (b[2] << 16) |
                               (static_cast<std::uint32_t>(b[3]) << 24);
    std::memcpy(&x, &bits, sizeof x);
  }
  return f;
}

}  // namespace karel

#endif  // KAREL_TRACEMAP_HPP_

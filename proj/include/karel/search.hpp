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

// Synthesize-then-debug search drivers.
//
// A synthesizer M proposes initial programs for a spec; a debugger D proposes
// edited versions of a program. Both are CandidateSources. Programs are
// ranked by the fraction of spec pairs they satisfy, T(p), with ties broken
// by derivation depth (fewer debugger steps first) and then by the order in
// which the program was first seen.

#ifndef KAREL_SEARCH_HPP_
#define KAREL_SEARCH_HPP_

#include <cstddef>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "karel/interpreter.hpp"
#include "karel/parser.hpp"
#include "karel/token.hpp"

namespace karel {

class CandidateSource {
 public:
  virtual ~CandidateSource() = default;

  // Ranked initial programs for `spec`.
  virtual std::vector<TokenSeq> synthesize(const Spec& spec) = 0;
  // Ranked edits of `program`.
  virtual std::vector<TokenSeq> debug(const TokenSeq& program,
                                      const Spec& spec) = 0;
  // Upper bound on the length of either list.
  virtual int beam() const = 0;
};

enum class SearchMode { kBestFirst, kGreedy };

inline std::string_view search_mode_name(SearchMode m) {
  return m == SearchMode::kBestFirst ? "best-first" : "greedy";
}

struct SearchConfig {
  int k = 100;  // maximum expansions
  int beam = 32;
  SearchMode mode = SearchMode::kBestFirst;
  int step_limit = kDefaultStepLimit;
};

struct SearchStep {
  TokenSeq program;
  PassRate rate;
};

struct SearchOutcome {
  TokenSeq result;
  bool success = false;
  int expansions_used = 0;
  // Candidates returned by M and D (after beam truncation, before
  // deduplication).
  int programs_expanded = 0;
  // How many of those came from the synthesizer.
  int synthesizer_candidates = 0;
  // Candidates dropped because they did not parse.
  int filtered_unparseable = 0;
  // Greedy only: the debugger offered nothing new.
  bool stuck = false;
  std::vector<SearchStep> trajectory;
};

class EmptyFrontier : public std::runtime_error {
 public:
  EmptyFrontier()
      : std::runtime_error("synthesizer returned no parseable candidates") {}
};

namespace detail {

inline std::string seq_key(const TokenSeq& t) {
  return std::string(reinterpret_cast<const char*>(t.data()), t.size());
}

inline void check_config(const SearchConfig& cfg) {
  if (cfg.k < 1) throw std::invalid_argument("k must be >= 1");
  if (cfg.beam < 1) throw std::invalid_argument("beam must be >= 1");
}

struct Node {
  TokenSeq tokens;
  PassRate rate;
  int depth = 0;
  std::size_t order = 0;
  bool expanded = false;
};

// Strict "a ranks above b": higher T, then shallower, then older.
inline bool ranks_above(const Node& a, const Node& b) {
  if (a.rate != b.rate) return a.rate > b.rate;
  if (a.depth != b.depth) return a.depth < b.depth;
  return a.order < b.order;
}

// Scores candidates and tracks every distinct program seen by one search.
class NodeTable {
 public:
  NodeTable(const Spec& spec, int step_limit)
      : spec_(spec), step_limit_(step_limit) {}

  // Returns the node index of `tokens`, creating it if new. Empty when the
  // sequence does not parse.
  std::optional<std::size_t> intern(const TokenSeq& tokens, int depth,
                                    SearchOutcome& out) {
    std::string key = seq_key(tokens);
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    auto program = try_parse(tokens);
    if (!program) {
      ++out.filtered_unparseable;
      return std::nullopt;
    }
    Node n;
    n.tokens = tokens;
    n.rate = pass_rate(*program, spec_, step_limit_);
    n.depth = depth;
    n.order = nodes_.size();
    nodes_.push_back(std::move(n));
    index_.emplace(std::move(key), nodes_.size() - 1);
    return nodes_.size() - 1;
  }

  Node& operator[](std::size_t i) { return nodes_[i]; }
  const Node& operator[](std::size_t i) const { return nodes_[i]; }
  std::size_t size() const { return nodes_.size(); }

  std::size_t best_overall() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < nodes_.size(); ++i) {
      if (ranks_above(nodes_[i], nodes_[best])) best = i;
    }
    return best;
  }

 private:
  const Spec& spec_;
  int step_limit_;
  std::vector<Node> nodes_;
  std::unordered_map<std::string, std::size_t> index_;
};

inline std::vector<TokenSeq> truncated(std::vector<TokenSeq> v, int beam) {
  if (v.size() > static_cast<std::size_t>(beam)) v.resize(static_cast<std::size_t>(beam));
  return v;
}

inline void record(SearchOutcome& out, const Node& n) {
  ++out.expansions_used;
  out.trajectory.push_back({n.tokens, n.rate});
}

}  // namespace detail

// Best-first search: repeatedly expand the best unexpanded program in the
// frontier with D, stopping at the first program with T = 1. After k
// expansions the best program in the frontier is returned, expanded or not.
inline SearchOutcome best_first_search(CandidateSource& synthesizer,
                                       CandidateSource& debugger,
                                       const Spec& spec,
                                       const SearchConfig& cfg) {
  detail::check_config(cfg);
  SearchOutcome out;
  detail::NodeTable table(spec, cfg.step_limit);
  auto cmp = [&table](std::size_t a, std::size_t b) {
    return detail::ranks_above(table[b], table[a]);
  };
  std::priority_queue<std::size_t, std::vector<std::size_t>, decltype(cmp)>
      frontier(cmp);

  auto add_all = [&](const std::vector<TokenSeq>& cands, int depth) {
    out.programs_expanded += static_cast<int>(cands.size());
    for (const auto& c : cands) {
      const std::size_t before = table.size();
      auto idx = table.intern(c, depth, out);
      if (idx && *idx == before) frontier.push(*idx);
    }
  };

  add_all(detail::truncated(synthesizer.synthesize(spec), synthesizer.beam()), 0);
  out.synthesizer_candidates = out.programs_expanded;
  if (table.size() == 0) throw EmptyFrontier();

  for (int i = 0; i < cfg.k && !frontier.empty(); ++i) {
    const std::size_t c = frontier.top();
    frontier.pop();
    table[c].expanded = true;
    detail::record(out, table[c]);
    if (table[c].rate.perfect()) {
      out.result = table[c].tokens;
      out.success = true;
      return out;
    }
    const TokenSeq tokens = table[c].tokens;
    const int depth = table[c].depth;
    add_all(detail::truncated(debugger.debug(tokens, spec), cfg.beam), depth + 1);
  }

  const detail::Node& best = table[table.best_overall()];
  out.result = best.tokens;
  out.success = best.rate.perfect();
  return out;
}

// Greedy search: follow the single best debugger output of the previous
// step, never revisiting a program already selected. `k` bounds the number
// of selected programs, the synthesizer's pick included.
inline SearchOutcome greedy_search(CandidateSource& synthesizer,
                                   CandidateSource& debugger, const Spec& spec,
                                   const SearchConfig& cfg) {
  detail::check_config(cfg);
  SearchOutcome out;
  detail::NodeTable table(spec, cfg.step_limit);
  std::unordered_set<std::size_t> selected;

  auto pick = [&](const std::vector<TokenSeq>& cands,
                  int depth) -> std::optional<std::size_t> {
    out.programs_expanded += static_cast<int>(cands.size());
    std::optional<std::size_t> best;
    for (const auto& cand : cands) {
      auto idx = table.intern(cand, depth, out);
      if (!idx || selected.count(*idx)) continue;
      if (!best || detail::ranks_above(table[*idx], table[*best])) best = idx;
    }
    return best;
  };

  auto first =
      pick(detail::truncated(synthesizer.synthesize(spec), synthesizer.beam()), 0);
  out.synthesizer_candidates = out.programs_expanded;
  if (!first) throw EmptyFrontier();
  std::size_t c = *first;

  while (true) {
    selected.insert(c);
    detail::record(out, table[c]);
    if (table[c].rate.perfect()) {
      out.result = table[c].tokens;
      out.success = true;
      return out;
    }
    if (out.expansions_used >= cfg.k) break;
    const TokenSeq tokens = table[c].tokens;
    auto next = pick(detail::truncated(debugger.debug(tokens, spec), cfg.beam),
                     table[c].depth + 1);
    if (!next) {
      out.stuck = true;
      const detail::Node& best = table[table.best_overall()];
      out.result = best.tokens;
      out.success = best.rate.perfect();
      return out;
    }
    c = *next;
  }
  out.result = table[c].tokens;
  out.success = false;
  return out;
}

inline SearchOutcome run_search(CandidateSource& synthesizer,
                                CandidateSource& debugger, const Spec& spec,
                                const SearchConfig& cfg) {
  return cfg.mode == SearchMode::kBestFirst
             ? best_first_search(synthesizer, debugger, spec, cfg)
             : greedy_search(synthesizer, debugger, spec, cfg);
}

}  // namespace karel

#endif  // KAREL_SEARCH_HPP_

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

// Built-in candidate sources that need no learned model.

#ifndef KAREL_SOURCES_HPP_
#define KAREL_SOURCES_HPP_

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "karel/edit.hpp"
#include "karel/interpreter.hpp"
#include "karel/mutate.hpp"
#include "karel/parser.hpp"
#include "karel/search.hpp"

namespace karel {

inline constexpr int kUnboundedBeam = std::numeric_limits<int>::max();

class ParseFailure : public std::invalid_argument {
 public:
  explicit ParseFailure(const std::string& what)
      : std::invalid_argument("program does not parse: " + what) {}
};

// Returns a fixed list from synthesize() and nothing from debug(). Serves as
// M when repairing a known program.
class ConstantSource : public CandidateSource {
 public:
  explicit ConstantSource(std::vector<TokenSeq> programs)
      : programs_(std::move(programs)) {}

  std::vector<TokenSeq> synthesize(const Spec&) override { return programs_; }
  std::vector<TokenSeq> debug(const TokenSeq&, const Spec&) override {
    return {};
  }
  int beam() const override {
    return std::max<int>(1, static_cast<int>(programs_.size()));
  }

 private:
  std::vector<TokenSeq> programs_;
};

// Proposes nothing.
class NullSource : public CandidateSource {
 public:
  std::vector<TokenSeq> synthesize(const Spec&) override { return {}; }
  std::vector<TokenSeq> debug(const TokenSeq&, const Spec&) override {
    return {};
  }
  int beam() const override { return 1; }
};

// All single-mutation neighbours of `program`, best first by (pass rate
// desc, token edit distance to `program` asc, token order asc), truncated to
// `beam`.
inline std::vector<TokenSeq> enumerative_debugger(
    const TokenSeq& program, const Spec& spec, int beam,
    int step_limit = kDefaultStepLimit) {
  Program ast;
  try {
    ast = parse(program);
  } catch (const ParseError& e) {
    throw ParseFailure(e.what());
  }
  struct Scored {
    TokenSeq tokens;
    PassRate rate;
    int distance;
  };
  std::vector<Scored> scored;
  std::unordered_set<std::string> seen;
  for (const Mutation& m : applicable_mutations(ast)) {
    Program neighbour = apply_mutation(ast, m);
    TokenSeq tokens = flatten(neighbour);
    if (!seen.insert(detail::seq_key(tokens)).second) continue;
    const PassRate rate = pass_rate(neighbour, spec, step_limit);
    const int dist = edit_distance(program, tokens);
    scored.push_back({std::move(tokens), rate, dist});
  }
  auto better = [](const Scored& a, const Scored& b) {
    if (a.rate != b.rate) return a.rate > b.rate;
    if (a.distance != b.distance) return a.distance < b.distance;
    return a.tokens < b.tokens;
  };
  const std::size_t keep = std::min<std::size_t>(scored.size(), static_cast<std::size_t>(beam));
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep),
                    scored.end(), better);
  std::vector<TokenSeq> out;
  out.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) out.push_back(std::move(scored[i].tokens));
  return out;
}

class EnumerativeDebugger : public CandidateSource {
 public:
  explicit EnumerativeDebugger(int beam, int step_limit = kDefaultStepLimit)
      : beam_(beam), step_limit_(step_limit) {}

  std::vector<TokenSeq> synthesize(const Spec&) override { return {}; }
  std::vector<TokenSeq> debug(const TokenSeq& program,
                              const Spec& spec) override {
    return enumerative_debugger(program, spec, beam_, step_limit_);
  }
  int beam() const override { return beam_; }

 private:
  int beam_;
  int step_limit_;
};

// Moves one edit closer to a fixed target per call: applies the first
// non-KEEP operation of min_edit_script(program, target) and keeps the rest
// of the program unchanged. A search-correctness fixture.
class OracleDebugger : public CandidateSource {
 public:
  explicit OracleDebugger(TokenSeq target) : target_(std::move(target)) {
    try {
      parse(target_);
    } catch (const ParseError& e) {
      throw ParseFailure(e.what());
    }
  }

  std::vector<TokenSeq> synthesize(const Spec&) override { return {}; }

  std::vector<TokenSeq> debug(const TokenSeq& program, const Spec&) override {
    return {step_toward(program, target_)};
  }

  int beam() const override { return 1; }

  static TokenSeq step_toward(const TokenSeq& program, const TokenSeq& target) {
    const EditScript full = min_edit_script(program, target);
    EditScript partial;
    std::size_t consumed = 0;
    bool edited = false;
    for (const EditOp& op : full) {
      if (edited) break;
      partial.push_back(op);
      if (op.consumes()) ++consumed;
      edited = op.kind != EditOp::Kind::kKeep;
    }
    while (consumed < program.size()) {
      partial.push_back(EditOp::keep());
      ++consumed;
    }
    return apply_edits(program, partial);
  }

 private:
  TokenSeq target_;
};

// Baseline synthesizer: every straight-line action program up to
// `max_len` actions, best first by (pass rate desc, length asc, token order).
class ActionSequenceSynthesizer : public CandidateSource {
 public:
  ActionSequenceSynthesizer(int beam, int max_len = 3,
                            int step_limit = kDefaultStepLimit)
      : beam_(beam), max_len_(max_len), step_limit_(step_limit) {}

  std::vector<TokenSeq> synthesize(const Spec& spec) override {
    struct Scored {
      TokenSeq tokens;
      PassRate rate;
    };
    std::vector<Scored> scored;
    std::vector<int> digits;
    for (int len = 0; len <= max_len_; ++len) {
      digits.assign(static_cast<std::size_t>(len), 0);
      while (true) {
        Program p;
        for (int d : digits) p.body.push_back(Stmt::make_action(static_cast<Action>(d)));
        reindex(p);
        scored.push_back({flatten(p), pass_rate(p, spec, step_limit_)});
        int pos = len - 1;
        while (pos >= 0 && ++digits[pos] == kNumActions) digits[pos--] = 0;
        if (pos < 0) break;
      }
    }
    std::stable_sort(scored.begin(), scored.end(),
                     [](const Scored& a, const Scored& b) {
                       if (a.rate != b.rate) return a.rate > b.rate;
                       if (a.tokens.size() != b.tokens.size())
                         return a.tokens.size() < b.tokens.size();
                       return a.tokens < b.tokens;
                     });
    std::vector<TokenSeq> out;
    for (std::size_t i = 0; i < scored.size() && i < static_cast<std::size_t>(beam_); ++i) {
      out.push_back(std::move(scored[i].tokens));
    }
    return out;
  }

  std::vector<TokenSeq> debug(const TokenSeq&, const Spec&) override {
    return {};
  }
  int beam() const override { return beam_; }

 private:
  int beam_;
  int max_len_;
  int step_limit_;
};

}  // namespace karel

#endif  // KAREL_SOURCES_HPP_

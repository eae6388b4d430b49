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

#ifndef KAREL_SAMPLER_HPP_
#define KAREL_SAMPLER_HPP_

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "karel/ast.hpp"
#include "karel/rng.hpp"

namespace karel {

struct SampleLimits {
  int max_depth = 3;
  int max_body_len = 4;
  int max_total_tokens = 40;
  std::uint64_t rng_seed = 0;
};

namespace detail {

// Minimum token cost of each statement form with a one-action body:
//   a                                     -> 1
//   while ( c ) { a }   (also if, repeat) -> 7
//   ifelse ( c ) { a } else { a }         -> 11
inline constexpr int kMinSimpleControlCost = 7;
inline constexpr int kMinIfElseCost = 11;

class ProgramSampler {
 public:
  explicit ProgramSampler(const SampleLimits& limits)
      : limits_(limits), rng_(limits.rng_seed) {}

  Program sample() {
    int budget = limits_.max_total_tokens - 4;  // def run { }
    Program p;
    p.body = block(limits_.max_depth, budget);
    reindex(p);
    return p;
  }

 private:
  Block block(int depth_left, int& budget) {
    Block out;
    const int n = uniform_int(rng_, 1, limits_.max_body_len);
    for (int i = 0; i < n && budget >= 1; ++i) {
      out.push_back(stmt(depth_left, budget));
    }
    return out;
  }

  Cond cond(int& budget, int reserve) {
    Cond c;
    c.atom = static_cast<Atom>(uniform_int(rng_, 0, kNumAtoms - 1));
    if (budget - 1 >= reserve && bernoulli(rng_, 0.25)) {
      c.negations = 1;
      budget -= 1;
    }
    return c;
  }

  Stmt stmt(int depth_left, int& budget) {
    std::vector<StmtKind> kinds;
    if (depth_left >= 2 && budget >= kMinSimpleControlCost) {
      kinds = {StmtKind::kIf, StmtKind::kWhile, StmtKind::kRepeat};
      if (budget >= kMinIfElseCost) kinds.push_back(StmtKind::kIfElse);
    }
    if (kinds.empty() || bernoulli(rng_, 0.5)) {
      budget -= 1;
      return Stmt::make_action(
          static_cast<Action>(uniform_int(rng_, 0, kNumActions - 1)));
    }
    const StmtKind kind =
        kinds[uniform_int(rng_, 0, static_cast<int>(kinds.size()) - 1)];
    switch (kind) {
      case StmtKind::kRepeat: {
        budget -= 6;
        const int count = uniform_int(rng_, 0, kMaxRepeat);
        return Stmt::make_repeat(count, block(depth_left - 1, budget));
      }
      case StmtKind::kIfElse: {
        budget -= 9;  // keyword ( atom ) { } else { }
        Cond c = cond(budget, 2);
        budget -= 1;  // hold one token back for the else branch
        Block then_body = block(depth_left - 1, budget);
        budget += 1;
        return Stmt::make_ifelse(c, std::move(then_body),
                                 block(depth_left - 1, budget));
      }
      default: {
        budget -= 6;
        Cond c = cond(budget, 1);
        Block body = block(depth_left - 1, budget);
        return kind == StmtKind::kIf ? Stmt::make_if(c, std::move(body))
                                     : Stmt::make_while(c, std::move(body));
      }
    }
  }

  SampleLimits limits_;
  Rng rng_;
};

}  // namespace detail

// Draws a random program from the grammar. Bodies are non-empty, conditions
// carry at most one `not`, and the limits hold by construction.
inline Program sample_program(const SampleLimits& limits) {
  if (limits.max_depth < 1 || limits.max_body_len < 1 ||
      limits.max_total_tokens < 4) {
    throw std::invalid_argument(
        "sample limits must be positive and allow at least 'def run { }'");
  }
  return detail::ProgramSampler(limits).sample();
}

}  // namespace karel

#endif  // KAREL_SAMPLER_HPP_

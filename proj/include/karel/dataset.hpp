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

#ifndef KAREL_DATASET_HPP_
#define KAREL_DATASET_HPP_

#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "karel/interpreter.hpp"
#include "karel/rng.hpp"
#include "karel/sampler.hpp"
#include "karel/task.hpp"
#include "karel/world.hpp"

namespace karel {

inline constexpr int kSpecPairs = 5;
inline constexpr int kHeldOutPairs = 1;
inline constexpr int kMaxDrawsPerTask = 500;

class GenerationExhausted : public std::runtime_error {
 public:
  explicit GenerationExhausted(const std::string& id)
      : std::runtime_error("no acceptable draw for " + id + " after " +
                           std::to_string(kMaxDrawsPerTask) + " attempts") {}
};

struct DatasetStats {
  int emitted = 0;
  long long rejected_draws = 0;
  std::vector<std::string> exhausted_ids;
};

inline std::string task_id(std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "task-%05zu", index);
  return buf;
}

// Draws (program, inputs) until every execution completes and at least one
// output differs from its input. Throws GenerationExhausted.
inline Task generate_task(std::size_t index, const SampleLimits& limits,
                          std::uint64_t seed, int step_limit,
                          long long* rejected = nullptr) {
  const std::string id = task_id(index);
  const std::uint64_t task_seed = mix_seed(seed, index);
  constexpr int kPairs = kSpecPairs + kHeldOutPairs;
  for (int draw = 0; draw < kMaxDrawsPerTask; ++draw) {
    const std::uint64_t s = mix_seed(task_seed, static_cast<std::uint64_t>(draw));
    SampleLimits l = limits;
    l.rng_seed = mix_seed(s, 0);
    Program program = sample_program(l);
    std::vector<IoPair> pairs;
    bool changed = false;
    for (int k = 0; k < kPairs; ++k) {
      WorldState input = sample_world(mix_seed(s, 1 + static_cast<std::uint64_t>(k)));
      auto output = run_program(program, input, step_limit);
      if (!output) break;
      changed = changed || !(*output == input);
      pairs.push_back({std::move(input), std::move(*output)});
    }
    if (static_cast<int>(pairs.size()) == kPairs && changed) {
      Task t;
      t.id = id;
      t.gold = std::move(program);
      t.spec.pairs.assign(pairs.begin(), pairs.begin() + kSpecPairs);
      t.held_out.pairs.assign(pairs.begin() + kSpecPairs, pairs.end());
      return t;
    }
    if (rejected) ++*rejected;
  }
  throw GenerationExhausted(id);
}

inline std::vector<Task> gen_dataset(int n_tasks, const SampleLimits& limits,
                                     std::uint64_t seed,
                                     int step_limit = kDefaultStepLimit,
                                     DatasetStats* stats = nullptr) {
  if (n_tasks < 1) throw std::invalid_argument("n_tasks must be >= 1");
  DatasetStats local;
  std::vector<Task> out;
  for (int i = 0; i < n_tasks; ++i) {
    try {
      out.push_back(generate_task(static_cast<std::size_t>(i), limits, seed,
                                  step_limit, &local.rejected_draws));
    } catch (const GenerationExhausted&) {
      local.exhausted_ids.push_back(task_id(static_cast<std::size_t>(i)));
    }
  }
  local.emitted = static_cast<int>(out.size());
  if (stats) *stats = std::move(local);
  return out;
}

}  // namespace karel

#endif  // KAREL_DATASET_HPP_

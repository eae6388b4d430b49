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

// Subcommand bodies for the command-line tool. Each returns a process exit
// code and writes only to the streams it is given.

#ifndef KAREL_SRC_COMMANDS_HPP_
#define KAREL_SRC_COMMANDS_HPP_

#include <cstdint>
#include <istream>
#include <ostream>
#include <string>

#include "karel/sampler.hpp"
#include "karel/search.hpp"

namespace karel::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;

struct CommonOptions {
  std::uint64_t seed = 0;
  int k = 100;
  int beam = 32;
  int step_limit = kDefaultStepLimit;
  SearchMode mode = SearchMode::kBestFirst;
  std::string plugin;  // shell command; empty when unused
  int threads = 1;
};

struct EvalOptions {
  std::string synthesizer = "actions";  // actions | empty | plugin
  std::string debugger = "enumerative";  // enumerative | none | plugin
};

int gen_dataset(int n_tasks, const SampleLimits& limits, const CommonOptions& opt,
                std::ostream& out, std::ostream& err);

int mutate_benchmark(std::istream& tasks, int min_mutations, int max_mutations,
                     const CommonOptions& opt, std::ostream& out,
                     std::ostream& err);

// JSON-lines records go to `out`, the summary table to `table`.
int eval_synth(std::istream& tasks, const EvalOptions& eval,
               const CommonOptions& opt, std::ostream& out, std::ostream& table,
               std::ostream& err);

int eval_repair(std::istream& tasks, const EvalOptions& eval,
                const CommonOptions& opt, std::ostream& out,
                std::ostream& table, std::ostream& err);

int run(const std::string& program_text, const std::string& world_json,
        int step_limit, bool trace, bool align, std::ostream& out,
        std::ostream& err);

// One program per input line; blank lines are skipped.
int fmt(std::istream& programs, bool flat, std::ostream& out, std::ostream& err);

int edit_apply(const std::string& program_text, const std::string& script_text,
               std::ostream& out, std::ostream& err);

int edit_diff(const std::string& src_text, const std::string& tgt_text,
              std::ostream& out, std::ostream& err);

}  // namespace karel::cli

#endif  // KAREL_SRC_COMMANDS_HPP_

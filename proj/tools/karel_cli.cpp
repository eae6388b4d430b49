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

// karel: command-line front end.

#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using karel::cli::CommonOptions;

// An unreadable or unwritable file named on the command line.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Opens `path` for reading; "-" means stdin.
std::unique_ptr<std::istream> open_input(const std::string& path) {
  if (path == "-") return nullptr;
  auto f = std::make_unique<std::ifstream>(path);
  if (!*f) throw FileError("cannot open " + path);
  return f;
}

// Inline JSON when it starts with '{', otherwise a file path.
std::string json_argument(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return arg;
  std::ifstream f(arg);
  if (!f) throw FileError("cannot open " + arg);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void add_common(CLI::App* cmd, CommonOptions& opt, std::string& out_path) {
  cmd->add_option("--seed", opt.seed, "RNG seed");
  cmd->add_option("--step-limit", opt.step_limit, "Maximum actions per execution")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out", out_path, "Write results here instead of stdout");
}

void add_search(CLI::App* cmd, CommonOptions& opt) {
  const std::map<std::string, karel::SearchMode> modes{
      {"best-first", karel::SearchMode::kBestFirst},
      {"greedy", karel::SearchMode::kGreedy}};
  cmd->add_option("--k", opt.k, "Maximum debugger expansions")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--beam", opt.beam, "Candidates per source call")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--mode", opt.mode, "best-first or greedy")
      ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
  cmd->add_option("--plugin", opt.plugin, "Shell command of an external source");
  cmd->add_option("--threads", opt.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Karel program synthesis and repair toolkit"};
  app.require_subcommand(1);

  CommonOptions opt;
  std::string out_path;
  std::string tasks_path = "-";
  karel::cli::EvalOptions eval;

  auto* gen = app.add_subcommand("gen-dataset", "Generate synthesis tasks");
  int n_tasks = 500;
  karel::SampleLimits limits;
  gen->add_option("--n", n_tasks, "Number of tasks")->check(CLI::PositiveNumber);
  gen->add_option("--max-depth", limits.max_depth)->check(CLI::PositiveNumber);
  gen->add_option("--max-body-len", limits.max_body_len)->check(CLI::PositiveNumber);
  gen->add_option("--max-tokens", limits.max_total_tokens)->check(CLI::PositiveNumber);
  add_common(gen, opt, out_path);

  auto* mut = app.add_subcommand("mutate-benchmark", "Build repair tasks from synthesis tasks");
  int min_mut = 1, max_mut = 5;
  mut->add_option("--tasks", tasks_path, "Task JSON-lines file, - for stdin");
  mut->add_option("--min-mutations", min_mut)->check(CLI::PositiveNumber);
  mut->add_option("--max-mutations", max_mut)->check(CLI::PositiveNumber);
  add_common(mut, opt, out_path);

  auto* synth = app.add_subcommand("eval-synth", "Evaluate synthesis on tasks");
  synth->add_option("--tasks", tasks_path, "Task JSON-lines file, - for stdin");
  synth->add_option("--synthesizer", eval.synthesizer, "actions, empty or plugin")
      ->check(CLI::IsMember({"actions", "empty", "plugin"}));
  synth->add_option("--debugger", eval.debugger, "enumerative, none or plugin")
      ->check(CLI::IsMember({"enumerative", "none", "plugin"}));
  add_common(synth, opt, out_path);
  add_search(synth, opt);

  auto* repair = app.add_subcommand("eval-repair", "Evaluate repair on repair tasks");
  repair->add_option("--tasks", tasks_path, "Repair task JSON-lines file, - for stdin");
  repair->add_option("--debugger", eval.debugger, "enumerative, none or plugin")
      ->check(CLI::IsMember({"enumerative", "none", "plugin"}));
  add_common(repair, opt, out_path);
  add_search(repair, opt);

  auto* run = app.add_subcommand("run", "Execute a program on one world");
  std::string program_text, world_arg;
  bool trace = false, align = false;
  run->add_option("program", program_text, "Program token text")->required();
  run->add_option("--world", world_arg, "World JSON, inline or a file path")->required();
  run->add_flag("--trace", trace, "Dump every trace event");
  run->add_flag("--align", align, "Also dump the alignment graph");
  add_common(run, opt, out_path);

  auto* fmt = app.add_subcommand("fmt", "Parse and pretty-print programs");
  std::string fmt_input = "-";
  bool flat = false;
  fmt->add_option("input", fmt_input, "File with one program per line, - for stdin");
  fmt->add_flag("--flat", flat, "Print canonical one-line token text");
  fmt->add_option("--out", out_path);

  auto* apply = app.add_subcommand("edit-apply", "Apply an edit script to a program");
  std::string script_text;
  apply->add_option("program", program_text, "Program token text")->required();
  apply->add_option("script", script_text, "Comma-separated edit script")->required();
  apply->add_option("--out", out_path);

  auto* diff = app.add_subcommand("edit-diff", "Minimal edit script between two programs");
  std::string src_text, tgt_text;
  diff->add_option("src", src_text, "Source token text")->required();
  diff->add_option("tgt", tgt_text, "Target token text")->required();
  diff->add_option("--out", out_path);

  CLI11_PARSE(app, argc, argv);

  try {
    std::ofstream out_file;
    if (!out_path.empty()) {
      out_file.open(out_path);
      if (!out_file) throw FileError("cannot write " + out_path);
    }
    std::ostream& out = out_path.empty() ? std::cout : out_file;
    // With --out the table goes to stdout; otherwise it would mix with records.
    std::ostream& table = out_path.empty() ? std::cerr : std::cout;

    std::unique_ptr<std::istream> holder;
    auto input = [&](const std::string& path) -> std::istream& {
      holder = open_input(path);
      return holder ? *holder : std::cin;
    };

    if (*gen) return karel::cli::gen_dataset(n_tasks, limits, opt, out, std::cerr);
    if (*mut) {
      return karel::cli::mutate_benchmark(input(tasks_path), min_mut, max_mut, opt, out, std::cerr);
    }
    if (*synth) {
      return karel::cli::eval_synth(input(tasks_path), eval, opt, out, table, std::cerr);
    }
    if (*repair) {
      return karel::cli::eval_repair(input(tasks_path), eval, opt, out, table, std::cerr);
    }
    if (*run) {
      return karel::cli::run(program_text, json_argument(world_arg), opt.step_limit,
                             trace, align, out, std::cerr);
    }
    if (*fmt) {
      return karel::cli::fmt(input(fmt_input), flat, out, std::cerr);
    }
    if (*apply) return karel::cli::edit_apply(program_text, script_text, out, std::cerr);
    if (*diff) return karel::cli::edit_diff(src_text, tgt_text, out, std::cerr);
  } catch (const FileError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return karel::cli::kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

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

#include "commands.hpp"

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "karel/dataset.hpp"
#include "karel/edit.hpp"
#include "karel/eval.hpp"
#include "karel/interpreter.hpp"
#include "karel/mutate.hpp"
#include "karel/parser.hpp"
#include "karel/plugin.hpp"
#include "karel/sources.hpp"
#include "karel/task.hpp"
#include "karel/tracemap.hpp"

namespace karel::cli {
namespace {

// Runs `body`, turning input errors into a message and exit code 1.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
  } catch (const UnknownTokenError& e) {
    err << "parse error: " << e.what() << '\n';
  } catch (const Json::exception& e) {
    err << "json error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "invalid input: " << e.what() << '\n';
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitInputError;
}

SourceFactory plugin_factory(const CommonOptions& opt) {
  if (opt.plugin.empty()) {
    throw std::invalid_argument("--plugin is required for a plugin source");
  }
  return [cmd = opt.plugin, beam = opt.beam, limit = opt.step_limit] {
    return std::make_unique<ExternalSource>(cmd, beam, limit);
  };
}

SourceFactory debugger_factory(const EvalOptions& eval, const CommonOptions& opt) {
  if (eval.debugger == "enumerative") {
    return [beam = opt.beam, limit = opt.step_limit] {
      return std::make_unique<EnumerativeDebugger>(beam, limit);
    };
  }
  if (eval.debugger == "none") {
    return [] { return std::make_unique<NullSource>(); };
  }
  if (eval.debugger == "plugin") return plugin_factory(opt);
  throw std::invalid_argument("unknown debugger '" + eval.debugger + "'");
}

SourceFactory synthesizer_factory(const EvalOptions& eval, const CommonOptions& opt) {
  if (eval.synthesizer == "actions") {
    return [beam = opt.beam, limit = opt.step_limit] {
      return std::make_unique<ActionSequenceSynthesizer>(beam, 3, limit);
    };
  }
  if (eval.synthesizer == "empty") {
    return [] {
      return std::make_unique<ConstantSource>(
          std::vector<TokenSeq>{tokenize("def run { }")});
    };
  }
  if (eval.synthesizer == "plugin") return plugin_factory(opt);
  throw std::invalid_argument("unknown synthesizer '" + eval.synthesizer + "'");
}

SearchConfig search_config(const CommonOptions& opt) {
  SearchConfig cfg;
  cfg.k = opt.k;
  cfg.beam = opt.beam;
  cfg.mode = opt.mode;
  cfg.step_limit = opt.step_limit;
  return cfg;
}

void emit_report(const MetricsReport& report, std::ostream& out, std::ostream& table) {
  write_report_jsonl(out, report);
  table << summary_table(report);
}

Json event_to_json(const TraceEvent& e) {
  Json j;
  j["state"] = world_to_json(e.state);
  j["producing_token"] = e.producing_token ? Json(*e.producing_token) : Json(nullptr);
  j["active_controls"] = e.active_control_tokens;
  return j;
}

}  // namespace

int gen_dataset(int n_tasks, const SampleLimits& limits, const CommonOptions& opt,
                std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    DatasetStats stats;
    auto tasks = gen_dataset(n_tasks, limits, opt.seed, opt.step_limit, &stats);
    write_jsonl(out, tasks, task_to_json);
    err << "emitted " << stats.emitted << " tasks, rejected "
        << stats.rejected_draws << " draws";
    if (!stats.exhausted_ids.empty()) {
      err << ", skipped " << stats.exhausted_ids.size() << " exhausted tasks";
    }
    err << '\n';
    return kExitOk;
  });
}

int mutate_benchmark(std::istream& tasks, int min_mutations, int max_mutations,
                     const CommonOptions& opt, std::ostream& out,
                     std::ostream& err) {
  return guarded(err, [&] {
    RepairBenchmarkStats stats;
    auto repair = build_repair_benchmark(read_tasks(tasks),
                                         {min_mutations, max_mutations},
                                         opt.seed, opt.step_limit, &stats);
    write_jsonl(out, repair, repair_task_to_json);
    err << "generated " << stats.generated << " repair tasks, "
        << stats.flagged_equivalent << " flagged semantically equivalent\n";
    return kExitOk;
  });
}

int eval_synth(std::istream& tasks, const EvalOptions& eval,
               const CommonOptions& opt, std::ostream& out, std::ostream& table,
               std::ostream& err) {
  return guarded(err, [&] {
    auto report = eval_synthesis(read_tasks(tasks), synthesizer_factory(eval, opt),
                                 debugger_factory(eval, opt), search_config(opt),
                                 opt.threads);
    report.synthesizer = eval.synthesizer;
    report.debugger = eval.debugger;
    emit_report(report, out, table);
    return kExitOk;
  });
}

int eval_repair(std::istream& tasks, const EvalOptions& eval,
                const CommonOptions& opt, std::ostream& out,
                std::ostream& table, std::ostream& err) {
  return guarded(err, [&] {
    auto report = karel::eval_repair(read_repair_tasks(tasks),
                                      debugger_factory(eval, opt),
                                      search_config(opt), opt.threads);
    report.synthesizer = "broken";
    report.debugger = eval.debugger;
    emit_report(report, out, table);
    return kExitOk;
  });
}

int run(const std::string& program_text, const std::string& world_json,
        int step_limit, bool trace, bool align, std::ostream& out,
        std::ostream& err) {
  return guarded(err, [&] {
    const Program program = parse_text(program_text);
    const WorldState input = world_from_string(world_json);
    const ExecResult result = execute(program, input, step_limit);
    Json j;
    j["status"] = result.trace.status.to_string();
    j["final_state"] =
        result.final_state ? world_to_json(*result.final_state) : Json(nullptr);
    j["trace_length"] = result.trace.events.size();
    if (trace || align) {
      Json events = Json::array();
      for (const auto& e : result.trace.events) events.push_back(event_to_json(e));
      j["events"] = std::move(events);
    }
    if (align) {
      const std::vector<Trace> traces{result.trace};
      j["alignment"] = alignment_to_json(build_alignment(program, traces));
    }
    out << j.dump() << '\n';
    return kExitOk;
  });
}

int fmt(std::istream& programs, bool flat, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::string line;
    while (std::getline(programs, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      const Program p = parse_text(line);
      out << (flat ? to_text(p) + "\n" : pretty_print(p));
    }
    return kExitOk;
  });
}

int edit_apply(const std::string& program_text, const std::string& script_text,
               std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    out << detokenize(apply_edits(tokenize(program_text), parse_script(script_text)))
        << '\n';
    return kExitOk;
  });
}

int edit_diff(const std::string& src_text, const std::string& tgt_text,
              std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    out << format_script(min_edit_script(tokenize(src_text), tokenize(tgt_text)))
        << '\n';
    return kExitOk;
  });
}

}  // namespace karel::cli

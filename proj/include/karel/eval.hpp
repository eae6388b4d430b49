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

// Evaluation drivers and metrics.
//
// A result generalizes when it satisfies every spec pair and every held-out
// pair; it is an exact match when its tokens equal the gold program's. Search
// only ever sees the spec pairs.

#ifndef KAREL_EVAL_HPP_
#define KAREL_EVAL_HPP_

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "karel/interpreter.hpp"
#include "karel/parser.hpp"
#include "karel/plugin.hpp"
#include "karel/search.hpp"
#include "karel/sources.hpp"
#include "karel/task.hpp"

namespace karel {

using SourceFactory = std::function<std::unique_ptr<CandidateSource>()>;

class HeldOutLeak : public std::logic_error {
 public:
  explicit HeldOutLeak(const std::string& id)
      : std::logic_error("held-out pairs would reach search for " + id) {}
};

// Guard at the boundary between the metrics layer and search: the spec handed
// to search must hold exactly the task's visible pairs.
inline void check_held_out_isolation(const Spec& for_search, const Spec& visible,
                                     const std::string& id) {
  if (!(for_search == visible)) throw HeldOutLeak(id);
}

struct TaskRecord {
  std::string id;
  int n_mutations = 0;  // repair only
  bool flagged_equivalent = false;
  bool success = false;  // T = 1 on the spec
  bool generalizes = false;
  bool exact_match = false;
  int expansions_used = 0;
  int programs_expanded = 0;
  int synthesizer_candidates = 0;
  int filtered_unparseable = 0;
  bool stuck = false;
  std::vector<int> trajectory;  // satisfied spec pairs per expansion
  int spec_size = 0;
  std::string result;
  std::string error;
};

struct BucketStats {
  int n_mutations = 0;
  int tasks = 0;
  int flagged = 0;
  int spec_solved = 0;
  int generalized = 0;
  int exact = 0;
  int nonflagged_spec_solved = 0;

  double repair_error() const { return tasks ? 1.0 - static_cast<double>(generalized) / tasks : 0.0; }
  double spec_repair_error() const { return tasks ? 1.0 - static_cast<double>(spec_solved) / tasks : 0.0; }
  double nonflagged_spec_repair_rate() const {
    const int n = tasks - flagged;
    return n ? static_cast<double>(nonflagged_spec_solved) / n : 1.0;
  }
};

struct MetricsReport {
  std::string kind;  // "synthesis" or "repair"
  SearchConfig config;
  std::string synthesizer;
  std::string debugger;
  std::vector<TaskRecord> records;  // sorted by id
  double generalization_error = 0.0;
  double exact_match_error = 0.0;
  double mean_expansions = 0.0;
  double mean_programs_expanded = 0.0;
  int budget_violations = 0;  // programs_expanded > |M(e)| + k*B
  int plugin_failures = 0;
  std::vector<BucketStats> buckets;  // repair only, by n_mutations
};

namespace detail {

struct EvalJob {
  std::string id;
  const Spec* spec;
  const Spec* held_out;
  const Program* gold;
  TokenSeq initial;  // repair: the broken program
  int n_mutations = 0;
  bool flagged = false;
};

inline TaskRecord run_job(const EvalJob& job, CandidateSource& synthesizer,
                          CandidateSource& debugger, const SearchConfig& cfg) {
  TaskRecord rec;
  rec.id = job.id;
  rec.n_mutations = job.n_mutations;
  rec.flagged_equivalent = job.flagged;
  rec.spec_size = static_cast<int>(job.spec->size());
  const Spec for_search{job.spec->pairs};
  check_held_out_isolation(for_search, *job.spec, job.id);
  SearchOutcome out;
  try {
    out = run_search(synthesizer, debugger, for_search, cfg);
  } catch (const PluginCrash& e) {
    rec.error = e.what();
    return rec;
  } catch (const EmptyFrontier& e) {
    rec.error = e.what();
    return rec;
  }
  rec.success = out.success;
  rec.expansions_used = out.expansions_used;
  rec.programs_expanded = out.programs_expanded;
  rec.synthesizer_candidates = out.synthesizer_candidates;
  rec.filtered_unparseable = out.filtered_unparseable;
  rec.stuck = out.stuck;
  for (const auto& step : out.trajectory) rec.trajectory.push_back(step.rate.satisfied);
  rec.result = detokenize(out.result);
  if (auto program = try_parse(out.result)) {
    Spec all = *job.spec;
    all.pairs.insert(all.pairs.end(), job.held_out->pairs.begin(),
                     job.held_out->pairs.end());
    rec.generalizes = pass_rate(*program, all, cfg.step_limit).perfect();
  }
  rec.exact_match = out.result == flatten(*job.gold);
  return rec;
}

using JobSourceFactory =
    std::function<std::unique_ptr<CandidateSource>(const EvalJob&)>;

// Each worker owns its debugger and, unless a per-job synthesizer is given,
// its synthesizer.
inline std::vector<TaskRecord> run_jobs(const std::vector<EvalJob>& jobs,
                                        const SourceFactory& make_synth,
                                        const JobSourceFactory& make_job_synth,
                                        const SourceFactory& make_debugger,
                                        const SearchConfig& cfg, int threads) {
  std::vector<TaskRecord> records(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr first_error;
  auto worker = [&]() {
    try {
      auto debugger = make_debugger();
      auto worker_synth = make_synth ? make_synth() : nullptr;
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= jobs.size()) break;
        auto job_synth = make_job_synth ? make_job_synth(jobs[i]) : nullptr;
        CandidateSource& synth = job_synth ? *job_synth : *worker_synth;
        records[i] = run_job(jobs[i], synth, *debugger, cfg);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(err_mu);
      if (!first_error) first_error = std::current_exception();
      next = jobs.size();
    }
  };
  const int n = std::max(1, threads);
  if (n == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  std::sort(records.begin(), records.end(),
            [](const TaskRecord& a, const TaskRecord& b) { return a.id < b.id; });
  return records;
}

inline void summarize(MetricsReport& r) {
  const double n = static_cast<double>(r.records.size());
  int gen = 0, exact = 0;
  double exp = 0, progs = 0;
  for (const auto& rec : r.records) {
    gen += rec.generalizes;
    exact += rec.exact_match;
    exp += rec.expansions_used;
    progs += rec.programs_expanded;
    if (!rec.error.empty()) ++r.plugin_failures;
    const long long bound = static_cast<long long>(rec.synthesizer_candidates) +
                            static_cast<long long>(r.config.k) * r.config.beam;
    if (rec.programs_expanded > bound) ++r.budget_violations;
  }
  if (n > 0) {
    r.generalization_error = 1.0 - gen / n;
    r.exact_match_error = 1.0 - exact / n;
    r.mean_expansions = exp / n;
    r.mean_programs_expanded = progs / n;
  }
}

}  // namespace detail

inline MetricsReport eval_synthesis(const std::vector<Task>& tasks,
                                    const SourceFactory& make_synthesizer,
                                    const SourceFactory& make_debugger,
                                    const SearchConfig& cfg, int threads = 1) {
  std::vector<detail::EvalJob> jobs;
  for (const auto& t : tasks) {
    jobs.push_back({t.id, &t.spec, &t.held_out, &t.gold, {}, 0, false});
  }
  MetricsReport report;
  report.kind = "synthesis";
  report.config = cfg;
  report.records = detail::run_jobs(
      jobs, make_synthesizer, nullptr, make_debugger, cfg, threads);
  detail::summarize(report);
  return report;
}

// Repair: search starts from the broken program alone.
inline MetricsReport eval_repair(const std::vector<RepairTask>& tasks,
                                 const SourceFactory& make_debugger,
                                 const SearchConfig& cfg, int threads = 1) {
  std::vector<detail::EvalJob> jobs;
  for (const auto& t : tasks) {
    jobs.push_back({t.id, &t.spec, &t.held_out, &t.gold, flatten(t.broken),
                    t.n_mutations, t.semantically_equivalent});
  }
  MetricsReport report;
  report.kind = "repair";
  report.config = cfg;
  report.records = detail::run_jobs(
      jobs, nullptr,
      [](const detail::EvalJob& job) -> std::unique_ptr<CandidateSource> {
        return std::make_unique<ConstantSource>(std::vector<TokenSeq>{job.initial});
      },
      make_debugger, cfg, threads);
  detail::summarize(report);
  std::map<int, BucketStats> buckets;
  for (const auto& rec : report.records) {
    BucketStats& b = buckets[rec.n_mutations];
    b.n_mutations = rec.n_mutations;
    ++b.tasks;
    b.flagged += rec.flagged_equivalent;
    b.spec_solved += rec.success;
    b.generalized += rec.generalizes;
    b.exact += rec.exact_match;
    if (!rec.flagged_equivalent) b.nonflagged_spec_solved += rec.success;
  }
  for (auto& [n, b] : buckets) report.buckets.push_back(b);
  return report;
}

// --- Report output -------------------------------------------------------------

inline Json record_to_json(const TaskRecord& r) {
  Json j;
  j["id"] = r.id;
  if (r.n_mutations) {
    j["n_mutations"] = r.n_mutations;
    j["flagged_equivalent"] = r.flagged_equivalent;
  }
  j["success"] = r.success;
  j["generalizes"] = r.generalizes;
  j["exact_match"] = r.exact_match;
  j["expansions_used"] = r.expansions_used;
  j["programs_expanded"] = r.programs_expanded;
  j["synthesizer_candidates"] = r.synthesizer_candidates;
  j["filtered_unparseable"] = r.filtered_unparseable;
  j["stuck"] = r.stuck;
  j["spec_size"] = r.spec_size;
  j["trajectory"] = r.trajectory;
  j["result"] = r.result;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

inline Json summary_to_json(const MetricsReport& r) {
  Json cfg;
  cfg["k"] = r.config.k;
  cfg["beam"] = r.config.beam;
  cfg["mode"] = std::string(search_mode_name(r.config.mode));
  cfg["step_limit"] = r.config.step_limit;
  cfg["synthesizer"] = r.synthesizer;
  cfg["debugger"] = r.debugger;
  Json s;
  s["kind"] = r.kind;
  s["config"] = std::move(cfg);
  s["tasks"] = r.records.size();
  s["generalization_error"] = r.generalization_error;
  s["exact_match_error"] = r.exact_match_error;
  s["mean_expansions"] = r.mean_expansions;
  s["mean_programs_expanded"] = r.mean_programs_expanded;
  s["budget_violations"] = r.budget_violations;
  s["plugin_failures"] = r.plugin_failures;
  if (!r.buckets.empty()) {
    Json bs = Json::array();
    for (const auto& b : r.buckets) {
      Json bj;
      bj["n_mutations"] = b.n_mutations;
      bj["tasks"] = b.tasks;
      bj["flagged_equivalent"] = b.flagged;
      bj["repair_error"] = b.repair_error();
      bj["spec_repair_error"] = b.spec_repair_error();
      bj["nonflagged_spec_repair_rate"] = b.nonflagged_spec_repair_rate();
      bj["exact_match"] = b.exact;
      bs.push_back(std::move(bj));
    }
    s["buckets"] = std::move(bs);
  }
  Json j;
  j["summary"] = std::move(s);
  return j;
}

// Per-task lines, then one summary line.
inline void write_report_jsonl(std::ostream& out, const MetricsReport& r) {
  for (const auto& rec : r.records) out << record_to_json(rec).dump() << '\n';
  out << summary_to_json(r).dump() << '\n';
}

inline std::string format_percent(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%6.2f%%", 100.0 * x);
  return buf;
}

// Columns: debugger beam size, edit steps, mean number of expanded programs,
// then the error rates. Repair reports add a per-bucket table.
inline std::string summary_table(const MetricsReport& r) {
  char line[256];
  std::string out;
  std::snprintf(line, sizeof line, "%-10s %-10s %-24s %-22s %-18s\n",
                "beam", "edit_steps", "# of expanded programs",
                "generalization_error", "exact_match_error");
  out += line;
  const std::string beam = r.config.beam == kUnboundedBeam
                               ? std::string("unbounded")
                               : std::to_string(r.config.beam);
  std::snprintf(line, sizeof line, "%-10s %-10d %-24.1f %-22s %-18s\n",
                beam.c_str(), r.config.k, r.mean_programs_expanded,
                format_percent(r.generalization_error).c_str(),
                format_percent(r.exact_match_error).c_str());
  out += line;
  if (!r.buckets.empty()) {
    out += "\n";
    std::snprintf(line, sizeof line, "%-12s %-7s %-8s %-14s %-18s %-18s\n",
                  "n_mutations", "tasks", "flagged", "repair_error",
                  "spec_repair_error", "nonflagged_solved");
    out += line;
    for (const auto& b : r.buckets) {
      std::snprintf(line, sizeof line, "%-12d %-7d %-8d %-14s %-18s %-18s\n",
                    b.n_mutations, b.tasks, b.flagged,
                    format_percent(b.repair_error()).c_str(),
                    format_percent(b.spec_repair_error()).c_str(),
                    format_percent(b.nonflagged_spec_repair_rate()).c_str());
      out += line;
    }
  }
  return out;
}

}  // namespace karel

#endif  // KAREL_EVAL_HPP_

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

#ifndef KAREL_TASK_HPP_
#define KAREL_TASK_HPP_

#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "karel/ast.hpp"
#include "karel/interpreter.hpp"
#include "karel/parser.hpp"

namespace karel {

// A synthesis problem: K visible pairs plus held-out pairs that only the
// metrics layer may look at.
struct Task {
  std::string id;
  Program gold;
  Spec spec;
  Spec held_out;
};

struct RepairTask {
  std::string id;
  int n_mutations = 1;
  Program broken;
  Program gold;
  Spec spec;
  Spec held_out;
  // Set when every redraw of the mutant still passed the whole spec.
  bool semantically_equivalent = false;
};

inline Json task_to_json(const Task& t) {
  Json j;
  j["id"] = t.id;
  j["gold"] = to_text(t.gold);
  j["spec"] = spec_to_json(t.spec);
  j["held_out"] = spec_to_json(t.held_out);
  return j;
}

inline Task task_from_json(const Json& j) {
  Task t;
  t.id = j.at("id").get<std::string>();
  t.gold = parse_text(j.at("gold").get<std::string>());
  t.spec = spec_from_json(j.at("spec"));
  t.held_out = spec_from_json(j.at("held_out"));
  return t;
}

inline Json repair_task_to_json(const RepairTask& t) {
  Json j;
  j["id"] = t.id;
  j["n_mutations"] = t.n_mutations;
  j["broken"] = to_text(t.broken);
  j["gold"] = to_text(t.gold);
  j["spec"] = spec_to_json(t.spec);
  j["held_out"] = spec_to_json(t.held_out);
  j["semantically_equivalent"] = t.semantically_equivalent;
  return j;
}

inline RepairTask repair_task_from_json(const Json& j) {
  RepairTask t;
  t.id = j.at("id").get<std::string>();
  t.n_mutations = j.at("n_mutations").get<int>();
  t.broken = parse_text(j.at("broken").get<std::string>());
  t.gold = parse_text(j.at("gold").get<std::string>());
  t.spec = spec_from_json(j.at("spec"));
  t.held_out = spec_from_json(j.at("held_out"));
  t.semantically_equivalent = j.value("semantically_equivalent", false);
  return t;
}

// JSON-lines helpers. Blank lines are skipped on read.
template <class T, class F>
std::vector<T> read_jsonl(std::istream& in, F&& from_json) {
  std::vector<T> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(from_json(Json::parse(line)));
    } catch (const std::exception& e) {
      throw std::runtime_error("line " + std::to_string(lineno) + ": " +
                               e.what());
    }
  }
  return out;
}

template <class T, class F>
void write_jsonl(std::ostream& out, const std::vector<T>& items, F&& to_json) {
  for (const auto& item : items) out << to_json(item).dump() << '\n';
}

inline std::vector<Task> read_tasks(std::istream& in) {
  return read_jsonl<Task>(in, task_from_json);
}
inline std::vector<RepairTask> read_repair_tasks(std::istream& in) {
  return read_jsonl<RepairTask>(in, repair_task_from_json);
}

}  // namespace karel

#endif  // KAREL_TASK_HPP_

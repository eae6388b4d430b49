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

#ifndef KAREL_INTERPRETER_HPP_
#define KAREL_INTERPRETER_HPP_

#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "karel/ast.hpp"
#include "karel/world.hpp"

namespace karel {

inline constexpr int kDefaultStepLimit = 1000;

enum class CrashReason : std::uint8_t { kMoveBlocked, kPickEmpty, kPutFull };

inline std::string_view crash_reason_name(CrashReason r) {
  switch (r) {
    case CrashReason::kMoveBlocked: return "MoveBlocked";
    case CrashReason::kPickEmpty: return "PickEmpty";
    case CrashReason::kPutFull: return "PutFull";
  }
  return "?";
}

struct ExecStatus {
  enum class Kind : std::uint8_t { kOk, kCrash, kTimeout };

  Kind kind = Kind::kOk;
  CrashReason reason = CrashReason::kMoveBlocked;  // kCrash only
  // kCrash: 1-based index of the action that failed. kTimeout: the limit.
  int step = 0;

  bool ok() const { return kind == Kind::kOk; }

  static ExecStatus crash(CrashReason r, int step) {
    return {Kind::kCrash, r, step};
  }
  static ExecStatus timeout(int limit) {
    return {Kind::kTimeout, CrashReason::kMoveBlocked, limit};
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::kOk: return "OK";
      case Kind::kCrash:
        return "Crash(" + std::string(crash_reason_name(reason)) + ", " +
               std::to_string(step) + ")";
      case Kind::kTimeout: return "Timeout(" + std::to_string(step) + ")";
    }
    return "?";
  }

  friend bool operator==(const ExecStatus& a, const ExecStatus& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Kind::kOk) return true;
    return a.step == b.step && (a.kind != Kind::kCrash || a.reason == b.reason);
  }
};

struct TraceEvent {
  WorldState state;
  // Index of the action token that produced this state; empty for the input.
  std::optional<std::size_t> producing_token;
  // Keyword indices of the enclosing control constructs, outermost first.
  std::vector<std::size_t> active_control_tokens;

  friend bool operator==(const TraceEvent&, const TraceEvent&) = default;
};

struct Trace {
  std::vector<TraceEvent> events;
  ExecStatus status;

  friend bool operator==(const Trace&, const Trace&) = default;
};

struct ExecResult {
  std::optional<WorldState> final_state;  // present iff status is OK
  Trace trace;
};

namespace detail {

template <bool kRecord>
class Interpreter {
 public:
  Interpreter(const WorldState& input, int step_limit, Trace* trace)
      : state_(input), step_limit_(step_limit), trace_(trace) {}

  ExecStatus run(const Program& program) {
    if constexpr (kRecord) trace_->events.push_back({state_, std::nullopt, {}});
    run_block(program.body);
    return status_;
  }

  const WorldState& state() const { return state_; }

 private:
  bool halted() const { return !status_.ok(); }

  bool clear(Dir d) const {
    const Robot& r = state_.robot();
    const int row = r.row + dir_drow(d);
    const int col = r.col + dir_dcol(d);
    return state_.in_bounds(row, col) && !state_.obstacle(row, col);
  }

  bool eval(const Cond& c) const {
    const Robot& r = state_.robot();
    bool v = false;
    switch (c.atom) {
      case Atom::kFrontIsClear: v = clear(r.dir); break;
      case Atom::kLeftIsClear: v = clear(turn_left(r.dir)); break;
      case Atom::kRightIsClear: v = clear(turn_right(r.dir)); break;
      case Atom::kMarkersPresent: v = state_.markers(r.row, r.col) > 0; break;
      case Atom::kNoMarkersPresent: v = state_.markers(r.row, r.col) == 0; break;
    }
    return (c.negations % 2 == 0) ? v : !v;
  }

  void act(const Stmt& s) {
    if (actions_ == step_limit_) {
      status_ = ExecStatus::timeout(step_limit_);
      return;
    }
    Robot& r = state_.robot();
    switch (s.action) {
      case Action::kMove:
        if (!clear(r.dir)) {
          status_ = ExecStatus::crash(CrashReason::kMoveBlocked, actions_ + 1);
          return;
        }
        r.row += dir_drow(r.dir);
        r.col += dir_dcol(r.dir);
        break;
      case Action::kTurnLeft: r.dir = turn_left(r.dir); break;
      case Action::kTurnRight: r.dir = turn_right(r.dir); break;
      case Action::kPickMarker: {
        const int m = state_.markers(r.row, r.col);
        if (m == 0) {
          status_ = ExecStatus::crash(CrashReason::kPickEmpty, actions_ + 1);
          return;
        }
        state_.set_markers(r.row, r.col, m - 1);
        break;
      }
      case Action::kPutMarker: {
        const int m = state_.markers(r.row, r.col);
        if (m == kMaxMarkers) {
          status_ = ExecStatus::crash(CrashReason::kPutFull, actions_ + 1);
          return;
        }
        state_.set_markers(r.row, r.col, m + 1);
        break;
      }
    }
    ++actions_;
    if constexpr (kRecord) {
      trace_->events.push_back({state_, s.range.begin, controls_});
    }
  }

  void run_body(const Stmt& s, const Block& body) {
    if constexpr (kRecord) controls_.push_back(s.range.begin);
    run_block(body);
    if constexpr (kRecord) controls_.pop_back();
  }

  void run_block(const Block& block) {
    for (const Stmt& s : block) {
      if (halted()) return;
      switch (s.kind) {
        case StmtKind::kAction:
          act(s);
          break;
        case StmtKind::kIf:
          if (eval(s.cond)) run_body(s, s.body);
          break;
        case StmtKind::kIfElse:
          run_body(s, eval(s.cond) ? s.body : s.else_body);
          break;
        case StmtKind::kRepeat:
          for (int i = 0; i < s.count && !halted(); ++i) run_body(s, s.body);
          break;
        case StmtKind::kWhile:
          while (!halted() && eval(s.cond)) {
            const int before = actions_;
            run_body(s, s.body);
            // An iteration without actions leaves the state, and therefore
            // the guard, unchanged: the loop can never exit.
            if (!halted() && actions_ == before) {
              status_ = ExecStatus::timeout(step_limit_);
            }
          }
          break;
      }
    }
  }

  WorldState state_;
  int step_limit_;
  Trace* trace_;
  int actions_ = 0;
  ExecStatus status_;
  std::vector<std::size_t> controls_;
};

inline void check_step_limit(int step_limit) {
  if (step_limit < 1) throw std::invalid_argument("step_limit must be >= 1");
}

}  // namespace detail

// Runs `program` (whose token ranges must be current, as produced by parse()
// or reindex()) on `input`, recording one trace event per executed action.
inline ExecResult execute(const Program& program, const WorldState& input,
                          int step_limit = kDefaultStepLimit) {
  detail::check_step_limit(step_limit);
  ExecResult result;
  detail::Interpreter<true> interp(input, step_limit, &result.trace);
  result.trace.status = interp.run(program);
  if (result.trace.status.ok()) result.final_state = interp.state();
  return result;
}

// Untraced execution; returns the final state iff execution completed.
inline std::optional<WorldState> run_program(const Program& program,
                                             const WorldState& input,
                                             int step_limit = kDefaultStepLimit) {
  detail::check_step_limit(step_limit);
  detail::Interpreter<false> interp(input, step_limit, nullptr);
  if (!interp.run(program).ok()) return std::nullopt;
  return interp.state();
}

// --- Specs and the pass-rate objective ---------------------------------------

struct IoPair {
  WorldState input;
  WorldState output;

  friend bool operator==(const IoPair&, const IoPair&) = default;
};

struct Spec {
  std::vector<IoPair> pairs;

  std::size_t size() const { return pairs.size(); }
  friend bool operator==(const Spec&, const Spec&) = default;
};

inline void validate_spec(const Spec& spec) {
  if (spec.pairs.empty()) throw std::invalid_argument("spec has no pairs");
  for (const auto& p : spec.pairs) {
    if (p.input.height() != p.output.height() ||
        p.input.width() != p.output.width()) {
      throw std::invalid_argument("spec pair dimensions differ");
    }
  }
}

// Exact fraction satisfied/total. Ordering compares by value.
struct PassRate {
  int satisfied = 0;
  int total = 1;

  bool perfect() const { return satisfied == total; }
  double value() const { return static_cast<double>(satisfied) / total; }

  friend std::strong_ordering operator<=>(const PassRate& a,
                                          const PassRate& b) {
    return static_cast<long long>(a.satisfied) * b.total <=>
           static_cast<long long>(b.satisfied) * a.total;
  }
  friend bool operator==(const PassRate& a, const PassRate& b) {
    return (a <=> b) == 0;
  }
};

inline bool satisfies(const Program& program, const IoPair& pair,
                      int step_limit) {
  auto out = run_program(program, pair.input, step_limit);
  return out && *out == pair.output;
}

inline PassRate pass_rate(const Program& program, const Spec& spec,
                          int step_limit = kDefaultStepLimit) {
  PassRate rate{0, static_cast<int>(spec.pairs.size())};
  for (const auto& pair : spec.pairs) {
    if (satisfies(program, pair, step_limit)) ++rate.satisfied;
  }
  return rate;
}

template <class J = Json>
J spec_to_json(const Spec& spec) {
  J arr = J::array();
  for (const auto& p : spec.pairs) {
    J item;
    item["input"] = world_to_json(p.input);
    item["output"] = world_to_json(p.output);
    arr.push_back(std::move(item));
  }
  return arr;
}

template <class J>
Spec spec_from_json(const J& arr) {
  Spec spec;
  for (const auto& item : arr) {
    spec.pairs.push_back(
        {world_from_json(item.at("input")), world_from_json(item.at("output"))});
  }
  return spec;
}

}  // namespace karel

#endif  // KAREL_INTERPRETER_HPP_

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

// Syntax-preserving AST mutations and the repair benchmark built from them.
//
// Six mutation kinds:
//   insert(block, pos, a)        add action a before position pos
//   delete(block, i)             remove action statement i
//   replace(block, i, a)         swap action statement i for a different one
//   wrap(block, [i, j), t, v)    enclose statements i..j-1 in control type t
//                                with value v; for ifelse, `split` divides the
//                                span into then- and else-branches
//   unwrap(block, i)             splice control statement i's body (then-body
//                                followed by else-body) in its place
//   replaceControl(block, i, v)  change the condition or repeat count
//
// Blocks are addressed by child-index paths from the program root.

#ifndef KAREL_MUTATE_HPP_
#define KAREL_MUTATE_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "karel/ast.hpp"
#include "karel/interpreter.hpp"
#include "karel/rng.hpp"
#include "karel/task.hpp"

namespace karel {

// One step down the tree: statement `index` of the current block, then its
// then-body (branch 0) or else-body (branch 1).
struct PathStep {
  int index = 0;
  int branch = 0;

  friend bool operator==(const PathStep&, const PathStep&) = default;
};
using BlockPath = std::vector<PathStep>;

enum class MutationKind : std::uint8_t {
  kInsert,
  kDelete,
  kReplace,
  kWrap,
  kUnwrap,
  kReplaceControl,
};
inline constexpr int kNumMutationKinds = 6;

inline std::string_view mutation_kind_name(MutationKind k) {
  switch (k) {
    case MutationKind::kInsert: return "insert";
    case MutationKind::kDelete: return "delete";
    case MutationKind::kReplace: return "replace";
    case MutationKind::kWrap: return "wrap";
    case MutationKind::kUnwrap: return "unwrap";
    case MutationKind::kReplaceControl: return "replaceControl";
  }
  return "?";
}

struct Mutation {
  MutationKind kind = MutationKind::kInsert;
  BlockPath block;
  int index = 0;     // insert: position; wrap: span begin; else: statement
  int span_end = 0;  // wrap only, exclusive
  int split = 0;     // wrap with ifelse only, in [index, span_end]
  Action action = Action::kMove;         // insert, replace
  StmtKind control = StmtKind::kIf;      // wrap
  Cond cond;                             // wrap / replaceControl on if, ifelse, while
  int count = 0;                         // wrap / replaceControl on repeat

  friend bool operator==(const Mutation&, const Mutation&) = default;
};

class InapplicableMutation : public std::invalid_argument {
 public:
  explicit InapplicableMutation(const std::string& why)
      : std::invalid_argument("inapplicable mutation: " + why) {}
};

// The condition domain for wrap and replaceControl: each atom, bare or under
// one `not`.
inline std::vector<Cond> condition_domain() {
  std::vector<Cond> out;
  for (int neg = 0; neg <= 1; ++neg)
    for (int a = 0; a < kNumAtoms; ++a) out.push_back({neg, static_cast<Atom>(a)});
  return out;
}

inline std::string describe(const Mutation& m) {
  std::string path = "[";
  for (std::size_t i = 0; i < m.block.size(); ++i) {
    if (i) path += ",";
    path += std::to_string(m.block[i].index) + "." + std::to_string(m.block[i].branch);
  }
  path += "]";
  auto cond_str = [](const Cond& c) {
    std::string s(c.negations, '!');
    return s + std::string(token_name(atom_token(c.atom)));
  };
  std::string s(mutation_kind_name(m.kind));
  s += "(" + path + "@" + std::to_string(m.index);
  switch (m.kind) {
    case MutationKind::kInsert:
    case MutationKind::kReplace:
      s += ", " + std::string(token_name(action_token(m.action)));
      break;
    case MutationKind::kWrap:
      s += ".." + std::to_string(m.span_end) + ", " +
           std::string(token_name(control_keyword(m.control))) + ", ";
      s += m.control == StmtKind::kRepeat ? std::to_string(m.count)
                                           : cond_str(m.cond);
      if (m.control == StmtKind::kIfElse) s += ", split=" + std::to_string(m.split);
      break;
    case MutationKind::kReplaceControl:
      // The target's kind decides which of the two values is used.
      s += ", " + cond_str(m.cond) + "|" + std::to_string(m.count);
      break;
    default:
      break;
  }
  return s + ")";
}

namespace detail {

inline void enumerate_block(const Block& block, BlockPath& path,
                            std::vector<Mutation>& out) {
  const auto conds = condition_domain();
  const int len = static_cast<int>(block.size());

  for (int pos = 0; pos <= len; ++pos) {
    for (int a = 0; a < kNumActions; ++a) {
      Mutation m;
      m.kind = MutationKind::kInsert;
      m.block = path;
      m.index = pos;
      m.action = static_cast<Action>(a);
      out.push_back(std::move(m));
    }
  }

  for (int i = 0; i < len; ++i) {
    const Stmt& s = block[i];
    Mutation base;
    base.block = path;
    base.index = i;
    if (s.kind == StmtKind::kAction) {
      base.kind = MutationKind::kDelete;
      out.push_back(base);
      base.kind = MutationKind::kReplace;
      for (int a = 0; a < kNumActions; ++a) {
        if (static_cast<Action>(a) == s.action) continue;
        base.action = static_cast<Action>(a);
        out.push_back(base);
      }
      continue;
    }
    base.kind = MutationKind::kUnwrap;
    out.push_back(base);
    base.kind = MutationKind::kReplaceControl;
    if (s.kind == StmtKind::kRepeat) {
      for (int c = 0; c <= kMaxRepeat; ++c) {
        if (c == s.count) continue;
        base.count = c;
        out.push_back(base);
      }
    } else {
      for (const Cond& c : conds) {
        if (c == s.cond) continue;
        base.cond = c;
        out.push_back(base);
      }
    }
    path.push_back({i, 0});
    enumerate_block(s.body, path, out);
    path.pop_back();
    if (s.kind == StmtKind::kIfElse) {
      path.push_back({i, 1});
      enumerate_block(s.else_body, path, out);
      path.pop_back();
    }
  }

  for (int i = 0; i < len; ++i) {
    for (int j = i + 1; j <= len; ++j) {
      Mutation m;
      m.kind = MutationKind::kWrap;
      m.block = path;
      m.index = i;
      m.span_end = j;
      for (StmtKind t : {StmtKind::kIf, StmtKind::kWhile}) {
        m.control = t;
        for (const Cond& c : conds) {
          m.cond = c;
          out.push_back(m);
        }
      }
      m.control = StmtKind::kRepeat;
      m.cond = {};
      for (int c = 0; c <= kMaxRepeat; ++c) {
        m.count = c;
        out.push_back(m);
      }
      m.control = StmtKind::kIfElse;
      m.count = 0;
      for (int split = i; split <= j; ++split) {
        m.split = split;
        for (const Cond& c : conds) {
          m.cond = c;
          out.push_back(m);
        }
      }
    }
  }
}

inline Block& resolve_block(Program& p, const BlockPath& path) {
  Block* block = &p.body;
  for (const PathStep& step : path) {
    if (step.index < 0 || step.index >= static_cast<int>(block->size())) {
      throw InapplicableMutation("path index out of range");
    }
    Stmt& s = (*block)[step.index];
    if (!is_control(s.kind)) throw InapplicableMutation("path through an action");
    if (step.branch == 0) {
      block = &s.body;
    } else if (step.branch == 1 && s.kind == StmtKind::kIfElse) {
      block = &s.else_body;
    } else {
      throw InapplicableMutation("bad branch in path");
    }
  }
  return *block;
}

inline bool valid_cond(const Cond& c) {
  return c.negations >= 0 && static_cast<int>(c.atom) < kNumAtoms;
}

}  // namespace detail

// Every mutation that applies to `program`, in a fixed enumeration order.
inline std::vector<Mutation> applicable_mutations(const Program& program) {
  std::vector<Mutation> out;
  BlockPath path;
  detail::enumerate_block(program.body, path, out);
  return out;
}

inline Program apply_mutation(const Program& program, const Mutation& m) {
  Program p = program;
  Block& block = detail::resolve_block(p, m.block);
  const int len = static_cast<int>(block.size());
  auto stmt_at = [&](int i) -> Stmt& {
    if (i < 0 || i >= len) throw InapplicableMutation("statement index out of range");
    return block[i];
  };

  switch (m.kind) {
    case MutationKind::kInsert:
      if (m.index < 0 || m.index > len) {
        throw InapplicableMutation("insert position out of range");
      }
      block.insert(block.begin() + m.index, Stmt::make_action(m.action));
      break;
    case MutationKind::kDelete:
      if (stmt_at(m.index).kind != StmtKind::kAction) {
        throw InapplicableMutation("delete targets a non-action");
      }
      block.erase(block.begin() + m.index);
      break;
    case MutationKind::kReplace: {
      Stmt& s = stmt_at(m.index);
      if (s.kind != StmtKind::kAction) {
        throw InapplicableMutation("replace targets a non-action");
      }
      if (s.action == m.action) throw InapplicableMutation("replace with same action");
      s.action = m.action;
      break;
    }
    case MutationKind::kWrap: {
      if (m.index < 0 || m.span_end > len || m.index >= m.span_end) {
        throw InapplicableMutation("wrap span is empty or out of range");
      }
      Block span(std::make_move_iterator(block.begin() + m.index),
                 std::make_move_iterator(block.begin() + m.span_end));
      Stmt wrapped;
      switch (m.control) {
        case StmtKind::kIf:
        case StmtKind::kWhile:
          if (!detail::valid_cond(m.cond)) throw InapplicableMutation("bad condition");
          wrapped = m.control == StmtKind::kIf ? Stmt::make_if(m.cond, std::move(span))
                                               : Stmt::make_while(m.cond, std::move(span));
          break;
        case StmtKind::kRepeat:
          if (m.count < 0 || m.count > kMaxRepeat) {
            throw InapplicableMutation("repeat count out of range");
          }
          wrapped = Stmt::make_repeat(m.count, std::move(span));
          break;
        case StmtKind::kIfElse: {
          if (m.split < m.index || m.split > m.span_end) {
            throw InapplicableMutation("ifelse split outside span");
          }
          if (!detail::valid_cond(m.cond)) throw InapplicableMutation("bad condition");
          const auto cut = static_cast<std::ptrdiff_t>(m.split - m.index);
          Block then_body(std::make_move_iterator(span.begin()),
                          std::make_move_iterator(span.begin() + cut));
          Block else_body(std::make_move_iterator(span.begin() + cut),
                          std::make_move_iterator(span.end()));
          wrapped = Stmt::make_ifelse(m.cond, std::move(then_body),
                                      std::move(else_body));
          break;
        }
        case StmtKind::kAction:
          throw InapplicableMutation("wrap needs a control type");
      }
      block.erase(block.begin() + m.index, block.begin() + m.span_end);
      block.insert(block.begin() + m.index, std::move(wrapped));
      break;
    }
    case MutationKind::kUnwrap: {
      Stmt& s = stmt_at(m.index);
      if (!is_control(s.kind)) throw InapplicableMutation("unwrap targets an action");
      Block spliced = std::move(s.body);
      for (auto& e : s.else_body) spliced.push_back(std::move(e));
      block.erase(block.begin() + m.index);
      block.insert(block.begin() + m.index, std::make_move_iterator(spliced.begin()),
                   std::make_move_iterator(spliced.end()));
      break;
    }
    case MutationKind::kReplaceControl: {
      Stmt& s = stmt_at(m.index);
      if (!is_control(s.kind)) {
        throw InapplicableMutation("replaceControl targets an action");
      }
      if (s.kind == StmtKind::kRepeat) {
        if (m.count < 0 || m.count > kMaxRepeat || m.count == s.count) {
          throw InapplicableMutation("bad repeat count");
        }
        s.count = m.count;
      } else {
        if (!detail::valid_cond(m.cond) || m.cond == s.cond) {
          throw InapplicableMutation("bad condition");
        }
        s.cond = m.cond;
      }
      break;
    }
  }
  reindex(p);
  return p;
}

// n sequential mutations, each drawn uniformly from the applicable set of the
// current program.
inline Program mutate_n(const Program& program, int n, std::uint64_t rng_seed) {
  if (n < 1) throw std::invalid_argument("mutate_n requires n >= 1");
  Rng rng(rng_seed);
  Program cur = program;
  for (int i = 0; i < n; ++i) {
    const auto muts = applicable_mutations(cur);
    const int pick = uniform_int(rng, 0, static_cast<int>(muts.size()) - 1);
    cur = apply_mutation(cur, muts[pick]);
  }
  return cur;
}

// --- Repair benchmark ----------------------------------------------------------

inline constexpr int kMaxMutantRedraws = 20;

struct RepairBenchmarkStats {
  int generated = 0;
  int flagged_equivalent = 0;

  double flagged_fraction() const {
    return generated ? static_cast<double>(flagged_equivalent) / generated : 0.0;
  }
};

// One RepairTask per (task, n) for n in [lo, hi]. Mutants that still pass
// the whole spec are redrawn; after kMaxMutantRedraws such draws the last one
// is kept and flagged.
inline std::vector<RepairTask> build_repair_benchmark(
    const std::vector<Task>& tasks, std::pair<int, int> n_range,
    std::uint64_t rng_seed, int step_limit = kDefaultStepLimit,
    RepairBenchmarkStats* stats = nullptr) {
  const auto [lo, hi] = n_range;
  if (lo < 1 || hi < lo) throw std::invalid_argument("mutation range must satisfy 1 <= lo <= hi");
  std::vector<RepairTask> out;
  RepairBenchmarkStats local;
  for (std::size_t t = 0; t < tasks.size(); ++t) {
    const Task& task = tasks[t];
    for (int n = lo; n <= hi; ++n) {
      const std::uint64_t cell_seed = mix_seed(rng_seed, t * 1024 + static_cast<std::uint64_t>(n));
      RepairTask rt;
      rt.id = task.id + "-m" + std::to_string(n);
      rt.n_mutations = n;
      rt.gold = task.gold;
      rt.spec = task.spec;
      rt.held_out = task.held_out;
      rt.semantically_equivalent = true;
      for (int attempt = 0; attempt < kMaxMutantRedraws; ++attempt) {
        rt.broken = mutate_n(task.gold, n, mix_seed(cell_seed, attempt));
        if (!pass_rate(rt.broken, task.spec, step_limit).perfect()) {
          rt.semantically_equivalent = false;
          break;
        }
      }
      ++local.generated;
      if (rt.semantically_equivalent) ++local.flagged_equivalent;
      out.push_back(std::move(rt));
    }
  }
  if (stats) *stats = local;
  return out;
}

}  // namespace karel

#endif  // KAREL_MUTATE_HPP_

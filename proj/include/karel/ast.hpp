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

#ifndef KAREL_AST_HPP_
#define KAREL_AST_HPP_

#include <algorithm>
#include <cstddef>
#include <string>
#include <type_traits>
#include <vector>

#include "karel/token.hpp"

namespace karel {

enum class Action : std::uint8_t {
  kMove,
  kTurnLeft,
  kTurnRight,
  kPickMarker,
  kPutMarker,
};
inline constexpr int kNumActions = 5;

enum class Atom : std::uint8_t {
  kFrontIsClear,
  kLeftIsClear,
  kRightIsClear,
  kMarkersPresent,
  kNoMarkersPresent,
};
inline constexpr int kNumAtoms = 5;

constexpr Token action_token(Action a) {
  return static_cast<Token>(static_cast<int>(Token::kMove) +
                            static_cast<int>(a));
}
constexpr Action token_action(Token t) {
  return static_cast<Action>(static_cast<int>(t) -
                             static_cast<int>(Token::kMove));
}
constexpr Token atom_token(Atom a) {
  return static_cast<Token>(static_cast<int>(Token::kFrontIsClear) +
                            static_cast<int>(a));
}
constexpr Atom token_atom(Token t) {
  return static_cast<Atom>(static_cast<int>(t) -
                           static_cast<int>(Token::kFrontIsClear));
}

// `not` may nest arbitrarily, so a condition is an atom under some number of
// negations.
struct Cond {
  int negations = 0;
  Atom atom = Atom::kFrontIsClear;

  friend bool operator==(const Cond&, const Cond&) = default;
};

// Half-open range of token indices in the flattened program.
struct TokenRange {
  std::size_t begin = 0;
  std::size_t end = 0;
};

enum class StmtKind : std::uint8_t { kAction, kIf, kIfElse, kWhile, kRepeat };
inline constexpr int kNumStmtKinds = 5;

constexpr bool is_control(StmtKind k) { return k != StmtKind::kAction; }

constexpr Token control_keyword(StmtKind k) {
  switch (k) {
    case StmtKind::kIf: return Token::kIf;
    case StmtKind::kIfElse: return Token::kIfElse;
    case StmtKind::kWhile: return Token::kWhile;
    case StmtKind::kRepeat: return Token::kRepeat;
    case StmtKind::kAction: break;
  }
  return Token::kMove;
}

// A statement node. Only the fields relevant to `kind` are meaningful:
//   kAction  -> action
//   kIf      -> cond, body
//   kIfElse  -> cond, body (then), else_body
//   kWhile   -> cond, body
//   kRepeat  -> count, body
// Equality ignores `range`, which is derived from position.
struct Stmt {
  StmtKind kind = StmtKind::kAction;
  Action action = Action::kMove;
  Cond cond;
  int count = 0;
  std::vector<Stmt> body;
  std::vector<Stmt> else_body;
  TokenRange range;

  static Stmt make_action(Action a) {
    Stmt s;
    s.kind = StmtKind::kAction;
    s.action = a;
    return s;
  }
  static Stmt make_if(Cond c, std::vector<Stmt> body) {
    Stmt s;
    s.kind = StmtKind::kIf;
    s.cond = c;
    s.body = std::move(body);
    return s;
  }
  static Stmt make_ifelse(Cond c, std::vector<Stmt> then_body,
                          std::vector<Stmt> else_body) {
    Stmt s;
    s.kind = StmtKind::kIfElse;
    s.cond = c;
    s.body = std::move(then_body);
    s.else_body = std::move(else_body);
    return s;
  }
  static Stmt make_while(Cond c, std::vector<Stmt> body) {
    Stmt s;
    s.kind = StmtKind::kWhile;
    s.cond = c;
    s.body = std::move(body);
    return s;
  }
  static Stmt make_repeat(int count, std::vector<Stmt> body) {
    Stmt s;
    s.kind = StmtKind::kRepeat;
    s.count = count;
    s.body = std::move(body);
    return s;
  }

  friend bool operator==(const Stmt& a, const Stmt& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
      case StmtKind::kAction:
        return a.action == b.action;
      case StmtKind::kIf:
      case StmtKind::kWhile:
        return a.cond == b.cond && a.body == b.body;
      case StmtKind::kIfElse:
        return a.cond == b.cond && a.body == b.body &&
               a.else_body == b.else_body;
      case StmtKind::kRepeat:
        return a.count == b.count && a.body == b.body;
    }
    return false;
  }
};

using Block = std::vector<Stmt>;

struct Program {
  Block body;
  TokenRange range;

  friend bool operator==(const Program& a, const Program& b) {
    return a.body == b.body;
  }
};

namespace detail {

inline void emit_cond(const Cond& c, TokenSeq& out) {
  for (int i = 0; i < c.negations; ++i) out.push_back(Token::kNot);
  out.push_back(atom_token(c.atom));
}

template <class S>
void emit_block(std::vector<S>& block, TokenSeq& out);
inline void emit_block(const Block& block, TokenSeq& out);

// S is Stmt (ranges are written) or const Stmt (pure emission).
template <class S>
void emit_stmt(S& s, TokenSeq& out) {
  constexpr bool kAnnotate = !std::is_const_v<S>;
  if constexpr (kAnnotate) s.range.begin = out.size();
  switch (s.kind) {
    case StmtKind::kAction:
      out.push_back(action_token(s.action));
      break;
    case StmtKind::kIf:
    case StmtKind::kIfElse:
    case StmtKind::kWhile:
      out.push_back(control_keyword(s.kind));
      out.push_back(Token::kLParen);
      emit_cond(s.cond, out);
      out.push_back(Token::kRParen);
      emit_block(s.body, out);
      if (s.kind == StmtKind::kIfElse) {
        out.push_back(Token::kElse);
        emit_block(s.else_body, out);
      }
      break;
    case StmtKind::kRepeat:
      out.push_back(Token::kRepeat);
      out.push_back(Token::kLParen);
      out.push_back(numeral(s.count));
      out.push_back(Token::kRParen);
      emit_block(s.body, out);
      break;
  }
  if constexpr (kAnnotate) s.range.end = out.size();
}

template <class S>
void emit_block(std::vector<S>& block, TokenSeq& out) {
  out.push_back(Token::kLBrace);
  for (auto& s : block) emit_stmt(s, out);
  out.push_back(Token::kRBrace);
}

inline void emit_block(const Block& block, TokenSeq& out) {
  out.push_back(Token::kLBrace);
  for (const Stmt& s : block) emit_stmt(s, out);
  out.push_back(Token::kRBrace);
}

}  // namespace detail

// Recomputes every node's token range; returns the flattened tokens.
inline TokenSeq reindex(Program& program) {
  TokenSeq out;
  out.push_back(Token::kDef);
  out.push_back(Token::kRun);
  detail::emit_block(program.body, out);
  program.range = {0, out.size()};
  return out;
}

inline TokenSeq flatten(const Program& program) {
  TokenSeq out;
  out.push_back(Token::kDef);
  out.push_back(Token::kRun);
  detail::emit_block(program.body, out);
  return out;
}

inline std::string to_text(const Program& program) {
  return detokenize(flatten(program));
}

inline std::size_t count_statements(const Block& block) {
  std::size_t n = 0;
  for (const auto& s : block) {
    n += 1 + count_statements(s.body) + count_statements(s.else_body);
  }
  return n;
}

// Nesting depth: an action has depth 1, a control node 1 + its deepest body.
inline int block_depth(const Block& block) {
  int d = 0;
  for (const auto& s : block) {
    int sd = 1;
    if (is_control(s.kind)) {
      sd = 1 + std::max(block_depth(s.body), block_depth(s.else_body));
    }
    d = std::max(d, sd);
  }
  return d;
}

namespace detail {

inline void indent_to(std::string& out, int level) {
  out.append(static_cast<std::size_t>(level) * 2, ' ');
}

inline std::string cond_text(const Cond& c) {
  std::string s;
  for (int i = 0; i < c.negations; ++i) s += "not ";
  s += token_name(atom_token(c.atom));
  return s;
}

inline void pretty_block(const Block& block, int level, std::string& out);

inline void pretty_stmt(const Stmt& s, int level, std::string& out) {
  indent_to(out, level);
  switch (s.kind) {
    case StmtKind::kAction:
      out += token_name(action_token(s.action));
      out += '\n';
      return;
    case StmtKind::kRepeat:
      out += "repeat ( " + std::to_string(s.count) + " ) ";
      break;
    default:
      out += std::string(token_name(control_keyword(s.kind))) + " ( " +
             cond_text(s.cond) + " ) ";
      break;
  }
  pretty_block(s.body, level, out);
  if (s.kind == StmtKind::kIfElse) {
    indent_to(out, level);
    out += "else ";
    pretty_block(s.else_body, level, out);
  }
}

inline void pretty_block(const Block& block, int level, std::string& out) {
  out += "{\n";
  for (const auto& s : block) pretty_stmt(s, level + 1, out);
  indent_to(out, level);
  out += "}\n";
}

}  // namespace detail

// Multi-line indented rendering. Tokenizes back to the canonical form.
inline std::string pretty_print(const Program& program) {
  std::string out = "def run ";
  detail::pretty_block(program.body, 0, out);
  return out;
}

}  // namespace karel

#endif  // KAREL_AST_HPP_

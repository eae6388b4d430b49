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

// Recursive-descent parser for the brace-delimited Karel surface syntax:
//
//   prog  ::= 'def' 'run' block
//   block ::= '{' stmt* '}'
//   stmt  ::= action
//           | 'while'  '(' cond ')' block
//           | 'if'     '(' cond ')' block
//           | 'ifelse' '(' cond ')' block 'else' block
//           | 'repeat' '(' numeral ')' block
//   cond  ::= 'not' cond | atom

#ifndef KAREL_PARSER_HPP_
#define KAREL_PARSER_HPP_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "karel/ast.hpp"
#include "karel/token.hpp"

namespace karel {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class SyntaxError : public ParseError {
 public:
  SyntaxError(std::size_t position, std::vector<std::string> expected,
              std::optional<Token> found)
      : ParseError(describe(position, expected, found), position),
        expected_(std::move(expected)) {}

  // Human-readable descriptions of what would have been accepted.
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  static std::string describe(std::size_t position,
                              const std::vector<std::string>& expected,
                              std::optional<Token> found) {
    std::string s = "syntax error at token " + std::to_string(position) +
                    ": expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) s += i + 1 == expected.size() ? " or " : ", ";
      s += expected[i];
    }
    s += found ? ", found '" + std::string(token_name(*found)) + "'"
               : ", found end of input";
    return s;
  }

  std::vector<std::string> expected_;
};

class UnbalancedDelimiterError : public ParseError {
 public:
  explicit UnbalancedDelimiterError(std::size_t position)
      : ParseError("unbalanced delimiter at token " + std::to_string(position),
                   position) {}
};

namespace detail {

// Bracket matching runs before the grammar so that a stray or missing
// delimiter is reported as such rather than as a generic syntax error.
inline void check_balance(const TokenSeq& tokens) {
  std::vector<std::pair<Token, std::size_t>> stack;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    Token t = tokens[i];
    if (t == Token::kLParen || t == Token::kLBrace) {
      stack.emplace_back(t, i);
    } else if (t == Token::kRParen || t == Token::kRBrace) {
      Token open = t == Token::kRParen ? Token::kLParen : Token::kLBrace;
      if (stack.empty() || stack.back().first != open) {
        throw UnbalancedDelimiterError(i);
      }
      stack.pop_back();
    }
  }
  if (!stack.empty()) throw UnbalancedDelimiterError(stack.back().second);
}

class Parser {
 public:
  explicit Parser(const TokenSeq& tokens) : toks_(tokens) {}

  Program parse_program() {
    Program p;
    expect(Token::kDef);
    expect(Token::kRun);
    p.body = parse_block();
    if (pos_ != toks_.size()) fail({"end of program"});
    p.range = {0, toks_.size()};
    return p;
  }

 private:
  std::optional<Token> peek() const {
    if (pos_ < toks_.size()) return toks_[pos_];
    return std::nullopt;
  }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    throw SyntaxError(pos_, std::move(expected), peek());
  }

  void expect(Token t) {
    if (peek() != t) fail({"'" + std::string(token_name(t)) + "'"});
    ++pos_;
  }

  Block parse_block() {
    expect(Token::kLBrace);
    Block block;
    while (peek() && *peek() != Token::kRBrace) {
      block.push_back(parse_stmt());
    }
    expect(Token::kRBrace);
    return block;
  }

  Cond parse_cond() {
    Cond c;
    while (peek() == Token::kNot) {
      ++c.negations;
      ++pos_;
    }
    auto t = peek();
    if (!t || !is_atomic_condition(*t)) fail({"condition"});
    c.atom = token_atom(*t);
    ++pos_;
    return c;
  }

  Stmt parse_stmt() {
    std::size_t begin = pos_;
    Token t = *peek();
    Stmt s;
    if (is_action(t)) {
      ++pos_;
      s = Stmt::make_action(token_action(t));
    } else if (t == Token::kRepeat) {
      ++pos_;
      expect(Token::kLParen);
      auto n = peek();
      if (!n || !is_numeral(*n)) fail({"numeral"});
      ++pos_;
      expect(Token::kRParen);
      s = Stmt::make_repeat(numeral_value(*n), parse_block());
    } else if (t == Token::kWhile || t == Token::kIf || t == Token::kIfElse) {
      ++pos_;
      expect(Token::kLParen);
      Cond c = parse_cond();
      expect(Token::kRParen);
      Block body = parse_block();
      if (t == Token::kWhile) {
        s = Stmt::make_while(c, std::move(body));
      } else if (t == Token::kIf) {
        s = Stmt::make_if(c, std::move(body));
      } else {
        expect(Token::kElse);
        s = Stmt::make_ifelse(c, std::move(body), parse_block());
      }
    } else {
      fail({"action", "'while'", "'repeat'", "'if'", "'ifelse'", "'}'"});
    }
    s.range = {begin, pos_};
    return s;
  }

  const TokenSeq& toks_;
  std::size_t pos_ = 0;
};

}  // namespace detail

// Parses a token sequence into an annotated AST. Throws
// UnbalancedDelimiterError or SyntaxError on the first violation.
inline Program parse(const TokenSeq& tokens) {
  detail::check_balance(tokens);
  return detail::Parser(tokens).parse_program();
}

inline Program parse_text(std::string_view text) { return parse(tokenize(text)); }

inline std::optional<Program> try_parse(const TokenSeq& tokens) {
  try {
    return parse(tokens);
  } catch (const ParseError&) {
    return std::nullopt;
  }
}

}  // namespace karel

#endif  // KAREL_PARSER_HPP_

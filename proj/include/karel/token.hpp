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

#ifndef KAREL_TOKEN_HPP_
#define KAREL_TOKEN_HPP_

#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace karel {

// The closed Karel vocabulary. Enumerator order is the canonical token order
// used wherever token sequences are compared lexicographically.
enum class Token : std::uint8_t {
  // actions
  kMove,
  kTurnLeft,
  kTurnRight,
  kPickMarker,
  kPutMarker,
  // condition words
  kFrontIsClear,
  kLeftIsClear,
  kRightIsClear,
  kMarkersPresent,
  kNoMarkersPresent,
  kNot,
  // keywords
  kDef,
  kRun,
  kIf,
  kIfElse,
  kElse,
  kWhile,
  kRepeat,
  // numerals 0..19 are contiguous
  kNum0,
  kNum19 = kNum0 + 19,
  // delimiters
  kLParen,
  kRParen,
  kLBrace,
  kRBrace,
};

inline constexpr std::size_t kVocabSize =
    static_cast<std::size_t>(Token::kRBrace) + 1;
static_assert(kVocabSize == 42);

inline constexpr int kMaxRepeat = 19;

using TokenSeq = std::vector<Token>;

namespace detail {

inline constexpr std::array<std::string_view, kVocabSize> kTokenNames = {
    "move",         "turnLeft",    "turnRight",      "pickMarker",
    "putMarker",    "frontIsClear", "leftIsClear",   "rightIsClear",
    "markersPresent", "noMarkersPresent", "not",     "def",
    "run",          "if",          "ifelse",         "else",
    "while",        "repeat",      "0",              "1",
    "2",            "3",           "4",              "5",
    "6",            "7",           "8",              "9",
    "10",           "11",          "12",             "13",
    "14",           "15",          "16",             "17",
    "18",           "19",          "(",              ")",
    "{",            "}",
};

}  // namespace detail

constexpr std::string_view token_name(Token t) {
  return detail::kTokenNames[static_cast<std::size_t>(t)];
}

constexpr Token token_at(std::size_t vocab_index) {
  return static_cast<Token>(vocab_index);
}

inline std::optional<Token> token_from_name(std::string_view word) {
  for (std::size_t i = 0; i < kVocabSize; ++i) {
    if (detail::kTokenNames[i] == word) return token_at(i);
  }
  return std::nullopt;
}

constexpr bool is_action(Token t) { return t <= Token::kPutMarker; }

constexpr bool is_atomic_condition(Token t) {
  return t >= Token::kFrontIsClear && t <= Token::kNoMarkersPresent;
}

constexpr bool is_numeral(Token t) {
  return t >= Token::kNum0 && t <= Token::kNum19;
}

constexpr bool is_control_keyword(Token t) {
  return t == Token::kIf || t == Token::kIfElse || t == Token::kWhile ||
         t == Token::kRepeat;
}

constexpr Token numeral(int value) {
  return static_cast<Token>(static_cast<int>(Token::kNum0) + value);
}

constexpr int numeral_value(Token t) {
  return static_cast<int>(t) - static_cast<int>(Token::kNum0);
}

// Thrown by tokenize(); position is the zero-based word index.
class UnknownTokenError : public std::runtime_error {
 public:
  UnknownTokenError(std::string word, std::size_t position)
      : std::runtime_error("unknown token '" + word + "' at position " +
                           std::to_string(position)),
        word_(std::move(word)),
        position_(position) {}

  const std::string& word() const { return word_; }
  std::size_t position() const { return position_; }

 private:
  std::string word_;
  std::size_t position_;
};

inline TokenSeq tokenize(std::string_view text) {
  TokenSeq out;
  std::size_t i = 0;
  std::size_t word_index = 0;
  while (i < text.size()) {
    while (i < text.size() &&
           std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
    }
    if (i == text.size()) break;
    std::size_t j = i;
    while (j < text.size() &&
           !std::isspace(static_cast<unsigned char>(text[j]))) {
      ++j;
    }
    std::string_view word = text.substr(i, j - i);
    auto tok = token_from_name(word);
    if (!tok) throw UnknownTokenError(std::string(word), word_index);
    out.push_back(*tok);
    ++word_index;
    i = j;
  }
  return out;
}

inline std::string detokenize(const TokenSeq& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out.append(token_name(tokens[i]));
  }
  return out;
}

}  // namespace karel

#endif  // KAREL_TOKEN_HPP_

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

#ifndef KAREL_EDIT_HPP_
#define KAREL_EDIT_HPP_

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "karel/token.hpp"

namespace karel {

// Token-level edit operations. The decoder walks the source with a pointer:
// KEEP, REPLACE and DELETE consume one source token; INSERT does not.
struct EditOp {
  enum class Kind : std::uint8_t { kKeep, kDelete, kInsert, kReplace };

  Kind kind = Kind::kKeep;
  Token token = Token::kMove;  // kInsert / kReplace only

  static EditOp keep() { return {Kind::kKeep, Token::kMove}; }
  static EditOp del() { return {Kind::kDelete, Token::kMove}; }
  static EditOp insert(Token t) { return {Kind::kInsert, t}; }
  static EditOp replace(Token t) { return {Kind::kReplace, t}; }

  bool consumes() const { return kind != Kind::kInsert; }
  bool has_token() const {
    return kind == Kind::kInsert || kind == Kind::kReplace;
  }

  friend bool operator==(const EditOp& a, const EditOp& b) {
    return a.kind == b.kind && (!a.has_token() || a.token == b.token);
  }
};

using EditScript = std::vector<EditOp>;

// KEEP, DELETE, and one INSERT / REPLACE per vocabulary token.
inline constexpr std::size_t kEditOpUniverseSize = 2 * kVocabSize + 2;

inline std::vector<EditOp> all_edit_ops() {
  std::vector<EditOp> ops = {EditOp::keep(), EditOp::del()};
  for (std::size_t i = 0; i < kVocabSize; ++i) {
    ops.push_back(EditOp::insert(token_at(i)));
    ops.push_back(EditOp::replace(token_at(i)));
  }
  return ops;
}

class ScriptLengthMismatch : public std::invalid_argument {
 public:
  ScriptLengthMismatch(std::size_t consumed, std::size_t source_len)
      : std::invalid_argument("edit script consumes " +
                              std::to_string(consumed) + " tokens, source has " +
                              std::to_string(source_len)),
        consumed_(consumed),
        source_len_(source_len) {}

  std::size_t consumed() const { return consumed_; }
  std::size_t source_len() const { return source_len_; }

 private:
  std::size_t consumed_;
  std::size_t source_len_;
};

inline std::size_t consumed_count(const EditScript& script) {
  return static_cast<std::size_t>(std::count_if(
      script.begin(), script.end(), [](const EditOp& op) { return op.consumes(); }));
}

inline TokenSeq apply_edits(const TokenSeq& src, const EditScript& script) {
  if (const std::size_t n = consumed_count(script); n != src.size()) {
    throw ScriptLengthMismatch(n, src.size());
  }
  TokenSeq out;
  out.reserve(src.size() + script.size());
  std::size_t p = 0;
  for (const EditOp& op : script) {
    switch (op.kind) {
      case EditOp::Kind::kKeep: out.push_back(src[p++]); break;
      case EditOp::Kind::kReplace: out.push_back(op.token); ++p; break;
      case EditOp::Kind::kDelete: ++p; break;
      case EditOp::Kind::kInsert: out.push_back(op.token); break;
    }
  }
  return out;
}

// Unit-cost Levenshtein distance, two-row DP.
inline int edit_distance(const TokenSeq& a, const TokenSeq& b) {
  std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const int sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({sub, prev[j] + 1, cur[j - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

// A minimum-cost script from src to tgt. The prefix DP table is walked back
// from (|src|, |tgt|) preferring KEEP, then REPLACE, DELETE, INSERT among
// optimal moves, so the script for a given pair is unique.
inline EditScript min_edit_script(const TokenSeq& src, const TokenSeq& tgt) {
  const std::size_t n = src.size();
  const std::size_t m = tgt.size();
  const std::size_t stride = m + 1;
  std::vector<int> d((n + 1) * stride);
  auto at = [&](std::size_t i, std::size_t j) -> int& {
    return d[i * stride + j];
  };
  for (std::size_t i = 0; i <= n; ++i) at(i, 0) = static_cast<int>(i);
  for (std::size_t j = 0; j <= m; ++j) at(0, j) = static_cast<int>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      const int sub = at(i - 1, j - 1) + (src[i - 1] == tgt[j - 1] ? 0 : 1);
      at(i, j) = std::min({sub, at(i - 1, j) + 1, at(i, j - 1) + 1});
    }
  }

  EditScript rev;
  rev.reserve(n + m);
  std::size_t i = n, j = m;
  while (i > 0 || j > 0) {
    const int here = at(i, j);
    if (i > 0 && j > 0 && src[i - 1] == tgt[j - 1] &&
        at(i - 1, j - 1) == here) {
      rev.push_back(EditOp::keep());
      --i, --j;
    } else if (i > 0 && j > 0 && at(i - 1, j - 1) + 1 == here) {
      rev.push_back(EditOp::replace(tgt[j - 1]));
      --i, --j;
    } else if (i > 0 && at(i - 1, j) + 1 == here) {
      rev.push_back(EditOp::del());
      --i;
    } else {
      rev.push_back(EditOp::insert(tgt[j - 1]));
      --j;
    }
  }
  return {rev.rbegin(), rev.rend()};
}

inline std::size_t count_edits(const EditScript& script) {
  return static_cast<std::size_t>(
      std::count_if(script.begin(), script.end(), [](const EditOp& op) {
        return op.kind != EditOp::Kind::kKeep;
      }));
}

// --- Text form: KEEP,DELETE,INSERT[tok],REPLACE[tok] -------------------------

inline std::string format_op(const EditOp& op) {
  switch (op.kind) {
    case EditOp::Kind::kKeep: return "KEEP";
    case EditOp::Kind::kDelete: return "DELETE";
    case EditOp::Kind::kInsert:
      return "INSERT[" + std::string(token_name(op.token)) + "]";
    case EditOp::Kind::kReplace:
      return "REPLACE[" + std::string(token_name(op.token)) + "]";
  }
  return "";
}

inline std::string format_script(const EditScript& script) {
  std::string out;
  for (std::size_t i = 0; i < script.size(); ++i) {
    if (i) out.push_back(',');
    out += format_op(script[i]);
  }
  return out;
}

inline EditOp parse_op(std::string_view s) {
  auto trim = [](std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front())))
      v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back())))
      v.remove_suffix(1);
    return v;
  };
  s = trim(s);
  if (s == "KEEP") return EditOp::keep();
  if (s == "DELETE") return EditOp::del();
  auto with_token = [&](std::string_view prefix) -> std::optional<Token> {
    if (s.size() <= prefix.size() + 1 || s.substr(0, prefix.size()) != prefix ||
        s.back() != ']') {
      return std::nullopt;
    }
    auto inner = s.substr(prefix.size(), s.size() - prefix.size() - 1);
    auto tok = token_from_name(inner);
    if (!tok) throw std::invalid_argument("unknown token in edit op: " + std::string(s));
    return tok;
  };
  if (auto t = with_token("INSERT[")) return EditOp::insert(*t);
  if (auto t = with_token("REPLACE[")) return EditOp::replace(*t);
  throw std::invalid_argument("bad edit op: '" + std::string(s) + "'");
}

inline EditScript parse_script(std::string_view text) {
  EditScript script;
  bool any = false;
  for (char ch : text) any = any || !std::isspace(static_cast<unsigned char>(ch));
  if (!any) return script;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    script.push_back(parse_op(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return script;
}

}  // namespace karel

#endif  // KAREL_EDIT_HPP_

// Copyright 2026 The vnf-placer Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "json_locate.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace vnfp::detail {
namespace {

class Scanner {
 public:
  explicit Scanner(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() &&
           (text_[pos_] == ' ' || text_[pos_] == '\n' || text_[pos_] == '\r' ||
            text_[pos_] == '\t')) {
      ++pos_;
    }
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void advance() { ++pos_; }
  std::size_t pos() const { return pos_; }

  // Reads a string token; escapes other than \" and \\ are kept verbatim,
  // which is enough for matching the plain keys used by the file format.
  std::string read_string() {
    std::string out;
    ++pos_;  // opening quote
    while (pos_ < text_.size() && text_[pos_] != '"') {
      if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) {
        const char e = text_[pos_ + 1];
        if (e == '"' || e == '\\' || e == '/') {
          out.push_back(e);
        } else {
          out.push_back('\\');
          out.push_back(e);
        }
        pos_ += 2;
        continue;
      }
      out.push_back(text_[pos_++]);
    }
    ++pos_;  // closing quote
    return out;
  }

  void skip_value() {
    skip_ws();
    const char c = peek();
    if (c == '"') {
      read_string();
    } else if (c == '{' || c == '[') {
      int depth = 0;
      while (pos_ < text_.size()) {
        const char d = text_[pos_];
        if (d == '"') {
          read_string();
          continue;
        }
        if (d == '{' || d == '[') ++depth;
        if (d == '}' || d == ']') {
          --depth;
          if (depth == 0) {
            ++pos_;
            return;
          }
        }
        ++pos_;
      }
    } else {
      while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != '}' &&
             text_[pos_] != ']' && text_[pos_] != ' ' && text_[pos_] != '\n' &&
             text_[pos_] != '\r' && text_[pos_] != '\t') {
        ++pos_;
      }
    }
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

std::vector<std::string> split_pointer(std::string_view pointer) {
  std::vector<std::string> tokens;
  if (pointer.empty()) return tokens;
  std::size_t i = 1;  // leading '/'
  std::string cur;
  for (; i <= pointer.size(); ++i) {
    if (i == pointer.size() || pointer[i] == '/') {
      std::string decoded;
      for (std::size_t k = 0; k < cur.size(); ++k) {
        if (cur[k] == '~' && k + 1 < cur.size()) {
          decoded.push_back(cur[k + 1] == '1' ? '/' : '~');
          ++k;
        } else {
          decoded.push_back(cur[k]);
        }
      }
      tokens.push_back(decoded);
      cur.clear();
    } else {
      cur.push_back(pointer[i]);
    }
  }
  return tokens;
}

// Returns the offset of the addressed value, or npos.
std::size_t locate(Scanner& s, const std::vector<std::string>& tokens, std::size_t depth) {
  s.skip_ws();
  if (depth == tokens.size()) return s.pos();
  const std::string& want = tokens[depth];
  if (s.peek() == '{') {
    s.advance();
    while (true) {
      s.skip_ws();
      if (s.peek() != '"') return std::string_view::npos;
      const std::string key = s.read_string();
      s.skip_ws();
      s.advance();  // ':'
      if (key == want) return locate(s, tokens, depth + 1);
      s.skip_value();
      s.skip_ws();
      if (s.peek() != ',') return std::string_view::npos;
      s.advance();
    }
  }
  if (s.peek() == '[') {
    std::size_t target = 0;
    if (want.empty() || !std::all_of(want.begin(), want.end(),
                                     [](char c) { return c >= '0' && c <= '9'; })) {
      return std::string_view::npos;
    }
    target = std::stoul(want);
    s.advance();
    for (std::size_t idx = 0;; ++idx) {
      s.skip_ws();
      if (s.peek() == ']') return std::string_view::npos;
      if (idx == target) return locate(s, tokens, depth + 1);
      s.skip_value();
      s.skip_ws();
      if (s.peek() != ',') return std::string_view::npos;
      s.advance();
    }
  }
  return std::string_view::npos;
}

}  // namespace

std::size_t line_of_pointer(std::string_view text, std::string_view pointer) {
  Scanner s(text);
  const std::size_t off = locate(s, split_pointer(pointer), 0);
  if (off == std::string_view::npos) return 0;
  return 1 + static_cast<std::size_t>(
                 std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(off), '\n'));
}

}  // namespace vnfp::detail

// Copyright 2026 The msol Authors
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
//
#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "msol/error.hpp"

namespace msol {

// Whether the empty word belongs to the universe of interpretation.
// ExcludeEpsilon interprets formulas over nonempty words only.
enum class EpsilonMode { ExcludeEpsilon, IncludeEpsilon };

using LetterIndex = std::uint32_t;

// A word is a sequence of indices into an Alphabet.
using Word = std::vector<LetterIndex>;

/// Ordered, duplicate-free set of letter names. Declaration order is the
/// total order used for shortlex enumeration and symbol encoding.
class Alphabet {
 public:
  explicit Alphabet(std::vector<std::string> symbols)
      : symbols_(std::move(symbols)) {
    if (symbols_.empty()) {
      throw Error(Errc::InvalidAlphabet, "alphabet must not be empty");
    }
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      const std::string& s = symbols_[i];
      if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) {
            return std::isalnum(c) || c == '_';
          })) {
        throw Error(Errc::InvalidAlphabet, "bad letter name '" + s + "'");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (symbols_[j] == s) {
          throw Error(Errc::InvalidAlphabet, "duplicate letter '" + s + "'");
        }
      }
    }
  }

  // Parses a comma separated list such as "a,b,c".
  static Alphabet parse(std::string_view text) {
    std::vector<std::string> out;
    std::string current;
    for (char c : text) {
      if (c == ',') {
        out.push_back(current);
        current.clear();
      } else if (!std::isspace(static_cast<unsigned char>(c))) {
        current.push_back(c);
      }
    }
    out.push_back(current);
    return Alphabet(std::move(out));
  }

  std::size_t size() const noexcept { return symbols_.size(); }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }
  const std::string& symbol(LetterIndex i) const { return symbols_.at(i); }

  std::optional<LetterIndex> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i) {
      if (symbols_[i] == name) return static_cast<LetterIndex>(i);
    }
    return std::nullopt;
  }

  bool contains(std::string_view name) const {
    return index_of(name).has_value();
  }

  // True when every letter is a single character, so words can be written
  // without separators.
  bool compact() const {
    return std::all_of(symbols_.begin(), symbols_.end(),
                       [](const std::string& s) { return s.size() == 1; });
  }

  Word parse_word(std::string_view text) const {
    Word w;
    if (compact()) {
      for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == ',') continue;
        auto idx = index_of(std::string_view(&c, 1));
        if (!idx) {
          throw Error(Errc::UnknownLetter,
                      std::string("letter '") + c + "' not in alphabet");
        }
        w.push_back(*idx);
      }
      return w;
    }
    std::string token;
    auto flush = [&] {
      if (token.empty()) return;
      auto idx = index_of(token);
      if (!idx) {
        throw Error(Errc::UnknownLetter,
                    "letter '" + token + "' not in alphabet");
      }
      w.push_back(*idx);
      token.clear();
    };
    for (char c : text) {
      if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
        flush();
      } else {
        token.push_back(c);
      }
    }
    flush();
    return w;
  }

  std::string render(const Word& w) const {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i > 0 && !compact()) out.push_back(' ');
      out += symbol(w[i]);
    }
    return out;
  }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<std::string> symbols_;
};

// Calls visit(word) for every word over an alphabet of the given size with
// min_len <= |word| <= max_len, in shortlex order.
template <typename Visitor>
void for_each_word(std::size_t alphabet_size, std::size_t min_len,
                   std::size_t max_len, Visitor&& visit) {
  for (std::size_t len = min_len; len <= max_len; ++len) {
    Word w(len, 0);
    while (true) {
      visit(static_cast<const Word&>(w));
      std::size_t i = len;
      while (i > 0 && w[i - 1] + 1 == alphabet_size) {
        w[i - 1] = 0;
        --i;
      }
      if (i == 0) break;
      ++w[i - 1];
    }
  }
}

}  // namespace msol

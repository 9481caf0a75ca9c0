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

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "msol/alphabet.hpp"
#include "msol/error.hpp"
#include "msol/formula.hpp"

namespace msol {

// Partial valuation of free variables: positions for first-order names,
// position sets for second-order names.
struct Assignment {
  std::map<std::string, std::size_t> fo;
  std::map<std::string, std::set<std::size_t>> so;
};

namespace detail {

// Calls visit(mask) for every subset of {0..n-1}, ordered by cardinality
// and then lexicographically by sorted position list. Stops early when
// visit returns true; returns whether it did.
template <typename Visitor>
bool for_each_subset(std::size_t n, Visitor&& visit) {
  for (std::size_t card = 0; card <= n; ++card) {
    std::vector<std::size_t> pick(card);
    for (std::size_t i = 0; i < card; ++i) pick[i] = i;
    while (true) {
      std::uint64_t mask = 0;
      for (std::size_t p : pick) mask |= std::uint64_t{1} << p;
      if (visit(mask)) return true;
      std::size_t i = card;
      while (i > 0 && pick[i - 1] == n - card + i - 1) --i;
      if (i == 0) break;
      ++pick[i - 1];
      for (std::size_t j = i; j < card; ++j) pick[j] = pick[j - 1] + 1;
    }
  }
  return false;
}

class Evaluator {
 public:
  Evaluator(const Word& w, const Alphabet& sigma) : w_(w), sigma_(sigma) {}

  std::map<std::string, std::size_t> fo;
  std::map<std::string, std::uint64_t> so;

  bool eval(const Formula& phi) {
    const std::size_t n = w_.size();
    switch (phi.kind()) {
      case Kind::Letter: {
        std::size_t p;
        if (!pos(phi.var(), p)) return false;
        auto idx = sigma_.index_of(phi.letter());
        if (!idx) {
          throw Error(Errc::UnknownLetter,
                      "letter '" + phi.letter() + "' not in alphabet");
        }
        return w_[p] == *idx;
      }
      case Kind::SetMember: {
        std::size_t p;
        if (!pos(phi.var(), p)) return false;
        return (set(phi.set()) >> p) & 1U;
      }
      case Kind::Not:
        return !eval(phi.operand());
      case Kind::Or:
        return eval(phi.left()) || eval(phi.right());
      case Kind::And:
        return eval(phi.left()) && eval(phi.right());
      case Kind::Implies:
        return !eval(phi.left()) || eval(phi.right());
      case Kind::Iff:
        return eval(phi.left()) == eval(phi.right());
      case Kind::True:
        return true;
      case Kind::False:
        return false;
      case Kind::ExistsFO:
      case Kind::ForallFO: {
        bool exists = phi.kind() == Kind::ExistsFO;
        auto saved = fo.find(phi.var());
        bool had = saved != fo.end();
        std::size_t old = had ? saved->second : 0;
        bool result = !exists;
        for (std::size_t p = 0; p < n; ++p) {
          fo[phi.var()] = p;
          if (eval(phi.operand()) == exists) {
            result = exists;
            break;
          }
        }
        if (had) {
          fo[phi.var()] = old;
        } else {
          fo.erase(phi.var());
        }
        return result;
      }
      case Kind::ExistsSO:
      case Kind::ForallSO: {
        bool exists = phi.kind() == Kind::ExistsSO;
        // On the empty word there are no positions to quantify over.
        if (n == 0) return !exists;
        auto saved = so.find(phi.set());
        bool had = saved != so.end();
        std::uint64_t old = had ? saved->second : 0;
        bool hit = for_each_subset(n, [&](std::uint64_t mask) {
          so[phi.set()] = mask;
          return eval(phi.operand()) == exists;
        });
        if (had) {
          so[phi.set()] = old;
        } else {
          so.erase(phi.set());
        }
        return exists ? hit : !hit;
      }
      case Kind::Subset:
        return (set(phi.set()) & ~set(phi.set2())) == 0;
      case Kind::SetEq:
        return set(phi.set()) == set(phi.set2());
      case Kind::SetNeq:
        return set(phi.set()) != set(phi.set2());
      case Kind::First: {
        std::size_t p;
        return pos(phi.var(), p) && p == 0;
      }
      case Kind::Last: {
        std::size_t p;
        return pos(phi.var(), p) && p + 1 == n;
      }
      case Kind::EqConst: {
        std::size_t p;
        return pos(phi.var(), p) && p == phi.constant();
      }
      default:
        break;
    }
    // Binary first-order relations.
    std::size_t x, y;
    if (!pos(phi.var(), x) || !pos(phi.var2(), y)) return false;
    switch (phi.kind()) {
      case Kind::Less: return x < y;
      case Kind::Eq: return x == y;
      case Kind::Neq: return x != y;
      case Kind::Leq: return x <= y;
      case Kind::Geq: return x >= y;
      case Kind::Gt: return x > y;
      case Kind::Succ: return y == x + 1;
      case Kind::PlusOffset: return x == y + phi.constant();
      case Kind::MinusOffset: return y == x + phi.constant();
      default: return false;
    }
  }

 private:
  // Atoms mentioning a position are false on the empty word.
  bool pos(const std::string& name, std::size_t& out) const {
    auto it = fo.find(name);
    if (it == fo.end()) {
      throw Error(Errc::UnboundVariable, "unbound variable '" + name + "'");
    }
    out = it->second;
    return out < w_.size();
  }

  std::uint64_t set(const std::string& name) const {
    auto it = so.find(name);
    if (it == so.end()) {
      throw Error(Errc::UnboundVariable, "unbound set variable '" + name + "'");
    }
    return it->second;
  }

  const Word& w_;
  const Alphabet& sigma_;
};

}  // namespace detail

/// Decides w, nu |= phi by direct recursion over phi. Abbreviations are
/// evaluated natively. Second-order quantifiers enumerate all subsets of
/// positions, so words longer than 64 letters are rejected for formulas
/// with second-order constructs.
inline bool evaluate(const Word& w, const Formula& phi, const Alphabet& sigma,
                     const Assignment& nu = {},
                     EpsilonMode mode = EpsilonMode::ExcludeEpsilon) {
  if (w.empty() && mode == EpsilonMode::ExcludeEpsilon) {
    throw Error(Errc::EmptyWordRejected,
                "the empty word is outside the universe in ExcludeEpsilon mode");
  }
  for (LetterIndex c : w) {
    if (c >= sigma.size()) {
      throw Error(Errc::UnknownLetter, "letter index out of range");
    }
  }
  if (w.size() > 64 && has_second_order(phi)) {
    throw Error(Errc::WordTooLong,
                "second-order evaluation supports words of length <= 64");
  }
  FreeVars free = free_vars(phi);
  detail::Evaluator ev(w, sigma);
  for (const auto& x : free.fo) {
    auto it = nu.fo.find(x);
    if (it == nu.fo.end()) {
      throw Error(Errc::UnboundVariable, "unbound variable '" + x + "'");
    }
    if (it->second >= w.size()) {
      throw Error(Errc::InvalidAssignment,
                  "position of '" + x + "' is outside the word");
    }
    ev.fo[x] = it->second;
  }
  for (const auto& X : free.so) {
    auto it = nu.so.find(X);
    if (it == nu.so.end()) {
      throw Error(Errc::UnboundVariable, "unbound set variable '" + X + "'");
    }
    std::uint64_t mask = 0;
    for (std::size_t p : it->second) {
      if (p >= w.size()) {
        throw Error(Errc::InvalidAssignment,
                    "set '" + X + "' contains a position outside the word");
      }
      mask |= std::uint64_t{1} << p;
    }
    ev.so[X] = mask;
  }
  return ev.eval(phi);
}

inline bool evaluate(const Word& w, const Formula& phi, const Alphabet& sigma,
                     EpsilonMode mode) {
  return evaluate(w, phi, sigma, Assignment{}, mode);
}

/// All words of length at most max_len satisfying the sentence phi, in
/// shortlex order. The empty word is considered only in IncludeEpsilon mode.
inline std::vector<Word> language_sample(const Formula& phi, const Alphabet& sigma,
                                         std::size_t max_len,
                                         EpsilonMode mode = EpsilonMode::ExcludeEpsilon) {
  check_well_formed(phi, sigma);
  if (!is_sentence(phi)) {
    throw Error(Errc::UnboundVariable, "language_sample needs a sentence");
  }
  std::vector<Word> out;
  std::size_t min_len = mode == EpsilonMode::IncludeEpsilon ? 0 : 1;
  for_each_word(sigma.size(), min_len, max_len, [&](const Word& w) {
    if (evaluate(w, phi, sigma, Assignment{}, mode)) out.push_back(w);
  });
  return out;
}

}  // namespace msol

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
#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "msol/msol.hpp"
#include "support/corpus.hpp"
#include "support/oracle.hpp"

namespace msol {
namespace {

using testing::ab;
using testing::sym;

// Backtracking membership over the raw transition relation.
bool nfa_accepts(const Nfa& a, const std::vector<Code>& w, StateId s, std::size_t i) {
  if (i == w.size()) return a.is_accepting(s);
  for (const auto& e : a.edges(s)) {
    if (e.symbol == w[i] && nfa_accepts(a, w, e.to, i + 1)) return true;
  }
  return false;
}

bool nfa_accepts(const Nfa& a, const std::vector<Code>& w) {
  for (StateId i : a.initial_states()) {
    if (nfa_accepts(a, w, i, 0)) return true;
  }
  return false;
}

std::vector<std::vector<Code>> code_words(Code symbols, std::size_t max_len) {
  std::vector<std::vector<Code>> out;
  for_each_word(symbols, 0, max_len, [&](const Word& w) { out.emplace_back(w.begin(), w.end()); });
  return out;
}

TrackWord decode(const TrackAlphabet& t, const std::vector<Code>& w) {
  TrackWord out;
  for (Code c : w) out.push_back(t.decode(c));
  return out;
}

std::vector<testing::RandomDfa> random_dfas(unsigned seed, int count) {
  std::mt19937 rng(seed);
  std::vector<testing::RandomDfa> out;
  for (int i = 0; i < count; ++i) out.push_back(testing::random_dfa(rng));
  return out;
}

TEST(TrackAlphabetTest, Encoding) {
  TrackAlphabet t(ab(), 2);
  EXPECT_EQ(t.symbol_count(), 8u);
  EXPECT_EQ(t.encode(TrackSymbol{1, {true, false}}), 6u);
  EXPECT_EQ(t.encode(TrackSymbol{0, {false, true}}), 1u);
  for (Code c = 0; c < t.symbol_count(); ++c) EXPECT_EQ(t.encode(t.decode(c)), c);
  EXPECT_TRUE(t.bit(6, 0));
  EXPECT_FALSE(t.bit(6, 1));
  EXPECT_EQ(t.letter_of(6), 1u);
  EXPECT_EQ(to_string(TrackWord{{0, {true, false}}, {1, {false, true}}}, ab()), "(a,1,0)(b,0,1)");
}

TEST(TrackAlphabetTest, Limits) {
  EXPECT_NO_THROW(Nfa(ab(), kMaxTracks));
  try {
    Nfa(ab(), kMaxTracks + 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TooManyTracks);
  }
  TrackAlphabet t(ab(), 1);
  EXPECT_THROW(t.encode(TrackSymbol{0, {true, true}}), Error);
  EXPECT_THROW(t.encode(TrackSymbol{2, {true}}), Error);
}

TEST(NfaTest, TransitionsAreDeduplicated) {
  Nfa a(ab(), 0);
  a.add_state(true, true);
  a.add_transition(0, 0u, 0);
  a.add_transition(0, sym(ab(), "a"), 0);
  EXPECT_EQ(a.num_transitions(), 1u);
  EXPECT_THROW(a.add_transition(0, 0u, 4), Error);
}

TEST(DeterminizeTest, AaInfix) {
  Nfa a = testing::aa_infix_nfa();
  Dfa d = determinize(a);
  for (const Word& w : testing::all_words(2, 0, 8)) {
    ASSERT_EQ(accepts(d, w), testing::has_aa(w));
    ASSERT_EQ(accepts(a, w), testing::has_aa(w));
  }
}

TEST(DeterminizeTest, RandomNfasAgainstBacktracking) {
  std::mt19937 rng(7);
  for (int round = 0; round < 40; ++round) {
    std::uniform_int_distribution<int> states(1, 4), coin(0, 2);
    int n = states(rng);
    Nfa a(ab(), 1);
    for (int s = 0; s < n; ++s) a.add_state(coin(rng) == 0 || s == 0, coin(rng) == 0);
    std::uniform_int_distribution<int> target(0, n - 1);
    for (int s = 0; s < n; ++s) {
      for (Code c = 0; c < a.symbol_count(); ++c) {
        for (int k = coin(rng); k > 0; --k) a.add_transition(s, c, target(rng));
      }
    }
    Dfa d = determinize(a);
    Dfa m = minimize(a);
    for (const auto& w : code_words(a.symbol_count(), 4)) {
      TrackWord tw = decode(a, w);
      ASSERT_EQ(accepts(d, tw), nfa_accepts(a, w));
      ASSERT_EQ(accepts(m, tw), nfa_accepts(a, w));
    }
  }
}

TEST(MinimizeTest, AaInfixHasThreeStates) {
  Dfa m = minimize(testing::aa_infix_nfa());
  EXPECT_EQ(m.num_states(), 3u);
  EXPECT_EQ(live_state_count(m), 3u);
  EXPECT_EQ(sink_state_count(m), 0u);
}

TEST(MinimizeTest, RandomDfasAreMinimalAndEquivalent) {
  for (const auto& r : random_dfas(11, 60)) {
    Nfa a = testing::to_nfa(r);
    Dfa m = minimize(a);
    for (const Word& w : testing::all_words(r.letters, 0, 6)) {
      ASSERT_EQ(accepts(m, w), testing::run_table(r.next, r.finals, w));
    }
    // No two states of the result are language-equivalent.
    for (StateId s = 0; s < m.num_states(); ++s) {
      for (StateId t = s + 1; t < m.num_states(); ++t) {
        Dfa from_s = m, from_t = m;
        from_s.set_initial(s);
        from_t.set_initial(t);
        ASSERT_FALSE(equivalent(from_s, from_t).holds);
      }
    }
    EXPECT_TRUE(isomorphic(minimize(m), m));
  }
}

TEST(MinimizeTest, RenamingGivesIsomorphicResult) {
  for (const auto& r : random_dfas(13, 30)) {
    std::size_t n = r.next.size();
    std::vector<int> perm(n);
    // New state s stands for old state perm[s]; the initial state stays first.
    for (std::size_t i = 0; i < n; ++i) perm[i] = i == 0 ? 0 : static_cast<int>(n - i);
    std::vector<int> inv(n);
    for (std::size_t i = 0; i < n; ++i) inv[perm[i]] = static_cast<int>(i);
    Nfa b(testing::first_letters(r.letters), 0);
    for (std::size_t s = 0; s < n; ++s) {
      b.add_state(perm[s] == 0, r.finals.count(perm[s]) > 0);
    }
    for (std::size_t s = 0; s < n; ++s) {
      for (std::size_t c = 0; c < r.letters; ++c) {
        int t = r.next[perm[s]][c];
        if (t >= 0) b.add_transition(static_cast<StateId>(s), static_cast<Code>(c), inv[t]);
      }
    }
    EXPECT_TRUE(isomorphic(minimize(testing::to_nfa(r)), minimize(b)));
  }
}

TEST(BooleanOpsTest, ProductAndComplementPointwise) {
  auto dfas = random_dfas(17, 40);
  for (std::size_t i = 0; i + 1 < dfas.size(); i += 2) {
    testing::RandomDfa r = dfas[i];
    testing::RandomDfa s = dfas[i + 1];
    std::size_t k = std::max(r.letters, s.letters);
    r.letters = s.letters = k;
    for (auto* d : {&r, &s}) {
      for (auto& row : d->next) row.resize(k, -1);
    }
    Nfa a = testing::to_nfa(r), b = testing::to_nfa(s);
    Dfa da = determinize(a), db = determinize(b);
    Dfa comp = complement(a);
    for (const Word& w : testing::all_words(k, 0, 5)) {
      bool x = testing::run_table(r.next, r.finals, w);
      bool y = testing::run_table(s.next, s.finals, w);
      ASSERT_EQ(accepts(product(da, db, Combine::And), w), x && y);
      ASSERT_EQ(accepts(product(da, db, Combine::Or), w), x || y);
      ASSERT_EQ(accepts(product(da, db, Combine::Xor), w), x != y);
      ASSERT_EQ(accepts(product(da, db, Combine::Difference), w), x && !y);
      ASSERT_EQ(accepts(product(a, b, Combine::And), w), x && y);
      ASSERT_EQ(accepts(product(a, b, Combine::Or), w), x || y);
      ASSERT_EQ(accepts(comp, w), !x);
    }
  }
}

TEST(BooleanOpsTest, IncompatibleAlphabets) {
  try {
    product(testing::aa_infix_nfa(), testing::aa_pair_nfa(), Combine::And);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TrackMismatch);
  }
}

TEST(ProjectTest, ExistentialOverErasedTrack) {
  Nfa a = testing::aa_pair_nfa();
  for (unsigned track = 0; track < 2; ++track) {
    Nfa p = project(a, track);
    ASSERT_EQ(p.tracks(), 1u);
    for (const auto& w : code_words(p.symbol_count(), 4)) {
      // Brute force: some column for the erased track makes a accept.
      bool expect = false;
      for (unsigned m = 0; m < (1U << w.size()) && !expect; ++m) {
        std::vector<Code> full;
        for (std::size_t i = 0; i < w.size(); ++i) {
          TrackSymbol s = p.decode(w[i]);
          s.bits.insert(s.bits.begin() + track, (m >> i & 1U) != 0);
          full.push_back(a.encode(s));
        }
        expect = nfa_accepts(a, full);
      }
      ASSERT_EQ(accepts(p, decode(p, w)), expect);
    }
  }
  EXPECT_THROW(project(a, 2), Error);
}

TEST(CylindrifyTest, IgnoresNewTracks) {
  Dfa d = determinize(testing::aa_pair_nfa());
  Dfa c = cylindrify(d, 3, {2, 0});
  ASSERT_EQ(c.tracks(), 3u);
  for (const auto& w : code_words(c.symbol_count(), 3)) {
    TrackWord full = decode(c, w);
    TrackWord narrow;
    for (const auto& s : full) narrow.push_back(TrackSymbol{s.letter, {s.bits[2], s.bits[0]}});
    ASSERT_EQ(accepts(c, full), accepts(d, narrow));
  }
  EXPECT_THROW(cylindrify(d, 3, {0}), Error);
  EXPECT_THROW(cylindrify(d, 2, {0, 2}), Error);
}

TEST(DecisionTest, WitnessesAreShortlexLeast) {
  auto dfas = random_dfas(19, 40);
  for (std::size_t i = 0; i + 1 < dfas.size(); i += 2) {
    const auto& r = dfas[i];
    auto s = dfas[i + 1];
    s.letters = r.letters;
    for (auto& row : s.next) row.resize(r.letters, -1);
    Nfa a = testing::to_nfa(r), b = testing::to_nfa(s);
    std::optional<Word> first_in_a, first_diff, first_a_not_b;
    for (const Word& w : testing::all_words(r.letters, 0, 8)) {
      bool x = testing::run_table(r.next, r.finals, w);
      bool y = testing::run_table(s.next, s.finals, w);
      if (x && !first_in_a) first_in_a = w;
      if (x != y && !first_diff) first_diff = w;
      if (x && !y && !first_a_not_b) first_a_not_b = w;
    }
    Verdict e = is_empty(a);
    ASSERT_EQ(e.holds, !first_in_a.has_value());
    if (first_in_a) {
      EXPECT_EQ(letters_of(*e.witness), *first_in_a);
    }
    Verdict q = equivalent(a, b);
    ASSERT_EQ(q.holds, !first_diff.has_value());
    if (first_diff) {
      EXPECT_EQ(letters_of(*q.witness), *first_diff);
    }
    // contains(a, b) asks whether L(a) is a subset of L(b).
    Verdict c = contains(a, b);
    ASSERT_EQ(c.holds, !first_a_not_b.has_value());
    if (first_a_not_b) {
      EXPECT_EQ(letters_of(*c.witness), *first_a_not_b);
    }
  }
}

TEST(DecisionTest, UniversalAndEmpty) {
  EXPECT_TRUE(is_empty(empty_dfa(ab(), 1)).holds);
  EXPECT_FALSE(is_empty(universal_dfa(ab(), 1)).holds);
  EXPECT_TRUE(is_empty(universal_dfa(ab(), 0)).witness.value().empty());
  EXPECT_TRUE(equivalent(complement(empty_dfa(ab(), 2)), universal_dfa(ab(), 2)).holds);
}

TEST(EmptyWordTest, AddAndRemove) {
  Dfa d = determinize(testing::aa_infix_nfa());
  Dfa with = set_empty_word(d, true);
  Dfa without = set_empty_word(with, false);
  EXPECT_TRUE(accepts(with, Word{}));
  EXPECT_FALSE(accepts(without, Word{}));
  for (const Word& w : testing::all_words(2, 1, 6)) {
    ASSERT_EQ(accepts(with, w), testing::has_aa(w));
    ASSERT_EQ(accepts(without, w), testing::has_aa(w));
  }
}

TEST(EnumerateTest, MatchesBruteForce) {
  for (const auto& r : random_dfas(23, 30)) {
    Dfa d = determinize(testing::to_nfa(r));
    std::vector<Word> expect;
    for (const Word& w : testing::all_words(r.letters, 0, 5)) {
      if (testing::run_table(r.next, r.finals, w)) expect.push_back(w);
    }
    std::vector<Word> got;
    for (const auto& tw : enumerate(d, 5)) got.push_back(letters_of(tw));
    ASSERT_EQ(got, expect);
  }
}

TEST(LiveStatesTest, CountsLiveAndSink) {
  Nfa a(ab(), 0);
  a.add_state(true, false);
  a.add_state(false, true);
  a.add_transition(0, sym(ab(), "a"), 1);
  Dfa d = minimize(a);
  // Initial, accepting, and the sink absorbing every other continuation.
  EXPECT_EQ(d.num_states(), 3u);
  EXPECT_EQ(live_state_count(d), 2u);
  EXPECT_EQ(sink_state_count(d), 1u);
}

TEST(RegularOpsTest, StarAndConcat) {
  auto dfas = random_dfas(29, 30);
  auto in = [](const testing::RandomDfa& r, const Word& w, std::size_t i, std::size_t j) {
    return testing::run_table(r.next, r.finals, Word(w.begin() + i, w.begin() + j));
  };
  for (std::size_t i = 0; i + 1 < dfas.size(); i += 2) {
    const auto& r = dfas[i];
    auto s = dfas[i + 1];
    s.letters = r.letters;
    for (auto& row : s.next) row.resize(r.letters, -1);
    Nfa cat = concat(testing::to_nfa(r), testing::to_nfa(s));
    Nfa st = star(testing::to_nfa(r));
    for (const Word& w : testing::all_words(r.letters, 0, 5)) {
      bool expect_cat = false;
      for (std::size_t k = 0; k <= w.size(); ++k) {
        expect_cat = expect_cat || (in(r, w, 0, k) && in(s, w, k, w.size()));
      }
      ASSERT_EQ(accepts(cat, w), expect_cat);
      // reach[j]: the prefix of length j splits into factors of L(r).
      std::vector<bool> reach(w.size() + 1, false);
      reach[0] = true;
      for (std::size_t j = 1; j <= w.size(); ++j) {
        for (std::size_t k = 0; k < j && !reach[j]; ++k) reach[j] = reach[k] && in(r, w, k, j);
      }
      ASSERT_EQ(accepts(st, w), static_cast<bool>(reach[w.size()]));
    }
  }
}

}  // namespace
}  // namespace msol

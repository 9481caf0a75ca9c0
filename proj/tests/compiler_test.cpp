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

#include <functional>
#include <string>
#include <vector>

#include "msol/msol.hpp"
#include "support/corpus.hpp"
#include "support/oracle.hpp"

namespace msol {
namespace {

using testing::ab;
using testing::unary;

std::vector<TrackWord> track_words(const TrackAlphabet& t, std::size_t max_len) {
  std::vector<TrackWord> out;
  for_each_word(t.symbol_count(), 0, max_len, [&](const Word& codes) {
    TrackWord w;
    for (LetterIndex c : codes) w.push_back(t.decode(c));
    out.push_back(std::move(w));
  });
  return out;
}

std::set<std::size_t> column(const TrackWord& w, unsigned track) {
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].bits[track]) out.insert(i);
  }
  return out;
}

// Checks the compiled automaton of an open formula against the interpreter
// on every track word up to max_len.
void check_open(const char* text, const Alphabet& sigma, std::size_t max_len) {
  Formula phi = parse_formula(text, sigma);
  CompiledFormula cf = compile_open(phi, sigma);
  FreeVars fv = free_vars(phi);
  ASSERT_EQ(cf.tracks.size(), fv.fo.size() + fv.so.size()) << text;
  for (const TrackWord& w : track_words(cf.dfa, max_len)) {
    bool expect = !w.empty();
    Assignment nu;
    for (unsigned t = 0; t < cf.tracks.size() && expect; ++t) {
      const std::string& name = cf.tracks.names()[t];
      auto col = column(w, t);
      if (fv.fo.count(name)) {
        expect = col.size() == 1;
        if (expect) nu.fo[name] = *col.begin();
      } else {
        nu.so[name] = col;
      }
    }
    if (expect) expect = evaluate(letters_of(w), phi, sigma, nu);
    ASSERT_EQ(accepts(cf.dfa, w), expect) << text << " on " << to_string(w, sigma);
  }
}

TEST(NormalizeTest, FirstOrderBecomesSingleton) {
  EXPECT_EQ(render_core(*normalize(parse_formula("ex1 x. a(x)", ab()))),
            "ex2 x. Sing(x) & x sub W_a");
  EXPECT_EQ(render_core(*normalize(parse_formula("succ(x, y) | !(x in X)", ab()))),
            "Succ(x, y) | !(x sub X)");
  EXPECT_EQ(render_core(*normalize(parse_formula("x < y & a(y)", ab()))),
            "Less(x, y) & y sub W_a");
}

TEST(TrackMapTest, FirstOccurrenceOrder) {
  TrackMap tm = TrackMap::of(*normalize(parse_formula("b(y) & x < y & y in Z", ab())));
  EXPECT_EQ(tm.names(), (std::vector<std::string>{"y", "x", "Z"}));
  EXPECT_EQ(tm.track("Z"), 2u);
  try {
    tm.track("q");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::UnmappedVariable);
  }
  EXPECT_THROW(TrackMap({"x", "x"}), Error);
}

TEST(AtomicAutomatonTest, MatchesDefinitions) {
  TrackMap tm({"X", "Y"});
  const std::vector<std::pair<CorePtr, std::function<bool(const TrackWord&)>>> cases = {
      {core::subset("X", "Y"),
       [](const TrackWord& w) {
         auto x = column(w, 0), y = column(w, 1);
         return std::includes(y.begin(), y.end(), x.begin(), x.end());
       }},
      {core::subset_w("X", "a"),
       [](const TrackWord& w) {
         for (std::size_t i : column(w, 0)) {
           if (w[i].letter != 0) return false;
         }
         return true;
       }},
      {core::succ("X", "Y"),
       [](const TrackWord& w) {
         auto x = column(w, 0), y = column(w, 1);
         return x.size() == 1 && y.size() == 1 && *y.begin() == *x.begin() + 1;
       }},
      {core::less("X", "Y"),
       [](const TrackWord& w) {
         auto x = column(w, 0), y = column(w, 1);
         return x.size() == 1 && y.size() == 1 && *x.begin() < *y.begin();
       }},
      {core::sing("Y"), [](const TrackWord& w) { return column(w, 1).size() == 1; }},
  };
  for (const auto& [atom, expect] : cases) {
    Nfa a = atomic_automaton(*atom, tm, ab());
    ASSERT_EQ(a.tracks(), 2u);
    for (const TrackWord& w : track_words(a, 4)) {
      ASSERT_EQ(accepts(a, w), expect(w)) << render_core(*atom) << " on " << to_string(w, ab());
    }
  }
  EXPECT_THROW(atomic_automaton(*core::neg(core::sing("X")), tm, ab()), Error);
  EXPECT_THROW(atomic_automaton(*core::subset_w("X", "z"), tm, ab()), Error);
}

TEST(AtomicAutomatonTest, SuccShape) {
  TrackMap tm({"X", "Y"});
  Nfa succ = atomic_automaton(*core::succ("X", "Y"), tm, ab());
  EXPECT_EQ(succ.num_states(), 3u);
  EXPECT_TRUE(equivalent(succ, testing::succ_nfa()).holds);
}

TEST(CompileTest, AaInfixMatchesHandBuiltNfa) {
  Dfa d = compile(parse_formula(testing::kLaaInfix, ab()), ab());
  EXPECT_TRUE(equivalent(to_nfa(d), testing::aa_infix_nfa()).holds);
  EXPECT_EQ(d.num_states(), 3u);
  for (const Word& w : testing::all_words(2, 1, 7)) ASSERT_EQ(accepts(d, w), testing::has_aa(w));
}

TEST(CompileTest, CorpusAgreesWithInterpreter) {
  for (const auto& e : testing::corpus()) {
    Formula phi = parse_formula(e.text, *e.sigma);
    Dfa d = compile(phi, *e.sigma);
    EXPECT_FALSE(accepts(d, Word{})) << e.name;
    for_each_word(e.sigma->size(), 1, 5, [&](const Word& w) {
      ASSERT_EQ(accepts(d, w), evaluate(w, phi, *e.sigma)) << e.name << " on " << e.sigma->render(w);
    });
  }
}

TEST(CompileTest, OpenFormulas) {
  check_open("a(x)", ab(), 4);
  check_open("x < y & b(y)", ab(), 3);
  check_open("y = x + 2", unary(), 5);
  check_open("x in X & ex1 y. (succ(x, y) & !(y in X))", ab(), 3);
  check_open("X sub Y | last(x)", unary(), 3);
  check_open("all1 z. (z in X <-> a(z))", ab(), 3);
}

TEST(CompileTest, EmptyWordModes) {
  Formula eps = parse_formula(testing::kLEps, ab());
  Dfa with = compile(eps, ab(), EpsilonMode::IncludeEpsilon);
  EXPECT_TRUE(accepts(with, Word{}));
  for (const Word& w : testing::all_words(2, 1, 4)) EXPECT_FALSE(accepts(with, w));
  EXPECT_TRUE(is_empty(compile(eps, ab())).holds);
  Formula all = parse_formula("all1 x. a(x)", ab());
  EXPECT_TRUE(accepts(compile(all, ab(), EpsilonMode::IncludeEpsilon), Word{}));
  EXPECT_FALSE(accepts(compile(all, ab()), Word{}));
  // ex2 on the empty word is false, matching the interpreter.
  Formula even = parse_formula(testing::kEven, unary());
  EXPECT_EQ(accepts(compile(even, unary(), EpsilonMode::IncludeEpsilon), Word{}),
            evaluate({}, even, unary(), EpsilonMode::IncludeEpsilon));
}

TEST(CompileTest, StatsAndLimits) {
  CompileStats stats;
  compile(parse_formula(testing::kLabc, testing::abc()), testing::abc(), EpsilonMode::ExcludeEpsilon,
          &stats);
  EXPECT_GT(stats.steps, 0u);
  EXPECT_GT(stats.max_states, 0u);
  std::string many = "a(x0)";
  for (int i = 1; i <= 16; ++i) many += " & a(x" + std::to_string(i) + ")";
  try {
    compile_open(parse_formula(many.c_str(), ab()), ab());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::TooManyTracks);
  }
}

TEST(EncodeAssignmentTest, MarksPositionsAndSets) {
  TrackMap tm({"x", "X"});
  Assignment nu;
  nu.fo = {{"x", 1}};
  nu.so = {{"X", {0, 1}}};
  TrackWord w = encode_assignment(ab().parse_word("ab"), tm, nu);
  EXPECT_EQ(to_string(w, ab()), "(a,0,1)(b,1,1)");
  nu.fo["x"] = 2;
  EXPECT_THROW(encode_assignment(ab().parse_word("ab"), tm, nu), Error);
  EXPECT_THROW(encode_assignment(ab().parse_word("ab"), TrackMap({"q"}), Assignment{}), Error);
}

}  // namespace
}  // namespace msol

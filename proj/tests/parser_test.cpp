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

#include <string>

#include "msol/msol.hpp"
#include "support/corpus.hpp"

namespace msol {
namespace {

using testing::ab;

TEST(ParseFormulaTest, StartsWithA) {
  Formula phi = parse_formula("ex1 x. x = 0 & a(x)", ab());
  EXPECT_EQ(phi, f::ex1("x", f::land(f::eq_const("x", 0), f::letter("a", "x"))));
}

TEST(ParseFormulaTest, UnbalancedParenthesis) {
  try {
    parse_formula("a(x", ab());
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.code(), Errc::SyntaxError);
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 4u);
  }
}

TEST(ParseFormulaTest, ReportsLineAndColumn) {
  try {
    parse_formula("ex1 x.\n  a(x) & & b(x)", ab());
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 10u);
  }
}

TEST(ParseFormulaTest, SecondOrderMembership) {
  Formula phi = parse_formula("ex2 X. all1 x. x in X", ab());
  EXPECT_EQ(phi, f::ex2("X", f::all1("x", f::member("X", "x"))));
  EXPECT_EQ(parse_formula("X(x)", ab()), f::member("X", "x"));
}

TEST(ParseFormulaTest, Atoms) {
  EXPECT_EQ(parse_formula("x <= y", ab()), f::leq("x", "y"));
  EXPECT_EQ(parse_formula("x >= y", ab()), f::geq("x", "y"));
  EXPECT_EQ(parse_formula("x > y", ab()), f::gt("x", "y"));
  EXPECT_EQ(parse_formula("x != y", ab()), f::neq("x", "y"));
  EXPECT_EQ(parse_formula("x = y", ab()), f::eq("x", "y"));
  EXPECT_EQ(parse_formula("y = x + 2", ab()), f::plus("y", "x", 2));
  EXPECT_EQ(parse_formula("y = x - 2", ab()), f::minus("y", "x", 2));
  EXPECT_EQ(parse_formula("succ(x, y)", ab()), f::succ("x", "y"));
  EXPECT_EQ(parse_formula("first(x) | last(x)", ab()), f::lor(f::first("x"), f::last("x")));
  EXPECT_EQ(parse_formula("X sub Y", ab()), f::subset("X", "Y"));
  EXPECT_EQ(parse_formula("X = Y", ab()), f::set_eq("X", "Y"));
  EXPECT_EQ(parse_formula("X != Y", ab()), f::set_neq("X", "Y"));
  EXPECT_EQ(parse_formula("true & false", ab()), f::land(f::truth(), f::falsity()));
}

TEST(ParseFormulaTest, Precedence) {
  // ! binds tighter than &, & than |, | than ->, -> than <->.
  Formula phi = parse_formula("!a(x) & b(x) | a(y) -> b(y) <-> a(x)", ab());
  Formula expected = f::iff(
      f::implies(f::lor(f::land(f::neg(f::letter("a", "x")), f::letter("b", "x")),
                        f::letter("a", "y")),
                 f::letter("b", "y")),
      f::letter("a", "x"));
  EXPECT_EQ(phi, expected);
  EXPECT_EQ(parse_formula("a(x) -> a(y) -> a(z)", ab()),
            f::implies(f::letter("a", "x"), f::implies(f::letter("a", "y"), f::letter("a", "z"))));
}

TEST(ParseFormulaTest, QuantifierScopeExtendsRight) {
  Formula phi = parse_formula("a(x) & ex1 y. b(y) | a(y)", ab());
  EXPECT_EQ(phi, f::land(f::letter("a", "x"),
                         f::ex1("y", f::lor(f::letter("b", "y"), f::letter("a", "y")))));
}

TEST(ParseFormulaTest, Errors) {
  auto code = [](const char* text) {
    try {
      parse_formula(text, ab());
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::FormatError;
  };
  EXPECT_EQ(code("c(x)"), Errc::UnknownLetter);
  EXPECT_EQ(code("ex1 _z0. a(_z0)"), Errc::ReservedName);
  EXPECT_EQ(code("ex1 X. a(x)"), Errc::SyntaxError);
  EXPECT_EQ(code("x < "), Errc::SyntaxError);
  EXPECT_EQ(code("a(x) $"), Errc::SyntaxError);
}

TEST(ParseFormulaTest, CommentsAndWhitespace) {
  EXPECT_EQ(parse_formula("# leading comment\nex1 x.\n\ta(x)  # trailing\n", ab()),
            f::ex1("x", f::letter("a", "x")));
}

TEST(RenderFormulaTest, LastSymbolIsA) {
  EXPECT_EQ(render_formula(parse_formula(testing::kL3, ab())), "ex1 x. last(x) & a(x)");
  EXPECT_EQ(render_formula(f::letter("a", "x")), "a(x)");
}

TEST(RenderFormulaTest, NestedConnectivesAreParenthesized) {
  Formula phi = f::lor(f::land(f::letter("a", "x"), f::lor(f::letter("b", "x"), f::first("x"))),
                       f::neg(f::land(f::last("x"), f::letter("a", "x"))));
  std::string text = render_formula(phi);
  EXPECT_EQ(text, "(a(x) & (b(x) | first(x))) | !(last(x) & a(x))");
  EXPECT_EQ(parse_formula(text, ab()), phi);
}

TEST(RenderFormulaTest, LeftChainsAreFlat) {
  Formula chain = f::land({f::letter("a", "x"), f::letter("b", "y"), f::first("x")});
  EXPECT_EQ(render_formula(chain), "a(x) & b(y) & first(x)");
  EXPECT_EQ(parse_formula(render_formula(chain), ab()), chain);
  Formula right = f::land(f::letter("a", "x"), f::land(f::letter("b", "y"), f::first("x")));
  EXPECT_EQ(render_formula(right), "a(x) & (b(y) & first(x))");
  EXPECT_EQ(parse_formula(render_formula(right), ab()), right);
}

TEST(RenderFormulaTest, CorpusRoundTrip) {
  for (const auto& e : testing::corpus()) {
    Formula phi = parse_formula(e.text, *e.sigma);
    EXPECT_EQ(parse_formula(render_formula(phi), *e.sigma), phi) << e.name;
    Formula core = expand(phi);
    EXPECT_EQ(parse_formula(render_formula(core), *e.sigma, {.allow_reserved = true}), core)
        << e.name;
  }
}

TEST(AutomatonFormatTest, AaInfixRoundTrip) {
  Nfa a = testing::aa_infix_nfa();
  std::string text = render_automaton(a);
  Nfa b = parse_automaton(text);
  EXPECT_TRUE(equivalent(a, b).holds);
  EXPECT_EQ(render_automaton(b), text);
  EXPECT_EQ(b.num_transitions(), 6u);
}

TEST(AutomatonFormatTest, NoAcceptingStateIsEmpty) {
  Nfa a = parse_automaton(
      R"({"alphabet": ["a"], "tracks": 0, "states": 1, "initial": [0], "accepting": [],
          "transitions": [[0, "a", [], 0]]})");
  EXPECT_TRUE(is_empty(a).holds);
}

TEST(AutomatonFormatTest, Errors) {
  auto code = [](const char* text) {
    try {
      parse_automaton(text);
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::SyntaxError;
  };
  EXPECT_EQ(code(R"({"alphabet": ["a"], "states": 1, "initial": [0], "accepting": [],
                     "transitions": [[0, "a", [], 3]]})"),
            Errc::DanglingState);
  EXPECT_EQ(code(R"({"alphabet": ["a"], "states": 1, "initial": [2], "accepting": [],
                     "transitions": []})"),
            Errc::DanglingState);
  EXPECT_EQ(code(R"({"alphabet": ["a"], "states": 1, "initial": [0], "accepting": [],
                     "transitions": [[0, "eps", [], 0]]})"),
            Errc::EpsilonTransition);
  EXPECT_EQ(code(R"({"alphabet": ["a"], "tracks": 1, "states": 1, "initial": [0],
                     "accepting": [], "transitions": [[0, "a", [], 0]]})"),
            Errc::FormatError);
  EXPECT_EQ(code("{not json"), Errc::FormatError);
  EXPECT_EQ(code(R"({"alphabet": ["a"], "states": 1})"), Errc::FormatError);
}

TEST(AutomatonFormatTest, TracksAndDot) {
  Nfa a = testing::aa_pair_nfa();
  Nfa b = parse_automaton(render_automaton(a));
  EXPECT_EQ(b.tracks(), 2u);
  EXPECT_TRUE(equivalent(a, b).holds);
  std::string dot = render_dot(a);
  EXPECT_NE(dot.find("q0 -> q1 [label=\"(a,1,0)\"]"), std::string::npos);
  EXPECT_NE(dot.find("q2 [shape=doublecircle]"), std::string::npos);
}

}  // namespace
}  // namespace msol

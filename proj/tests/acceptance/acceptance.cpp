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
// Acceptance checks. Usage: acceptance [criterion...]; with no arguments
// every criterion runs. Prints one PASS/FAIL line per criterion and exits
// nonzero if any failed.

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "msol/msol.hpp"
#include "support/corpus.hpp"
#include "support/oracle.hpp"

namespace {

using namespace msol;
namespace t = msol::testing;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string seconds(double s) {
  std::ostringstream out;
  out.precision(3);
  out << std::fixed << s << "s";
  return out.str();
}

// The sentences shared by criteria 6 and 8.
std::vector<Formula> random_sentences() {
  std::mt19937 rng(20260);
  t::RandomSentence gen(rng, 3, 4);
  std::vector<Formula> out;
  for (int i = 0; i < 100; ++i) out.push_back(gen.next());
  return out;
}

// Two consecutive a's, end to end.
Outcome criterion1() {
  Outcome o;
  auto start = Clock::now();
  Dfa d = compile(t::parse(t::kLaaInfix, t::ab()), t::ab());
  std::size_t live = live_state_count(d);
  std::size_t sinks = sink_state_count(d);
  o.require(live == 3, "live states " + std::to_string(live) + ", expected 3");
  o.require(sinks == 1, "sink states " + std::to_string(sinks) + ", expected 1");
  o.require(equivalent(to_nfa(d), t::aa_infix_nfa()).holds, "not equivalent to the hand-built NFA");
  std::vector<Word> got, expected;
  for (const auto& w : enumerate(d, 6)) got.push_back(letters_of(w));
  for (const Word& w : t::all_words(2, 0, 6)) {
    if (t::has_aa(w)) expected.push_back(w);
  }
  o.require(got == expected, "enumeration to length 6 differs from {a,b}*aa{a,b}*");
  double s = seconds_since(start);
  o.require(s < 1.0, "took " + seconds(s));
  std::string summary = std::to_string(live) + " live + " + std::to_string(sinks) +
                        " sink states, equivalent to the hand-built NFA, enumeration matches, " + seconds(s);
  o.detail = o.pass ? summary : o.detail + " [" + summary + "]";
  return o;
}

// Intermediate automata for two consecutive a's.
Outcome criterion2() {
  Outcome o;
  auto start = Clock::now();
  TrackMap tm({"X", "Y"});
  auto atom = [&](const CorePtr& c) { return atomic_automaton(*c, tm, t::ab()); };
  Nfa sing = product(atom(core::sing("X")), atom(core::sing("Y")), Combine::And);
  Nfa succ = product(sing, atom(core::succ("X", "Y")), Combine::And);
  o.require(equivalent(succ, t::succ_nfa()).holds, "Sing & Sing & Succ differs from the successor automaton");
  Nfa letters = product(atom(core::subset_w("X", "a")), atom(core::subset_w("Y", "a")), Combine::And);
  Nfa full = product(succ, letters, Combine::And);
  o.require(equivalent(full, t::aa_pair_nfa()).holds, "adding X, Y sub W_a differs from the marked-pair automaton");
  double s = seconds_since(start);
  o.require(s < 1.0, "took " + seconds(s));
  if (o.pass) o.detail = "successor and marked-pair automata reproduced, " + seconds(s);
  return o;
}

// Compiled automata agree with the interpreter on the corpus.
Outcome criterion3() {
  Outcome o;
  auto start = Clock::now();
  std::size_t words = 0, disagreements = 0;
  for (const auto& e : t::corpus()) {
    Formula phi = parse_formula(e.text, *e.sigma);
    Dfa d = compile(phi, *e.sigma);
    for_each_word(e.sigma->size(), 1, 6, [&](const Word& w) {
      ++words;
      if (accepts(d, w) != evaluate(w, phi, *e.sigma)) {
        if (disagreements++ == 0) o.require(false, e.name + " disagrees on " + e.sigma->render(w));
      }
    });
  }
  o.require(disagreements == 0, std::to_string(disagreements) + " disagreements");
  double s = seconds_since(start);
  o.require(s < 30.0, "took " + seconds(s));
  if (o.pass) o.detail = "9 sentences, " + std::to_string(words) + " words, " + seconds(s);
  return o;
}

// Automaton to sentence and back.
Outcome criterion4() {
  Outcome o;
  auto start = Clock::now();
  std::vector<Nfa> automata{t::three_state_nfa()};
  std::mt19937 rng(4242);
  for (int i = 0; i < 20; ++i) automata.push_back(t::to_nfa(t::random_dfa(rng)));
  int passed = 0;
  for (std::size_t i = 0; i < automata.size(); ++i) {
    const Nfa& a = automata[i];
    Dfa back = compile(fsa_to_mso(a), a.alphabet());
    Dfa plus = set_empty_word(determinize(a), false);
    if (equivalent(back, plus).holds) {
      ++passed;
    } else {
      o.require(false, "automaton " + std::to_string(i) + " differs");
    }
  }
  double s = seconds_since(start);
  o.require(s < 60.0, "took " + seconds(s));
  if (o.pass) {
    o.detail = std::to_string(passed) + "/" + std::to_string(automata.size()) + " round trips, " +
               seconds(s);
  }
  return o;
}

// Worked elimination examples, compared as strings.
Outcome criterion5() {
  Outcome o;
  const std::pair<const char*, const char*> cases[] = {
      {"ex1 x. (x < y + 3 & z < x + 4 & z < y + 2 & y < x + 1)", "z<y+6 & y<y+3 & z<y+2"},
      {"ex1 x. ex1 y. ex1 z. (x < y & y < z)", "last>1"},
      {"ex1 x. ((!ex1 y. x < y) & x < 4)", "last<4"},
  };
  for (const auto& [input, expected] : cases) {
    std::string got = render_qf(to_qfmfo(parse_qe_formula(input, t::unary())));
    o.require(got == expected, std::string("got '") + got + "', expected '" + expected + "'");
  }
  if (o.pass) o.detail = "3 examples reproduced";
  return o;
}

// Elimination agrees with the interpreter on random sentences.
Outcome criterion6() {
  Outcome o;
  int checked = 0;
  for (const Formula& phi : random_sentences()) {
    QfFormula qf = to_qfmfo(phi, t::unary());
    UnaryLanguageClass c = classify(qf);
    bool ok = true;
    for (long n = 1; n <= 12 && ok; ++n) {
      bool expect = evaluate(Word(static_cast<std::size_t>(n), 0), phi, t::unary());
      if (n <= 10) ok = qf_evaluate(n, qf) == expect;
      if (ok && n >= 11) ok = c.contains(n) == expect;
    }
    if (ok) {
      ++checked;
    } else {
      o.require(false, "disagreement on " + render_formula(phi));
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + "/100 sentences, tail checked at n = 11, 12";
  return o;
}

// Boolean closure laws and the star identity.
Outcome criterion7() {
  Outcome o;
  const std::pair<const char*, const char*> pairs[] = {
      {t::kL1, t::kL3}, {t::kL2, t::kL4}, {t::kLaaInfix, t::kL4Prime}};
  const Alphabet& sigma = t::ab();
  for (const auto& [p1, p2] : pairs) {
    Formula f1 = t::parse(p1, sigma), f2 = t::parse(p2, sigma);
    Dfa both = compile(f::land(f1, f2), sigma);
    Dfa either = compile(f::lor(f1, f2), sigma);
    Dfa not1 = compile(f::neg(f1), sigma);
    for (const Word& w : t::all_words(2, 1, 5)) {
      bool a = evaluate(w, f1, sigma), b = evaluate(w, f2, sigma);
      if (accepts(both, w) != (a && b) || accepts(either, w) != (a || b) ||
          accepts(not1, w) != !a) {
        o.require(false, std::string("closure law fails for ") + p1 + " on " + sigma.render(w));
        break;
      }
    }
  }
  Nfa aa = to_nfa(compile(t::parse(t::kLaa, t::unary()), t::unary()));
  Dfa starred = set_empty_word(determinize(star(aa)), false);
  Dfa even = compile(t::parse(t::kEven, t::unary()), t::unary());
  o.require(equivalent(starred, even).holds, "star of L_aa differs from L_even");
  if (o.pass) o.detail = "3 pairs to length 5, L_aa* = L_even on nonempty words";
  return o;
}

// Unary languages of first-order sentences are finite or co-finite.
Outcome criterion8() {
  Outcome o;
  int checked = 0;
  for (const Formula& phi : random_sentences()) {
    Dfa d = compile(phi, t::unary());
    // Follow the single letter until a state repeats; the states from its
    // first visit on form the cycle.
    std::vector<int> seen(d.num_states(), -1);
    std::vector<StateId> path;
    StateId s = d.initial();
    while (seen[s] < 0) {
      seen[s] = static_cast<int>(path.size());
      path.push_back(s);
      s = d.next(s, 0);
    }
    bool first = d.is_accepting(s), uniform = true;
    for (std::size_t i = static_cast<std::size_t>(seen[s]); i < path.size(); ++i) {
      uniform = uniform && d.is_accepting(path[i]) == first;
    }
    if (uniform) {
      ++checked;
    } else {
      o.require(false, "mixed cycle for " + render_formula(phi));
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + "/100 automata end in a uniform cycle";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"two consecutive a's end to end", criterion1},
      {"intermediate product automata", criterion2},
      {"compiler agrees with interpreter on the corpus", criterion3},
      {"automaton to sentence round trip", criterion4},
      {"quantifier elimination examples", criterion5},
      {"quantifier elimination soundness", criterion6},
      {"closure laws and star identity", criterion7},
      {"unary languages are finite or co-finite", criterion8},
  };
  std::vector<std::size_t> selected;
  for (int i = 1; i < argc; ++i) {
    int n = std::atoi(argv[i]);
    if (n < 1 || n > static_cast<int>(criteria.size())) {
      std::cerr << "unknown criterion " << argv[i] << "\n";
      return 2;
    }
    selected.push_back(static_cast<std::size_t>(n));
  }
  if (selected.empty()) {
    for (std::size_t n = 1; n <= criteria.size(); ++n) selected.push_back(n);
  }
  bool all = true;
  for (std::size_t n : selected) {
    const auto& [name, check] = criteria[n - 1];
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    all = all && o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << n << " (" << name << "): "
              << o.detail << std::endl;
  }
  return all ? 0 : 1;
}

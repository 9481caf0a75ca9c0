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
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "msol/alphabet.hpp"
#include "msol/automata.hpp"
#include "msol/error.hpp"
#include "msol/formula.hpp"

namespace msol {

namespace detail {

inline bool is_deterministic(const Nfa& a) {
  for (StateId s = 0; s < a.num_states(); ++s) {
    std::set<Code> seen;
    for (const auto& e : a.edges(s)) {
      if (!seen.insert(e.symbol).second) return false;
    }
  }
  return true;
}

// Determinizes when needed and renumbers states so that the initial
// state is 0; the other states keep their relative order. States that
// cannot reach acceptance are dropped from determinized automata.
inline Nfa encodable(const Nfa& input) {
  if (input.tracks() != 0) {
    throw Error(Errc::TrackMismatch, "only automata over plain letters can be encoded");
  }
  auto initial = input.initial_states();
  if (initial.empty()) throw Error(Errc::NoInitialState, "automaton has no initial state");
  if (initial.size() > 1) {
    throw Error(Errc::MultipleInitial, "automaton must have exactly one initial state");
  }
  Nfa a = input;
  if (!is_deterministic(input)) {
    Dfa d = determinize(input);
    auto live = live_states(d);
    Nfa trimmed(d.alphabet(), 0);
    std::vector<StateId> id(d.num_states(), UINT32_MAX);
    for (StateId s = 0; s < d.num_states(); ++s) {
      if (live[s] || s == d.initial()) {
        id[s] = trimmed.add_state(s == d.initial(), d.is_accepting(s));
      }
    }
    for (StateId s = 0; s < d.num_states(); ++s) {
      if (id[s] == UINT32_MAX) continue;
      for (Code c = 0; c < d.symbol_count(); ++c) {
        StateId t = d.next(s, c);
        if (id[t] != UINT32_MAX) trimmed.add_transition(id[s], c, id[t]);
      }
    }
    a = std::move(trimmed);
  }
  StateId q0 = a.initial_states().front();
  if (q0 == 0) return a;
  std::vector<StateId> id(a.num_states());
  id[q0] = 0;
  StateId next = 1;
  for (StateId s = 0; s < a.num_states(); ++s) {
    if (s != q0) id[s] = next++;
  }
  std::vector<StateId> order(a.num_states());
  for (StateId s = 0; s < a.num_states(); ++s) order[id[s]] = s;
  Nfa out(a.alphabet(), 0);
  for (StateId s : order) out.add_state(s == q0, a.is_accepting(s));
  for (StateId s : order) {
    for (const auto& e : a.edges(s)) out.add_transition(id[s], e.symbol, id[e.to]);
  }
  return out;
}

inline std::string state_set(StateId q) { return "X" + std::to_string(q); }

}  // namespace detail

/// Encodes a finite automaton over plain letters as an MSO sentence with
/// one set variable X_q per state q, holding the positions read from q:
///
///   ex2 X0 ... Xm. (transitions & initial & exclusions & acceptance)
///
/// The automaton must have a single initial state; nondeterministic
/// automata are determinized first. In IncludeEpsilon mode an automaton
/// accepting the empty word gets the extra disjunct !ex1 x. (a(x) | !a(x)).
inline Formula fsa_to_mso(const Nfa& input, EpsilonMode mode = EpsilonMode::ExcludeEpsilon) {
  using namespace f;
  Nfa a = msol::detail::encodable(input);
  const Alphabet& sigma = a.alphabet();
  auto X = [](StateId q) { return msol::detail::state_set(q); };

  std::vector<Formula> moves;
  std::vector<std::pair<StateId, LetterIndex>> finals;
  for (StateId q = 0; q < a.num_states(); ++q) {
    for (const auto& e : a.edges(q)) {
      const std::string& letter_name = sigma.symbol(a.letter_of(e.symbol));
      moves.push_back(land({member(X(q), "x"), letter(letter_name, "x"),
                            member(X(e.to), "y")}));
      if (a.is_accepting(e.to)) {
        std::pair<StateId, LetterIndex> key{q, a.letter_of(e.symbol)};
        if (std::find(finals.begin(), finals.end(), key) == finals.end()) {
          finals.push_back(key);
        }
      }
    }
  }
  std::vector<Formula> clauses;
  clauses.push_back(all1("x", all1("y", implies(plus("y", "x", 1), lor(moves)))));
  clauses.push_back(all1("x", implies(eq_const("x", 0), member(X(0), "x"))));
  for (StateId i = 0; i < a.num_states(); ++i) {
    for (StateId j = i + 1; j < a.num_states(); ++j) {
      clauses.push_back(neg(ex1("y", land(member(X(i), "y"), member(X(j), "y")))));
    }
  }
  std::vector<Formula> accept;
  for (const auto& [q, c] : finals) {
    accept.push_back(land(member(X(q), "x"), letter(sigma.symbol(c), "x")));
  }
  clauses.push_back(all1("x", implies(last("x"), lor(accept))));

  Formula phi = land(clauses);
  for (StateId q = static_cast<StateId>(a.num_states()); q-- > 0;) phi = ex2(X(q), phi);

  if (mode == EpsilonMode::IncludeEpsilon && a.is_accepting(0)) {
    const std::string& l = sigma.symbol(0);
    phi = lor(phi, neg(ex1("x", lor(letter(l, "x"), neg(letter(l, "x"))))));
  }
  return phi;
}

inline Formula fsa_to_mso(const Dfa& d, EpsilonMode mode = EpsilonMode::ExcludeEpsilon) {
  return fsa_to_mso(to_nfa(d), mode);
}

}  // namespace msol

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

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "msol/alphabet.hpp"
#include "msol/automata.hpp"
#include "msol/error.hpp"

namespace msol {

namespace detail {

inline const nlohmann::json& field(const nlohmann::json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) {
    throw Error(Errc::FormatError, std::string("missing field '") + key + "'");
  }
  return *it;
}

inline std::size_t natural(const nlohmann::json& v, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    throw Error(Errc::FormatError, std::string(what) + " must be a natural number");
  }
  return v.get<std::size_t>();
}

inline StateId state_ref(const nlohmann::json& v, std::size_t n) {
  std::size_t s = natural(v, "state");
  if (s >= n) {
    throw Error(Errc::DanglingState, "state " + std::to_string(s) + " is not declared");
  }
  return static_cast<StateId>(s);
}

inline std::string symbol_label(const TrackAlphabet& a, Code c) {
  TrackSymbol s = a.decode(c);
  if (a.tracks() == 0) return a.alphabet().symbol(s.letter);
  std::string out = "(" + a.alphabet().symbol(s.letter);
  for (bool b : s.bits) out += b ? ",1" : ",0";
  return out + ")";
}

}  // namespace detail

/// Reads the JSON exchange format:
///   {"alphabet": ["a", "b"], "tracks": 0, "states": 3, "initial": [0],
///    "accepting": [2], "transitions": [[0, "a", [], 1], ...]}
inline Nfa parse_automaton(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::FormatError, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(Errc::FormatError, "automaton must be a JSON object");

  const auto& letters = detail::field(doc, "alphabet");
  if (!letters.is_array()) throw Error(Errc::FormatError, "'alphabet' must be a list");
  std::vector<std::string> symbols;
  for (const auto& l : letters) {
    if (!l.is_string()) throw Error(Errc::FormatError, "letters must be strings");
    symbols.push_back(l.get<std::string>());
  }
  Alphabet sigma(std::move(symbols));
  std::size_t tracks = doc.contains("tracks") ? detail::natural(doc["tracks"], "'tracks'") : 0;
  if (tracks > kMaxTracks) throw Error(Errc::TooManyTracks, "too many tracks");
  std::size_t n = detail::natural(detail::field(doc, "states"), "'states'");
  if (n == 0) throw Error(Errc::FormatError, "an automaton needs at least one state");

  Nfa a(sigma, static_cast<unsigned>(tracks));
  for (std::size_t i = 0; i < n; ++i) a.add_state();
  for (const char* key : {"initial", "accepting"}) {
    const auto& list = detail::field(doc, key);
    if (!list.is_array()) throw Error(Errc::FormatError, std::string("'") + key + "' must be a list");
    for (const auto& s : list) {
      StateId id = detail::state_ref(s, n);
      if (key[0] == 'i') {
        a.set_initial(id);
      } else {
        a.set_accepting(id);
      }
    }
  }
  const auto& transitions = detail::field(doc, "transitions");
  if (!transitions.is_array()) throw Error(Errc::FormatError, "'transitions' must be a list");
  for (const auto& t : transitions) {
    if (!t.is_array() || t.size() != 4 || !t[1].is_string() || !t[2].is_array()) {
      throw Error(Errc::FormatError, "transition must be [from, \"symbol\", [bits], to]");
    }
    StateId from = detail::state_ref(t[0], n);
    StateId to = detail::state_ref(t[3], n);
    std::string name = t[1].get<std::string>();
    if (name.empty() || name == "eps") {
      throw Error(Errc::EpsilonTransition, "epsilon transitions are not supported");
    }
    auto letter = sigma.index_of(name);
    if (!letter) throw Error(Errc::UnknownLetter, "letter '" + name + "' not in alphabet");
    TrackSymbol sym{*letter, {}};
    for (const auto& b : t[2]) {
      if (b.is_boolean()) {
        sym.bits.push_back(b.get<bool>());
      } else if (b.is_number_integer() && (b.get<int>() == 0 || b.get<int>() == 1)) {
        sym.bits.push_back(b.get<int>() == 1);
      } else {
        throw Error(Errc::FormatError, "track bits must be 0 or 1");
      }
    }
    if (sym.bits.size() != tracks) {
      throw Error(Errc::FormatError, "transition has " + std::to_string(sym.bits.size()) +
                                         " bits, expected " + std::to_string(tracks));
    }
    a.add_transition(from, sym, to);
  }
  return a;
}

// One transition per line, in state order and then insertion order.
inline std::string render_automaton(const Nfa& a) {
  auto list = [](const std::vector<StateId>& xs) {
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) out += ", ";
      out += std::to_string(xs[i]);
    }
    return out + "]";
  };
  std::string out = "{\n  \"alphabet\": [";
  const auto& symbols = a.alphabet().symbols();
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (i) out += ", ";
    out += nlohmann::json(symbols[i]).dump();
  }
  out += "],\n";
  out += "  \"tracks\": " + std::to_string(a.tracks()) + ",\n";
  out += "  \"states\": " + std::to_string(a.num_states()) + ",\n";
  out += "  \"initial\": " + list(a.initial_states()) + ",\n";
  out += "  \"accepting\": " + list(a.accepting_states()) + ",\n";
  out += "  \"transitions\": [";
  bool first = true;
  for (StateId s = 0; s < a.num_states(); ++s) {
    for (const auto& e : a.edges(s)) {
      TrackSymbol sym = a.decode(e.symbol);
      out += first ? "\n    " : ",\n    ";
      first = false;
      out += "[" + std::to_string(s) + ", " +
             nlohmann::json(a.alphabet().symbol(sym.letter)).dump() + ", [";
      for (std::size_t i = 0; i < sym.bits.size(); ++i) {
        if (i) out += ", ";
        out += sym.bits[i] ? "1" : "0";
      }
      out += "], " + std::to_string(e.to) + "]";
    }
  }
  out += first ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

inline std::string render_automaton(const Dfa& d) { return render_automaton(to_nfa(d)); }

// Graphviz rendering; parallel edges are merged into one labelled edge.
inline std::string render_dot(const Nfa& a) {
  std::string out = "digraph automaton {\n  rankdir=LR;\n  node [shape=circle];\n";
  for (StateId s = 0; s < a.num_states(); ++s) {
    out += "  q" + std::to_string(s);
    if (a.is_accepting(s)) out += " [shape=doublecircle]";
    out += ";\n";
  }
  for (StateId s : a.initial_states()) {
    out += "  start" + std::to_string(s) + " [shape=point];\n";
    out += "  start" + std::to_string(s) + " -> q" + std::to_string(s) + ";\n";
  }
  for (StateId s = 0; s < a.num_states(); ++s) {
    std::map<StateId, std::string> labels;
    for (const auto& e : a.edges(s)) {
      std::string& l = labels[e.to];
      if (!l.empty()) l += ", ";
      l += detail::symbol_label(a, e.symbol);
    }
    for (const auto& [to, label] : labels) {
      out += "  q" + std::to_string(s) + " -> q" + std::to_string(to) + " [label=\"" +
             label + "\"];\n";
    }
  }
  return out + "}\n";
}

inline std::string render_dot(const Dfa& d) { return render_dot(to_nfa(d)); }

}  // namespace msol

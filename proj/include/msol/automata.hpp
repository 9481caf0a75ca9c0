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
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <unordered_set>
#include <vector>

#include "msol/alphabet.hpp"
#include "msol/error.hpp"

namespace msol {

using StateId = std::uint32_t;

// Dense encoding of a track symbol: letter * 2^k + bits, where track 0 is
// the most significant bit. Numeric order is therefore letter order first,
// then bits read as a binary string from track 0.
using Code = std::uint32_t;

inline constexpr unsigned kMaxTracks = 16;

/// A letter of Sigma x {0,1}^k.
struct TrackSymbol {
  LetterIndex letter = 0;
  std::vector<bool> bits;

  friend bool operator==(const TrackSymbol&, const TrackSymbol&) = default;
};

using TrackWord = std::vector<TrackSymbol>;

inline TrackWord plain_word(const Word& w) {
  TrackWord out;
  out.reserve(w.size());
  for (LetterIndex c : w) out.push_back(TrackSymbol{c, {}});
  return out;
}

// Zips a word with one bit column per track: columns[t][i] is bit t at
// position i.
inline TrackWord annotate(const Word& w, const std::vector<std::vector<bool>>& columns) {
  TrackWord out = plain_word(w);
  for (const auto& col : columns) {
    if (col.size() != w.size()) {
      throw Error(Errc::TrackMismatch, "track column length differs from word");
    }
    for (std::size_t i = 0; i < w.size(); ++i) out[i].bits.push_back(col[i]);
  }
  return out;
}

inline Word letters_of(const TrackWord& w) {
  Word out;
  out.reserve(w.size());
  for (const auto& s : w) out.push_back(s.letter);
  return out;
}

// "(a,1,0)(b,0,1)"; with no tracks the plain word is rendered.
inline std::string to_string(const TrackWord& w, const Alphabet& sigma) {
  bool plain = std::all_of(w.begin(), w.end(),
                           [](const TrackSymbol& s) { return s.bits.empty(); });
  if (plain) return sigma.render(letters_of(w));
  std::string out;
  for (const auto& s : w) {
    out += '(';
    out += sigma.symbol(s.letter);
    for (bool b : s.bits) out += b ? ",1" : ",0";
    out += ')';
  }
  return out;
}

namespace detail {

inline void check_tracks(unsigned k) {
  if (k > kMaxTracks) {
    throw Error(Errc::TooManyTracks,
                "at most " + std::to_string(kMaxTracks) + " tracks are supported");
  }
}

}  // namespace detail

// Shared symbol bookkeeping of Nfa and Dfa.
class TrackAlphabet {
 public:
  TrackAlphabet(Alphabet sigma, unsigned tracks)
      : sigma_(std::move(sigma)), tracks_(tracks) {
    detail::check_tracks(tracks);
  }

  const Alphabet& alphabet() const noexcept { return sigma_; }
  unsigned tracks() const noexcept { return tracks_; }
  Code symbol_count() const noexcept {
    return static_cast<Code>(sigma_.size()) << tracks_;
  }

  Code encode(const TrackSymbol& s) const {
    if (s.bits.size() != tracks_) {
      throw Error(Errc::TrackMismatch,
                  "symbol has " + std::to_string(s.bits.size()) +
                      " tracks, automaton has " + std::to_string(tracks_));
    }
    if (s.letter >= sigma_.size()) {
      throw Error(Errc::UnknownLetter, "letter index out of range");
    }
    Code c = s.letter;
    for (bool b : s.bits) c = (c << 1) | (b ? 1U : 0U);
    return c;
  }

  TrackSymbol decode(Code c) const {
    TrackSymbol s;
    s.bits.assign(tracks_, false);
    for (unsigned i = tracks_; i-- > 0;) {
      s.bits[i] = c & 1U;
      c >>= 1;
    }
    s.letter = c;
    return s;
  }

  LetterIndex letter_of(Code c) const { return c >> tracks_; }
  bool bit(Code c, unsigned track) const { return (c >> (tracks_ - 1 - track)) & 1U; }

  bool same_symbols(const TrackAlphabet& o) const {
    return sigma_ == o.sigma_ && tracks_ == o.tracks_;
  }

 protected:
  void require_same(const TrackAlphabet& o) const {
    if (!same_symbols(o)) {
      throw Error(Errc::TrackMismatch, "automata over different track alphabets");
    }
  }

 private:
  Alphabet sigma_;
  unsigned tracks_;
};

/// Nondeterministic automaton over Sigma x {0,1}^k. Transitions keep their
/// insertion order per source state.
class Nfa : public TrackAlphabet {
 public:
  struct Edge {
    Code symbol;
    StateId to;
    friend bool operator==(const Edge&, const Edge&) = default;
  };

  Nfa(Alphabet sigma, unsigned tracks) : TrackAlphabet(std::move(sigma), tracks) {}

  StateId add_state(bool initial = false, bool accepting = false) {
    edges_.emplace_back();
    keys_.emplace_back();
    initial_.push_back(initial);
    accepting_.push_back(accepting);
    return static_cast<StateId>(edges_.size() - 1);
  }

  void add_transition(StateId from, Code symbol, StateId to) {
    if (from >= num_states() || to >= num_states()) {
      throw Error(Errc::DanglingState, "transition endpoint is not a state");
    }
    if (symbol >= symbol_count()) {
      throw Error(Errc::TrackMismatch, "symbol code out of range");
    }
    if (!keys_[from].insert(std::uint64_t{symbol} << 32 | to).second) return;
    edges_[from].push_back(Edge{symbol, to});
  }

  void add_transition(StateId from, const TrackSymbol& s, StateId to) {
    add_transition(from, encode(s), to);
  }

  std::size_t num_states() const noexcept { return edges_.size(); }
  bool is_initial(StateId s) const { return initial_.at(s); }
  bool is_accepting(StateId s) const { return accepting_.at(s); }
  void set_initial(StateId s, bool v = true) { initial_.at(s) = v; }
  void set_accepting(StateId s, bool v = true) { accepting_.at(s) = v; }
  const std::vector<Edge>& edges(StateId s) const { return edges_.at(s); }

  std::vector<StateId> initial_states() const { return flagged(initial_); }
  std::vector<StateId> accepting_states() const { return flagged(accepting_); }

  std::size_t num_transitions() const {
    std::size_t n = 0;
    for (const auto& e : edges_) n += e.size();
    return n;
  }

  void require_compatible(const TrackAlphabet& o) const { require_same(o); }

 private:
  static std::vector<StateId> flagged(const std::vector<bool>& v) {
    std::vector<StateId> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i]) out.push_back(static_cast<StateId>(i));
    }
    return out;
  }

  std::vector<std::vector<Edge>> edges_;
  // Edge keys (symbol, target) per state, for constant-time deduplication.
  std::vector<std::unordered_set<std::uint64_t>> keys_;
  std::vector<bool> initial_;
  std::vector<bool> accepting_;
};

/// Complete deterministic automaton with a dense transition table.
class Dfa : public TrackAlphabet {
 public:
  // Creates n states whose transitions all lead to state 0.
  Dfa(Alphabet sigma, unsigned tracks, std::size_t n)
      : TrackAlphabet(std::move(sigma), tracks),
        accepting_(n, false),
        table_(n * symbol_count(), 0) {
    if (n == 0) throw Error(Errc::NoInitialState, "a DFA needs at least one state");
  }

  std::size_t num_states() const noexcept { return accepting_.size(); }
  StateId initial() const noexcept { return initial_; }
  void set_initial(StateId s) {
    check(s);
    initial_ = s;
  }
  bool is_accepting(StateId s) const { return accepting_.at(s); }
  void set_accepting(StateId s, bool v = true) { accepting_.at(s) = v; }

  StateId next(StateId s, Code c) const {
    return table_[static_cast<std::size_t>(s) * symbol_count() + c];
  }
  void set_next(StateId s, Code c, StateId t) {
    check(s);
    check(t);
    if (c >= symbol_count()) throw Error(Errc::TrackMismatch, "symbol code out of range");
    table_[static_cast<std::size_t>(s) * symbol_count() + c] = t;
  }

  StateId add_state(bool accepting = false) {
    StateId id = static_cast<StateId>(num_states());
    accepting_.push_back(accepting);
    table_.resize(table_.size() + symbol_count(), id);
    return id;
  }

  StateId run(const TrackWord& w) const {
    StateId s = initial_;
    for (const auto& sym : w) s = next(s, encode(sym));
    return s;
  }

  void require_compatible(const TrackAlphabet& o) const { require_same(o); }

 private:
  void check(StateId s) const {
    if (s >= num_states()) throw Error(Errc::DanglingState, "state out of range");
  }

  StateId initial_ = 0;
  std::vector<bool> accepting_;
  std::vector<StateId> table_;
};

enum class Combine { And, Or, Xor, Difference };

namespace detail {

inline bool combine(Combine op, bool a, bool b) {
  switch (op) {
    case Combine::And: return a && b;
    case Combine::Or: return a || b;
    case Combine::Xor: return a != b;
    case Combine::Difference: return a && !b;
  }
  return false;
}

}  // namespace detail

inline Nfa to_nfa(const Dfa& d) {
  Nfa n(d.alphabet(), d.tracks());
  for (StateId s = 0; s < d.num_states(); ++s) {
    n.add_state(s == d.initial(), d.is_accepting(s));
  }
  for (StateId s = 0; s < d.num_states(); ++s) {
    for (Code c = 0; c < d.symbol_count(); ++c) n.add_transition(s, c, d.next(s, c));
  }
  return n;
}

inline bool accepts(const Dfa& d, const TrackWord& w) {
  return d.is_accepting(d.run(w));
}

inline bool accepts(const Nfa& a, const TrackWord& w) {
  std::vector<bool> current(a.num_states(), false);
  for (StateId s : a.initial_states()) current[s] = true;
  for (const auto& sym : w) {
    Code c = a.encode(sym);
    std::vector<bool> next(a.num_states(), false);
    for (StateId s = 0; s < a.num_states(); ++s) {
      if (!current[s]) continue;
      for (const auto& e : a.edges(s)) {
        if (e.symbol == c) next[e.to] = true;
      }
    }
    current = std::move(next);
  }
  for (StateId s = 0; s < a.num_states(); ++s) {
    if (current[s] && a.is_accepting(s)) return true;
  }
  return false;
}

inline bool accepts(const Dfa& d, const Word& w) { return accepts(d, plain_word(w)); }
inline bool accepts(const Nfa& a, const Word& w) { return accepts(a, plain_word(w)); }

// Adds a rejecting sink so that every state has a successor on every
// symbol. Returns a copy unchanged if it is already complete.
inline Nfa totalize(const Nfa& a) {
  Nfa out = a;
  std::optional<StateId> sink;
  for (StateId s = 0; s < a.num_states(); ++s) {
    std::vector<bool> seen(a.symbol_count(), false);
    for (const auto& e : a.edges(s)) seen[e.symbol] = true;
    for (Code c = 0; c < a.symbol_count(); ++c) {
      if (seen[c]) continue;
      if (!sink) {
        sink = out.add_state();
        for (Code d = 0; d < a.symbol_count(); ++d) out.add_transition(*sink, d, *sink);
      }
      out.add_transition(s, c, *sink);
    }
  }
  if (a.initial_states().empty()) {
    if (!sink) {
      sink = out.add_state();
      for (Code d = 0; d < a.symbol_count(); ++d) out.add_transition(*sink, d, *sink);
    }
    out.set_initial(*sink);
  }
  return out;
}

/// Subset construction restricted to reachable subsets. The empty subset,
/// when reached, becomes the rejecting sink.
inline Dfa determinize(const Nfa& a) {
  const Code m = a.symbol_count();
  std::vector<std::vector<std::vector<StateId>>> succ(a.num_states(),
                                                      std::vector<std::vector<StateId>>(m));
  for (StateId s = 0; s < a.num_states(); ++s) {
    for (const auto& e : a.edges(s)) succ[s][e.symbol].push_back(e.to);
  }
  std::map<std::vector<StateId>, StateId> ids;
  std::vector<std::vector<StateId>> sets;
  auto intern = [&](std::vector<StateId> set) {
    std::sort(set.begin(), set.end());
    set.erase(std::unique(set.begin(), set.end()), set.end());
    auto [it, inserted] = ids.emplace(set, static_cast<StateId>(sets.size()));
    if (inserted) sets.push_back(std::move(set));
    return it->second;
  };
  intern(a.initial_states());
  std::vector<std::vector<StateId>> table;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    std::vector<StateId> row(m);
    for (Code c = 0; c < m; ++c) {
      std::vector<StateId> target;
      for (StateId s : sets[i]) {
        target.insert(target.end(), succ[s][c].begin(), succ[s][c].end());
      }
      row[c] = intern(std::move(target));
    }
    table.push_back(std::move(row));
  }
  Dfa d(a.alphabet(), a.tracks(), sets.size());
  for (StateId i = 0; i < sets.size(); ++i) {
    bool acc = std::any_of(sets[i].begin(), sets[i].end(),
                           [&](StateId s) { return a.is_accepting(s); });
    d.set_accepting(i, acc);
    for (Code c = 0; c < m; ++c) d.set_next(i, c, table[i][c]);
  }
  d.set_initial(0);
  return d;
}

inline Dfa determinize(const Dfa& d) { return d; }

namespace detail {

// Renumbers the states reachable from the initial state in breadth-first
// order, visiting successors in symbol order. Unreachable states vanish.
inline Dfa canonical_order(const Dfa& d) {
  const Code m = d.symbol_count();
  std::vector<StateId> id(d.num_states(), UINT32_MAX);
  std::vector<StateId> order;
  id[d.initial()] = 0;
  order.push_back(d.initial());
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Code c = 0; c < m; ++c) {
      StateId t = d.next(order[i], c);
      if (id[t] == UINT32_MAX) {
        id[t] = static_cast<StateId>(order.size());
        order.push_back(t);
      }
    }
  }
  Dfa out(d.alphabet(), d.tracks(), order.size());
  for (StateId i = 0; i < order.size(); ++i) {
    out.set_accepting(i, d.is_accepting(order[i]));
    for (Code c = 0; c < m; ++c) out.set_next(i, c, id[d.next(order[i], c)]);
  }
  return out;
}

}  // namespace detail

/// Minimal complete DFA by partition refinement, with states numbered in
/// breadth-first symbol order from the initial state. Two language-equal
/// inputs yield identical outputs.
inline Dfa minimize(const Dfa& input) {
  Dfa d = detail::canonical_order(input);
  const std::size_t n = d.num_states();
  const Code m = d.symbol_count();
  std::vector<StateId> block(n);
  for (StateId s = 0; s < n; ++s) block[s] = d.is_accepting(s) ? 1 : 0;
  std::size_t count = 0;
  while (true) {
    std::map<std::vector<StateId>, StateId> signature;
    std::vector<StateId> next_block(n);
    for (StateId s = 0; s < n; ++s) {
      std::vector<StateId> sig;
      sig.reserve(m + 1);
      sig.push_back(block[s]);
      for (Code c = 0; c < m; ++c) sig.push_back(block[d.next(s, c)]);
      auto [it, inserted] = signature.emplace(std::move(sig),
                                              static_cast<StateId>(signature.size()));
      next_block[s] = it->second;
    }
    block = std::move(next_block);
    if (signature.size() == count) break;
    count = signature.size();
  }
  Dfa q(d.alphabet(), d.tracks(), count);
  for (StateId s = 0; s < n; ++s) {
    q.set_accepting(block[s], d.is_accepting(s));
    for (Code c = 0; c < m; ++c) q.set_next(block[s], c, block[d.next(s, c)]);
  }
  q.set_initial(block[d.initial()]);
  return detail::canonical_order(q);
}

inline Dfa minimize(const Nfa& a) { return minimize(determinize(a)); }

inline Dfa complement(const Dfa& d) {
  Dfa out = d;
  for (StateId s = 0; s < d.num_states(); ++s) out.set_accepting(s, !d.is_accepting(s));
  return out;
}

inline Dfa complement(const Nfa& a) { return complement(determinize(a)); }

/// Reachable part of the synchronous product.
inline Dfa product(const Dfa& a, const Dfa& b, Combine op) {
  a.require_compatible(b);
  const Code m = a.symbol_count();
  std::map<std::pair<StateId, StateId>, StateId> ids;
  std::vector<std::pair<StateId, StateId>> pairs;
  auto intern = [&](StateId x, StateId y) {
    auto [it, inserted] = ids.emplace(std::make_pair(x, y), static_cast<StateId>(pairs.size()));
    if (inserted) pairs.emplace_back(x, y);
    return it->second;
  };
  intern(a.initial(), b.initial());
  std::vector<std::vector<StateId>> table;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    std::vector<StateId> row(m);
    for (Code c = 0; c < m; ++c) {
      row[c] = intern(a.next(pairs[i].first, c), b.next(pairs[i].second, c));
    }
    table.push_back(std::move(row));
  }
  Dfa out(a.alphabet(), a.tracks(), pairs.size());
  for (StateId i = 0; i < pairs.size(); ++i) {
    out.set_accepting(i, detail::combine(op, a.is_accepting(pairs[i].first),
                                         b.is_accepting(pairs[i].second)));
    for (Code c = 0; c < m; ++c) out.set_next(i, c, table[i][c]);
  }
  return out;
}

/// Cartesian product of nondeterministic automata. Or, Xor and Difference
/// need both sides complete, so they are totalized first.
inline Nfa product(const Nfa& a0, const Nfa& b0, Combine op) {
  a0.require_compatible(b0);
  const bool complete = op != Combine::And;
  Nfa a = complete ? totalize(a0) : a0;
  Nfa b = complete ? totalize(b0) : b0;
  if (op == Combine::Xor || op == Combine::Difference) {
    // Pairing runs is only sound for negative combinations on DFAs.
    return to_nfa(product(determinize(a), determinize(b), op));
  }
  Nfa out(a.alphabet(), a.tracks());
  std::map<std::pair<StateId, StateId>, StateId> ids;
  std::vector<std::pair<StateId, StateId>> pairs;
  auto intern = [&](StateId x, StateId y) {
    auto [it, inserted] = ids.emplace(std::make_pair(x, y), static_cast<StateId>(pairs.size()));
    if (inserted) {
      pairs.emplace_back(x, y);
      out.add_state(a.is_initial(x) && b.is_initial(y),
                    detail::combine(op, a.is_accepting(x), b.is_accepting(y)));
    }
    return it->second;
  };
  for (StateId x : a.initial_states()) {
    for (StateId y : b.initial_states()) intern(x, y);
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [x, y] = pairs[i];
    for (const auto& e : a.edges(x)) {
      for (const auto& f : b.edges(y)) {
        if (e.symbol != f.symbol) continue;
        StateId t = intern(e.to, f.to);
        out.add_transition(static_cast<StateId>(i), e.symbol, t);
      }
    }
  }
  if (out.num_states() == 0) out.add_state();
  return out;
}

/// Erases track i from every transition label.
inline Nfa project(const Nfa& a, unsigned track) {
  if (track >= a.tracks()) {
    throw Error(Errc::BadTrack, "track " + std::to_string(track) + " does not exist");
  }
  const unsigned k = a.tracks();
  Nfa out(a.alphabet(), k - 1);
  for (StateId s = 0; s < a.num_states(); ++s) {
    out.add_state(a.is_initial(s), a.is_accepting(s));
  }
  const unsigned low = k - 1 - track;  // bit position of the erased track
  for (StateId s = 0; s < a.num_states(); ++s) {
    for (const auto& e : a.edges(s)) {
      Code hi = e.symbol >> (low + 1);
      Code lo = e.symbol & ((Code{1} << low) - 1);
      out.add_transition(s, (hi << low) | lo, e.to);
    }
  }
  return out;
}

inline Nfa project(const Dfa& d, unsigned track) { return project(to_nfa(d), track); }

/// Re-embeds d into a larger track space: old track i becomes track
/// positions[i] of the result; the other tracks are unconstrained.
inline Dfa cylindrify(const Dfa& d, unsigned new_tracks,
                      const std::vector<unsigned>& positions) {
  if (positions.size() != d.tracks()) {
    throw Error(Errc::TrackMismatch, "one position per existing track required");
  }
  for (unsigned p : positions) {
    if (p >= new_tracks) throw Error(Errc::BadTrack, "target track out of range");
  }
  Dfa out(d.alphabet(), new_tracks, d.num_states());
  out.set_initial(d.initial());
  for (StateId s = 0; s < d.num_states(); ++s) {
    out.set_accepting(s, d.is_accepting(s));
    for (Code c = 0; c < out.symbol_count(); ++c) {
      Code old = out.letter_of(c);
      for (unsigned p : positions) old = (old << 1) | (out.bit(c, p) ? 1U : 0U);
      out.set_next(s, c, d.next(s, old));
    }
  }
  return out;
}

inline Dfa universal_dfa(const Alphabet& sigma, unsigned tracks) {
  Dfa d(sigma, tracks, 1);
  d.set_accepting(0, true);
  return d;
}

inline Dfa empty_dfa(const Alphabet& sigma, unsigned tracks) {
  return Dfa(sigma, tracks, 1);
}

// Returns a DFA accepting L(d) with the empty word added or removed.
inline Dfa set_empty_word(const Dfa& d, bool accept) {
  if (d.is_accepting(d.initial()) == accept) return d;
  Dfa out = d;
  StateId fresh = out.add_state(accept);
  for (Code c = 0; c < d.symbol_count(); ++c) out.set_next(fresh, c, d.next(d.initial(), c));
  out.set_initial(fresh);
  return out;
}

struct Verdict {
  bool holds = false;
  // Shortlex-least word witnessing the failure (for equivalent/contains)
  // or the nonemptiness (for is_empty).
  std::optional<TrackWord> witness;
};

/// Breadth-first search from the initial state in symbol order; the first
/// accepting state found gives the shortlex-least accepted word.
inline Verdict is_empty(const Dfa& d) {
  const Code m = d.symbol_count();
  std::vector<std::optional<std::pair<StateId, Code>>> parent(d.num_states());
  std::vector<bool> seen(d.num_states(), false);
  std::deque<StateId> queue{d.initial()};
  seen[d.initial()] = true;
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    if (d.is_accepting(s)) {
      TrackWord w;
      for (StateId t = s; parent[t];) {
        w.push_back(d.decode(parent[t]->second));
        t = parent[t]->first;
      }
      std::reverse(w.begin(), w.end());
      return Verdict{false, std::move(w)};
    }
    for (Code c = 0; c < m; ++c) {
      StateId t = d.next(s, c);
      if (seen[t]) continue;
      seen[t] = true;
      parent[t] = std::make_pair(s, c);
      queue.push_back(t);
    }
  }
  return Verdict{true, std::nullopt};
}

inline Verdict is_empty(const Nfa& a) { return is_empty(determinize(a)); }

// Counterexample: the shortlex-least word in the symmetric difference.
inline Verdict equivalent(const Dfa& a, const Dfa& b) {
  Verdict v = is_empty(product(a, b, Combine::Xor));
  return v;
}

inline Verdict equivalent(const Nfa& a, const Nfa& b) {
  a.require_compatible(b);
  return equivalent(determinize(a), determinize(b));
}

// L(a) subset of L(b); counterexample in L(a) \ L(b).
inline Verdict contains(const Dfa& a, const Dfa& b) {
  return is_empty(product(a, b, Combine::Difference));
}

inline Verdict contains(const Nfa& a, const Nfa& b) {
  a.require_compatible(b);
  return contains(determinize(a), determinize(b));
}

// States from which an accepting state is reachable.
inline std::vector<bool> live_states(const Dfa& d) {
  const Code m = d.symbol_count();
  std::vector<std::vector<StateId>> reverse(d.num_states());
  for (StateId s = 0; s < d.num_states(); ++s) {
    for (Code c = 0; c < m; ++c) reverse[d.next(s, c)].push_back(s);
  }
  std::vector<bool> live(d.num_states(), false);
  std::vector<StateId> stack;
  for (StateId s = 0; s < d.num_states(); ++s) {
    if (d.is_accepting(s)) {
      live[s] = true;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    StateId s = stack.back();
    stack.pop_back();
    for (StateId p : reverse[s]) {
      if (!live[p]) {
        live[p] = true;
        stack.push_back(p);
      }
    }
  }
  return live;
}

inline std::size_t live_state_count(const Dfa& d) {
  auto live = live_states(d);
  return static_cast<std::size_t>(std::count(live.begin(), live.end(), true));
}

// Rejecting states that loop to themselves on every symbol.
inline std::size_t sink_state_count(const Dfa& d) {
  std::size_t n = 0;
  for (StateId s = 0; s < d.num_states(); ++s) {
    if (d.is_accepting(s)) continue;
    bool sink = true;
    for (Code c = 0; c < d.symbol_count() && sink; ++c) sink = d.next(s, c) == s;
    if (sink) ++n;
  }
  return n;
}

/// All accepted words with |w| <= max_len in shortlex order.
inline std::vector<TrackWord> enumerate(const Dfa& d, std::size_t max_len) {
  const Code m = d.symbol_count();
  auto live = live_states(d);
  std::vector<TrackWord> out;
  // Frontier of live prefixes of the current length, in lexicographic order.
  std::vector<std::pair<std::vector<Code>, StateId>> frontier;
  if (live[d.initial()]) frontier.push_back({{}, d.initial()});
  for (std::size_t len = 0; len <= max_len && !frontier.empty(); ++len) {
    std::vector<std::pair<std::vector<Code>, StateId>> next;
    for (const auto& [prefix, s] : frontier) {
      if (d.is_accepting(s)) {
        TrackWord w;
        for (Code c : prefix) w.push_back(d.decode(c));
        out.push_back(std::move(w));
      }
      if (len == max_len) continue;
      for (Code c = 0; c < m; ++c) {
        StateId t = d.next(s, c);
        if (!live[t]) continue;
        auto longer = prefix;
        longer.push_back(c);
        next.emplace_back(std::move(longer), t);
      }
    }
    frontier = std::move(next);
  }
  return out;
}

inline std::vector<TrackWord> enumerate(const Nfa& a, std::size_t max_len) {
  return enumerate(determinize(a), max_len);
}

/// Kleene star: a fresh accepting initial state, and every accepting state
/// may restart with the moves of the original initial states.
inline Nfa star(const Nfa& a) {
  Nfa out(a.alphabet(), a.tracks());
  for (StateId s = 0; s < a.num_states(); ++s) out.add_state(false, a.is_accepting(s));
  StateId start = out.add_state(true, true);
  std::vector<Nfa::Edge> restart;
  for (StateId i : a.initial_states()) {
    restart.insert(restart.end(), a.edges(i).begin(), a.edges(i).end());
  }
  for (StateId s = 0; s < a.num_states(); ++s) {
    for (const auto& e : a.edges(s)) out.add_transition(s, e.symbol, e.to);
    if (a.is_accepting(s)) {
      for (const auto& e : restart) out.add_transition(s, e.symbol, e.to);
    }
  }
  for (const auto& e : restart) out.add_transition(start, e.symbol, e.to);
  return out;
}

inline Nfa concat(const Nfa& a, const Nfa& b) {
  a.require_compatible(b);
  const auto offset = static_cast<StateId>(a.num_states());
  bool a_eps = false, b_eps = false;
  for (StateId i : a.initial_states()) a_eps = a_eps || a.is_accepting(i);
  for (StateId i : b.initial_states()) b_eps = b_eps || b.is_accepting(i);
  Nfa out(a.alphabet(), a.tracks());
  for (StateId s = 0; s < a.num_states(); ++s) {
    out.add_state(a.is_initial(s), a.is_accepting(s) && b_eps);
  }
  for (StateId s = 0; s < b.num_states(); ++s) {
    out.add_state(b.is_initial(s) && a_eps, b.is_accepting(s));
  }
  for (StateId s = 0; s < a.num_states(); ++s) {
    for (const auto& e : a.edges(s)) out.add_transition(s, e.symbol, e.to);
    if (!a.is_accepting(s)) continue;
    for (StateId i : b.initial_states()) {
      for (const auto& e : b.edges(i)) out.add_transition(s, e.symbol, e.to + offset);
    }
  }
  for (StateId s = 0; s < b.num_states(); ++s) {
    for (const auto& e : b.edges(s)) out.add_transition(s + offset, e.symbol, e.to + offset);
  }
  return out;
}

/// True when the reachable parts of a and b are identical up to renaming.
inline bool isomorphic(const Dfa& a, const Dfa& b) {
  if (!a.same_symbols(b)) return false;
  const Code m = a.symbol_count();
  std::vector<StateId> map_ab(a.num_states(), UINT32_MAX);
  std::vector<StateId> map_ba(b.num_states(), UINT32_MAX);
  std::deque<StateId> queue{a.initial()};
  map_ab[a.initial()] = b.initial();
  map_ba[b.initial()] = a.initial();
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    StateId t = map_ab[s];
    if (a.is_accepting(s) != b.is_accepting(t)) return false;
    for (Code c = 0; c < m; ++c) {
      StateId s2 = a.next(s, c), t2 = b.next(t, c);
      if (map_ab[s2] == UINT32_MAX && map_ba[t2] == UINT32_MAX) {
        map_ab[s2] = t2;
        map_ba[t2] = s2;
        queue.push_back(s2);
      } else if (map_ab[s2] != t2 || map_ba[t2] != s2) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace msol

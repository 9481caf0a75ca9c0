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
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "msol/alphabet.hpp"
#include "msol/automata.hpp"
#include "msol/error.hpp"
#include "msol/formula.hpp"
#include "msol/interpreter.hpp"

namespace msol {

/// Second-order-only core. First-order variables survive as set variables
/// of the same name that are constrained to singletons.
struct CoreSO {
  enum class Kind {
    SubsetW,   // X sub W_a: every position in X carries letter a
    Subset,    // X sub Y
    Succ,      // X = {i}, Y = {i+1}
    Less,      // X = {i}, Y = {j}, i < j
    Sing,      // X is a singleton
    Not,
    Or,
    And,
    ExistsSO,
  };

  Kind kind;
  std::string x;       // first variable, or the quantified variable
  std::string y;       // second variable
  std::string letter;  // SubsetW only
  std::shared_ptr<const CoreSO> lhs;
  std::shared_ptr<const CoreSO> rhs;

  bool is_atom() const {
    return kind != Kind::Not && kind != Kind::Or && kind != Kind::And &&
           kind != Kind::ExistsSO;
  }
};

using CorePtr = std::shared_ptr<const CoreSO>;

namespace core {

inline CorePtr make(CoreSO node) { return std::make_shared<const CoreSO>(std::move(node)); }
inline CorePtr subset_w(std::string X, std::string a) {
  return make({.kind = CoreSO::Kind::SubsetW, .x = std::move(X), .letter = std::move(a)});
}
inline CorePtr subset(std::string X, std::string Y) {
  return make({.kind = CoreSO::Kind::Subset, .x = std::move(X), .y = std::move(Y)});
}
inline CorePtr succ(std::string X, std::string Y) {
  return make({.kind = CoreSO::Kind::Succ, .x = std::move(X), .y = std::move(Y)});
}
inline CorePtr less(std::string X, std::string Y) {
  return make({.kind = CoreSO::Kind::Less, .x = std::move(X), .y = std::move(Y)});
}
inline CorePtr sing(std::string X) { return make({.kind = CoreSO::Kind::Sing, .x = std::move(X)}); }
inline CorePtr neg(CorePtr a) { return make({.kind = CoreSO::Kind::Not, .lhs = std::move(a)}); }
inline CorePtr lor(CorePtr a, CorePtr b) {
  return make({.kind = CoreSO::Kind::Or, .lhs = std::move(a), .rhs = std::move(b)});
}
inline CorePtr land(CorePtr a, CorePtr b) {
  return make({.kind = CoreSO::Kind::And, .lhs = std::move(a), .rhs = std::move(b)});
}
inline CorePtr ex(std::string X, CorePtr body) {
  return make({.kind = CoreSO::Kind::ExistsSO, .x = std::move(X), .lhs = std::move(body)});
}

}  // namespace core

inline std::string render_core(const CoreSO& c) {
  auto operand = [](const CorePtr& p) {
    bool wrap = p->kind == CoreSO::Kind::Or || p->kind == CoreSO::Kind::And ||
                p->kind == CoreSO::Kind::ExistsSO;
    return wrap ? "(" + render_core(*p) + ")" : render_core(*p);
  };
  switch (c.kind) {
    case CoreSO::Kind::SubsetW: return c.x + " sub W_" + c.letter;
    case CoreSO::Kind::Subset: return c.x + " sub " + c.y;
    case CoreSO::Kind::Succ: return "Succ(" + c.x + ", " + c.y + ")";
    case CoreSO::Kind::Less: return "Less(" + c.x + ", " + c.y + ")";
    case CoreSO::Kind::Sing: return "Sing(" + c.x + ")";
    case CoreSO::Kind::Not: {
      bool infix = c.lhs->kind == CoreSO::Kind::Subset || c.lhs->kind == CoreSO::Kind::SubsetW;
      return infix ? "!(" + render_core(*c.lhs) + ")" : "!" + operand(c.lhs);
    }
    case CoreSO::Kind::Or: return operand(c.lhs) + " | " + operand(c.rhs);
    case CoreSO::Kind::And: return operand(c.lhs) + " & " + operand(c.rhs);
    case CoreSO::Kind::ExistsSO: return "ex2 " + c.x + ". " + render_core(*c.lhs);
  }
  return {};
}

namespace detail {

inline CorePtr to_core(const Formula& phi) {
  switch (phi.kind()) {
    case Kind::Letter: return core::subset_w(phi.var(), phi.letter());
    case Kind::Less: return core::less(phi.var(), phi.var2());
    case Kind::Succ: return core::succ(phi.var(), phi.var2());
    case Kind::SetMember: return core::subset(phi.var(), phi.set());
    case Kind::Not: return core::neg(to_core(phi.operand()));
    case Kind::Or: return core::lor(to_core(phi.left()), to_core(phi.right()));
    case Kind::And: return core::land(to_core(phi.left()), to_core(phi.right()));
    case Kind::ExistsFO:
      return core::ex(phi.var(), core::land(core::sing(phi.var()), to_core(phi.operand())));
    case Kind::ExistsSO: return core::ex(phi.set(), to_core(phi.operand()));
    default:
      throw Error(Errc::SyntaxError, "unexpected node after expansion");
  }
}

// Free variables of a core formula in first-occurrence order.
inline void core_free_vars(const CoreSO& c, std::vector<std::string>& bound,
                           std::vector<std::string>& out) {
  auto note = [&](const std::string& v) {
    if (v.empty() || contains_name(bound, v) || contains_name(out, v)) return;
    out.push_back(v);
  };
  switch (c.kind) {
    case CoreSO::Kind::Not:
      core_free_vars(*c.lhs, bound, out);
      break;
    case CoreSO::Kind::Or:
    case CoreSO::Kind::And:
      core_free_vars(*c.lhs, bound, out);
      core_free_vars(*c.rhs, bound, out);
      break;
    case CoreSO::Kind::ExistsSO:
      bound.push_back(c.x);
      core_free_vars(*c.lhs, bound, out);
      bound.pop_back();
      break;
    default:
      note(c.x);
      note(c.y);
      break;
  }
}

}  // namespace detail

/// Rewrites phi into the second-order core: a(x) becomes x sub W_a,
/// X(x) becomes x sub X, and ex1 x. phi becomes ex2 x. (Sing(x) & phi').
inline CorePtr normalize(const Formula& phi) {
  return detail::to_core(expand(phi, ExpandOptions{.keep_succ = true, .keep_and = true}));
}

/// Assignment of free variables to tracks, in order of first occurrence in
/// the normalized formula.
class TrackMap {
 public:
  TrackMap() = default;
  explicit TrackMap(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (names_[i] == names_[j]) {
          throw Error(Errc::UnmappedVariable, "duplicate track for '" + names_[i] + "'");
        }
      }
    }
  }

  static TrackMap of(const CoreSO& c) {
    std::vector<std::string> bound, out;
    detail::core_free_vars(c, bound, out);
    return TrackMap(std::move(out));
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  unsigned track(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == name) return static_cast<unsigned>(i);
    }
    throw Error(Errc::UnmappedVariable, "variable '" + name + "' has no track");
  }

  bool contains(const std::string& name) const {
    return std::find(names_.begin(), names_.end(), name) != names_.end();
  }

  friend bool operator==(const TrackMap&, const TrackMap&) = default;

 private:
  std::vector<std::string> names_;
};

/// Automaton for an atomic core formula over the tracks of tm; tracks not
/// mentioned by the atom are unconstrained.
///
///   x sub y    one accepting state, rejects a 1 on x with a 0 on y
///   x sub W_a  one accepting state, a 1 on x only under letter a
///   Succ(x,y)  q0 -(1,0)-> q1 -(0,1)-> q2, loops on (0,0) at q0 and q2
///   Less(x,y)  as Succ with an extra (0,0) loop at q1
///   Sing(x)    q0 -1-> q1, loops on 0
inline Nfa atomic_automaton(const CoreSO& atom, const TrackMap& tm, const Alphabet& sigma) {
  if (!atom.is_atom()) throw Error(Errc::SyntaxError, "not an atomic core formula");
  const unsigned k = static_cast<unsigned>(tm.size());
  Nfa a(sigma, k);
  const unsigned tx = tm.track(atom.x);
  const bool binary = atom.kind == CoreSO::Kind::Subset ||
                      atom.kind == CoreSO::Kind::Succ || atom.kind == CoreSO::Kind::Less;
  const unsigned ty = binary ? tm.track(atom.y) : 0;
  // Calls add(code) for each concrete symbol with the given bits on x (and y).
  auto each = [&](int bx, int by, auto add) {
    for (Code c = 0; c < a.symbol_count(); ++c) {
      if (a.bit(c, tx) != (bx == 1)) continue;
      if (by >= 0 && a.bit(c, ty) != (by == 1)) continue;
      add(c);
    }
  };
  switch (atom.kind) {
    case CoreSO::Kind::Subset: {
      StateId q = a.add_state(true, true);
      for (Code c = 0; c < a.symbol_count(); ++c) {
        if (a.bit(c, tx) && !a.bit(c, ty)) continue;
        a.add_transition(q, c, q);
      }
      break;
    }
    case CoreSO::Kind::SubsetW: {
      auto letter = sigma.index_of(atom.letter);
      if (!letter) {
        throw Error(Errc::UnknownLetter, "letter '" + atom.letter + "' not in alphabet");
      }
      StateId q = a.add_state(true, true);
      for (Code c = 0; c < a.symbol_count(); ++c) {
        if (a.bit(c, tx) && a.letter_of(c) != *letter) continue;
        a.add_transition(q, c, q);
      }
      break;
    }
    case CoreSO::Kind::Succ:
    case CoreSO::Kind::Less: {
      StateId q0 = a.add_state(true, false);
      StateId q1 = a.add_state();
      StateId q2 = a.add_state(false, true);
      if (tx == ty) break;  // a singleton cannot precede itself
      each(0, 0, [&](Code c) { a.add_transition(q0, c, q0); });
      each(1, 0, [&](Code c) { a.add_transition(q0, c, q1); });
      if (atom.kind == CoreSO::Kind::Less) {
        each(0, 0, [&](Code c) { a.add_transition(q1, c, q1); });
      }
      each(0, 1, [&](Code c) { a.add_transition(q1, c, q2); });
      each(0, 0, [&](Code c) { a.add_transition(q2, c, q2); });
      break;
    }
    case CoreSO::Kind::Sing: {
      StateId q0 = a.add_state(true, false);
      StateId q1 = a.add_state(false, true);
      each(0, -1, [&](Code c) { a.add_transition(q0, c, q0); });
      each(1, -1, [&](Code c) { a.add_transition(q0, c, q1); });
      each(0, -1, [&](Code c) { a.add_transition(q1, c, q1); });
      break;
    }
    default:
      break;
  }
  return a;
}

struct CompileStats {
  // Largest automaton produced at any step, before minimization.
  std::size_t max_states = 0;
  std::size_t steps = 0;
};

struct CompiledFormula {
  Dfa dfa;
  TrackMap tracks;
};

namespace detail {

class Compiler {
 public:
  Compiler(const Alphabet& sigma, CompileStats* stats) : sigma_(sigma), stats_(stats) {}

  struct Part {
    Dfa dfa;
    std::vector<unsigned> ids;  // sorted variable ids, one per track
  };

  std::map<std::string, std::vector<unsigned>> scope;
  std::set<unsigned> first_order;
  unsigned next_id = 0;

  Part run(const CoreSO& c) {
    switch (c.kind) {
      case CoreSO::Kind::Not: {
        Part p = run(*c.lhs);
        p.dfa = complement(p.dfa);
        return restrict(std::move(p));
      }
      case CoreSO::Kind::Or:
      case CoreSO::Kind::And: {
        Part l = run(*c.lhs);
        Part r = run(*c.rhs);
        Part p = combine(std::move(l), std::move(r),
                         c.kind == CoreSO::Kind::Or ? Combine::Or : Combine::And);
        return c.kind == CoreSO::Kind::Or ? restrict(std::move(p)) : p;
      }
      case CoreSO::Kind::ExistsSO: {
        unsigned id = next_id++;
        // ex2 x. (Sing(x) & ..) is a first-order quantifier.
        if (c.lhs->kind == CoreSO::Kind::And && c.lhs->lhs->kind == CoreSO::Kind::Sing &&
            c.lhs->lhs->x == c.x) {
          first_order.insert(id);
        }
        scope[c.x].push_back(id);
        Part body = run(*c.lhs);
        scope[c.x].pop_back();
        auto it = std::find(body.ids.begin(), body.ids.end(), id);
        if (it == body.ids.end()) return body;  // vacuous quantifier
        unsigned track = static_cast<unsigned>(it - body.ids.begin());
        Nfa projected = project(body.dfa, track);
        body.ids.erase(it);
        Dfa d = determinize(projected);
        note(d.num_states());
        // Quantifiers range over positions; the empty word has none.
        body.dfa = minimize(set_empty_word(d, false));
        return body;
      }
      default:
        return atom(c);
    }
  }

  Part atom(const CoreSO& c) {
    std::vector<unsigned> ids;
    std::vector<std::string> names;
    auto add = [&](const std::string& v) {
      unsigned id = lookup(v);
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) {
        ids.push_back(id);
        names.push_back(v);
      }
    };
    add(c.x);
    if (c.kind == CoreSO::Kind::Subset || c.kind == CoreSO::Kind::Succ ||
        c.kind == CoreSO::Kind::Less) {
      add(c.y);
    }
    // Track order follows variable ids.
    std::vector<std::size_t> order(ids.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return ids[a] < ids[b]; });
    std::vector<unsigned> sorted_ids;
    std::vector<std::string> sorted_names;
    for (auto i : order) {
      sorted_ids.push_back(ids[i]);
      sorted_names.push_back(names[i]);
    }
    Nfa a = atomic_automaton(c, TrackMap(sorted_names), sigma_);
    note(a.num_states());
    Part p{minimize(a), sorted_ids};
    // Succ, Less and Sing already force their operands to be singletons.
    bool forced = c.kind == CoreSO::Kind::Succ || c.kind == CoreSO::Kind::Less ||
                  c.kind == CoreSO::Kind::Sing;
    return forced ? p : restrict(std::move(p));
  }

  // Intersects p with Sing(x) for every first-order variable x among its
  // tracks. Every part keeps this invariant, which bounds intermediate
  // automata; on singleton assignments the language is unchanged, and the
  // quantifier of x conjoins Sing(x) anyway.
  Part restrict(Part p) const {
    for (unsigned t = 0; t < p.ids.size(); ++t) {
      if (!first_order.count(p.ids[t])) continue;
      Dfa sing(sigma_, p.dfa.tracks(), 3);  // 0: no 1 yet, 1: one 1, 2: dead
      sing.set_accepting(1);
      for (Code c = 0; c < sing.symbol_count(); ++c) {
        bool b = sing.bit(c, t);
        sing.set_next(0, c, b ? 1 : 0);
        sing.set_next(1, c, b ? 2 : 1);
        sing.set_next(2, c, 2);
      }
      p.dfa = minimize(product(p.dfa, sing, Combine::And));
    }
    return p;
  }

  Part combine(Part l, Part r, Combine op) {
    std::vector<unsigned> ids;
    std::set_union(l.ids.begin(), l.ids.end(), r.ids.begin(), r.ids.end(),
                   std::back_inserter(ids));
    Dfa a = widen(l, ids);
    Dfa b = widen(r, ids);
    Dfa p = product(a, b, op);
    note(p.num_states());
    return Part{minimize(p), ids};
  }

  Dfa widen(const Part& p, const std::vector<unsigned>& ids) const {
    if (p.ids == ids) return p.dfa;
    std::vector<unsigned> positions;
    for (unsigned id : p.ids) {
      positions.push_back(static_cast<unsigned>(
          std::lower_bound(ids.begin(), ids.end(), id) - ids.begin()));
    }
    return cylindrify(p.dfa, static_cast<unsigned>(ids.size()), positions);
  }

  unsigned lookup(const std::string& v) const {
    auto it = scope.find(v);
    if (it == scope.end() || it->second.empty()) {
      throw Error(Errc::UnmappedVariable, "variable '" + v + "' has no track");
    }
    return it->second.back();
  }

  void note(std::size_t states) {
    if (!stats_) return;
    stats_->max_states = std::max(stats_->max_states, states);
    ++stats_->steps;
  }

 private:
  const Alphabet& sigma_;
  CompileStats* stats_;
};

}  // namespace detail

/// Builds the minimal DFA of phi. With free variables the result reads
/// Sigma x {0,1}^k, one track per free variable in TrackMap order; a
/// first-order variable's track must carry exactly one 1.
inline CompiledFormula compile_open(const Formula& phi, const Alphabet& sigma,
                                    EpsilonMode mode = EpsilonMode::ExcludeEpsilon,
                                    CompileStats* stats = nullptr) {
  check_well_formed(phi, sigma);
  CorePtr c = normalize(phi);
  TrackMap tm = TrackMap::of(*c);
  FreeVars free = free_vars(phi);
  if (tm.size() > kMaxTracks) throw Error(Errc::TooManyTracks, "too many free variables");

  detail::Compiler comp(sigma, stats);
  for (const auto& name : tm.names()) {
    if (free.fo.count(name)) comp.first_order.insert(comp.next_id);
    comp.scope[name].push_back(comp.next_id++);
  }
  auto part = comp.run(*c);
  for (const auto& name : tm.names()) {
    if (!free.fo.count(name)) continue;
    auto sing = comp.atom(*core::sing(name));
    part = comp.combine(std::move(part), std::move(sing), Combine::And);
  }
  std::vector<unsigned> all(tm.size());
  for (unsigned i = 0; i < all.size(); ++i) all[i] = i;
  Dfa d = comp.widen(part, all);
  if (mode == EpsilonMode::ExcludeEpsilon) d = set_empty_word(d, false);
  return CompiledFormula{minimize(d), tm};
}

inline Dfa compile(const Formula& phi, const Alphabet& sigma,
                   EpsilonMode mode = EpsilonMode::ExcludeEpsilon,
                   CompileStats* stats = nullptr) {
  return compile_open(phi, sigma, mode, stats).dfa;
}

// Annotates w with the tracks of tm: a first-order variable marks its
// position, a second-order variable marks its set.
inline TrackWord encode_assignment(const Word& w, const TrackMap& tm, const Assignment& nu) {
  std::vector<std::vector<bool>> columns;
  for (const auto& name : tm.names()) {
    std::vector<bool> col(w.size(), false);
    if (auto it = nu.fo.find(name); it != nu.fo.end()) {
      if (it->second >= w.size()) {
        throw Error(Errc::InvalidAssignment, "position of '" + name + "' is outside the word");
      }
      col[it->second] = true;
    } else if (auto jt = nu.so.find(name); jt != nu.so.end()) {
      for (std::size_t p : jt->second) {
        if (p >= w.size()) {
          throw Error(Errc::InvalidAssignment, "set '" + name + "' exceeds the word");
        }
        col[p] = true;
      }
    } else {
      throw Error(Errc::UnboundVariable, "no value for '" + name + "'");
    }
    columns.push_back(std::move(col));
  }
  return annotate(w, columns);
}

}  // namespace msol

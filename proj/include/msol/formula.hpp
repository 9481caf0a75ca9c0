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
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "msol/alphabet.hpp"
#include "msol/error.hpp"

namespace msol {

// Node kinds. The first seven are the core language; everything after
// them is an abbreviation that expand() rewrites into the core.
enum class Kind : std::uint8_t {
  Letter,     // a(x)
  Less,       // x < y
  SetMember,  // X(x), also written x in X
  Not,
  Or,
  ExistsFO,   // ex1 x. phi
  ExistsSO,   // ex2 X. phi

  True,
  False,
  And,
  Implies,
  Iff,
  ForallFO,
  ForallSO,
  Eq,           // x = y
  Neq,          // x != y
  Leq,          // x <= y
  Geq,          // x >= y
  Gt,           // x > y
  EqConst,      // x = k
  PlusOffset,   // y = x + k
  MinusOffset,  // y = x - k
  Succ,         // succ(x, y)
  First,        // first(x)
  Last,         // last(x)
  Subset,       // X sub Y
  SetEq,        // X = Y
  SetNeq,       // X != Y
};

constexpr bool is_core(Kind k) { return k <= Kind::ExistsSO; }

// Names starting with this prefix are generated by expand() and rejected
// by the parser, so they never capture user variables.
inline constexpr char kReservedPrefix = '_';

/// Immutable, structurally shared formula tree.
///
/// Field use per kind (unused fields are empty):
///   var()   first-order operand: Letter, Less/Eq/../Gt (left), SetMember,
///           ExistsFO/ForallFO, EqConst, Succ (left), First, Last,
///           PlusOffset/MinusOffset (the defined variable y in y = x +- k)
///   var2()  second first-order operand: Less/Eq/../Gt (right), Succ
///           (right), PlusOffset/MinusOffset (the base x)
///   set()   second-order operand: SetMember, ExistsSO/ForallSO,
///           Subset/SetEq/SetNeq (left)
///   set2()  Subset/SetEq/SetNeq (right)
class Formula {
 public:
  Kind kind() const noexcept { return node_->kind; }
  const std::string& letter() const noexcept { return node_->letter; }
  const std::string& var() const noexcept { return node_->var; }
  const std::string& var2() const noexcept { return node_->var2; }
  const std::string& set() const noexcept { return node_->set; }
  const std::string& set2() const noexcept { return node_->set2; }
  unsigned constant() const noexcept { return node_->k; }

  // Operand of Not and of quantifiers; left operand of binary connectives.
  Formula operand() const { return Formula(node_->lhs); }
  Formula left() const { return Formula(node_->lhs); }
  Formula right() const { return Formula(node_->rhs); }

  bool is_quantifier() const {
    switch (kind()) {
      case Kind::ExistsFO: case Kind::ExistsSO:
      case Kind::ForallFO: case Kind::ForallSO:
        return true;
      default:
        return false;
    }
  }

  bool is_binary() const {
    switch (kind()) {
      case Kind::Or: case Kind::And: case Kind::Implies: case Kind::Iff:
        return true;
      default:
        return false;
    }
  }

  friend bool operator==(const Formula& a, const Formula& b) {
    if (a.node_ == b.node_) return true;
    const Node& x = *a.node_;
    const Node& y = *b.node_;
    if (x.kind != y.kind || x.letter != y.letter || x.var != y.var ||
        x.var2 != y.var2 || x.set != y.set || x.set2 != y.set2 || x.k != y.k) {
      return false;
    }
    if (static_cast<bool>(x.lhs) != static_cast<bool>(y.lhs) ||
        static_cast<bool>(x.rhs) != static_cast<bool>(y.rhs)) {
      return false;
    }
    if (x.lhs && !(Formula(x.lhs) == Formula(y.lhs))) return false;
    if (x.rhs && !(Formula(x.rhs) == Formula(y.rhs))) return false;
    return true;
  }

  struct Node {
    Kind kind = Kind::True;
    std::string letter;
    std::string var;
    std::string var2;
    std::string set;
    std::string set2;
    unsigned k = 0;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
  };

  static Formula make(Node node) {
    return Formula(std::make_shared<const Node>(std::move(node)));
  }

  const std::shared_ptr<const Node>& node() const noexcept { return node_; }

 private:
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Constructors named after the concrete syntax.
namespace f {

inline Formula letter(std::string a, std::string x) {
  return Formula::make({.kind = Kind::Letter, .letter = std::move(a), .var = std::move(x)});
}
inline Formula member(std::string X, std::string x) {
  return Formula::make({.kind = Kind::SetMember, .var = std::move(x), .set = std::move(X)});
}
inline Formula truth() { return Formula::make({.kind = Kind::True}); }
inline Formula falsity() { return Formula::make({.kind = Kind::False}); }

inline Formula neg(const Formula& a) {
  return Formula::make({.kind = Kind::Not, .lhs = a.node()});
}

namespace detail {
inline Formula binary(Kind k, const Formula& a, const Formula& b) {
  return Formula::make({.kind = k, .lhs = a.node(), .rhs = b.node()});
}
inline Formula fo_rel(Kind k, std::string x, std::string y) {
  return Formula::make({.kind = k, .var = std::move(x), .var2 = std::move(y)});
}
inline Formula so_rel(Kind k, std::string X, std::string Y) {
  return Formula::make({.kind = k, .set = std::move(X), .set2 = std::move(Y)});
}
inline Formula fo_quant(Kind k, std::string x, const Formula& body) {
  return Formula::make({.kind = k, .var = std::move(x), .lhs = body.node()});
}
inline Formula so_quant(Kind k, std::string X, const Formula& body) {
  return Formula::make({.kind = k, .set = std::move(X), .lhs = body.node()});
}
}  // namespace detail

inline Formula lor(const Formula& a, const Formula& b) { return detail::binary(Kind::Or, a, b); }
inline Formula land(const Formula& a, const Formula& b) { return detail::binary(Kind::And, a, b); }
inline Formula implies(const Formula& a, const Formula& b) { return detail::binary(Kind::Implies, a, b); }
inline Formula iff(const Formula& a, const Formula& b) { return detail::binary(Kind::Iff, a, b); }

// Left-associated chains; an empty chain is the neutral element.
inline Formula land(const std::vector<Formula>& xs) {
  if (xs.empty()) return truth();
  Formula acc = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) acc = land(acc, xs[i]);
  return acc;
}
inline Formula lor(const std::vector<Formula>& xs) {
  if (xs.empty()) return falsity();
  Formula acc = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) acc = lor(acc, xs[i]);
  return acc;
}

inline Formula ex1(std::string x, const Formula& b) { return detail::fo_quant(Kind::ExistsFO, std::move(x), b); }
inline Formula all1(std::string x, const Formula& b) { return detail::fo_quant(Kind::ForallFO, std::move(x), b); }
inline Formula ex2(std::string X, const Formula& b) { return detail::so_quant(Kind::ExistsSO, std::move(X), b); }
inline Formula all2(std::string X, const Formula& b) { return detail::so_quant(Kind::ForallSO, std::move(X), b); }

inline Formula less(std::string x, std::string y) { return detail::fo_rel(Kind::Less, std::move(x), std::move(y)); }
inline Formula eq(std::string x, std::string y) { return detail::fo_rel(Kind::Eq, std::move(x), std::move(y)); }
inline Formula neq(std::string x, std::string y) { return detail::fo_rel(Kind::Neq, std::move(x), std::move(y)); }
inline Formula leq(std::string x, std::string y) { return detail::fo_rel(Kind::Leq, std::move(x), std::move(y)); }
inline Formula geq(std::string x, std::string y) { return detail::fo_rel(Kind::Geq, std::move(x), std::move(y)); }
inline Formula gt(std::string x, std::string y) { return detail::fo_rel(Kind::Gt, std::move(x), std::move(y)); }
inline Formula succ(std::string x, std::string y) { return detail::fo_rel(Kind::Succ, std::move(x), std::move(y)); }

inline Formula eq_const(std::string x, unsigned k) {
  return Formula::make({.kind = Kind::EqConst, .var = std::move(x), .k = k});
}
// y = x + k
inline Formula plus(std::string y, std::string x, unsigned k) {
  return Formula::make({.kind = Kind::PlusOffset, .var = std::move(y), .var2 = std::move(x), .k = k});
}
// y = x - k
inline Formula minus(std::string y, std::string x, unsigned k) {
  return Formula::make({.kind = Kind::MinusOffset, .var = std::move(y), .var2 = std::move(x), .k = k});
}
inline Formula first(std::string x) { return Formula::make({.kind = Kind::First, .var = std::move(x)}); }
inline Formula last(std::string x) { return Formula::make({.kind = Kind::Last, .var = std::move(x)}); }

inline Formula subset(std::string X, std::string Y) { return detail::so_rel(Kind::Subset, std::move(X), std::move(Y)); }
inline Formula set_eq(std::string X, std::string Y) { return detail::so_rel(Kind::SetEq, std::move(X), std::move(Y)); }
inline Formula set_neq(std::string X, std::string Y) { return detail::so_rel(Kind::SetNeq, std::move(X), std::move(Y)); }

}  // namespace f

struct FreeVars {
  std::set<std::string> fo;
  std::set<std::string> so;

  bool empty() const { return fo.empty() && so.empty(); }
  friend bool operator==(const FreeVars&, const FreeVars&) = default;
};

namespace detail {

// Visits every node in pre-order with the sets of names bound above it.
template <typename Visitor>
void walk(const Formula& phi, std::vector<std::string>& bound_fo,
          std::vector<std::string>& bound_so, Visitor& visit) {
  visit(phi, bound_fo, bound_so);
  switch (phi.kind()) {
    case Kind::Not:
      walk(phi.operand(), bound_fo, bound_so, visit);
      break;
    case Kind::Or: case Kind::And: case Kind::Implies: case Kind::Iff:
      walk(phi.left(), bound_fo, bound_so, visit);
      walk(phi.right(), bound_fo, bound_so, visit);
      break;
    case Kind::ExistsFO: case Kind::ForallFO:
      bound_fo.push_back(phi.var());
      walk(phi.operand(), bound_fo, bound_so, visit);
      bound_fo.pop_back();
      break;
    case Kind::ExistsSO: case Kind::ForallSO:
      bound_so.push_back(phi.set());
      walk(phi.operand(), bound_fo, bound_so, visit);
      bound_so.pop_back();
      break;
    default:
      break;
  }
}

inline bool contains_name(const std::vector<std::string>& xs,
                          const std::string& name) {
  for (const auto& x : xs) {
    if (x == name) return true;
  }
  return false;
}

// Variables occurring in an atom, first-order and second-order, in
// left-to-right textual order.
inline void atom_variables(const Formula& phi, std::vector<std::string>& fo,
                           std::vector<std::string>& so) {
  switch (phi.kind()) {
    case Kind::Letter: case Kind::EqConst: case Kind::First: case Kind::Last:
      fo.push_back(phi.var());
      break;
    case Kind::SetMember:
      so.push_back(phi.set());
      fo.push_back(phi.var());
      break;
    case Kind::Less: case Kind::Eq: case Kind::Neq: case Kind::Leq:
    case Kind::Geq: case Kind::Gt: case Kind::Succ:
    case Kind::PlusOffset: case Kind::MinusOffset:
      fo.push_back(phi.var());
      fo.push_back(phi.var2());
      break;
    case Kind::Subset: case Kind::SetEq: case Kind::SetNeq:
      so.push_back(phi.set());
      so.push_back(phi.set2());
      break;
    default:
      break;
  }
}

}  // namespace detail

// Free first- and second-order variables; quantifiers bind, innermost
// binding wins.
inline FreeVars free_vars(const Formula& phi) {
  FreeVars out;
  std::vector<std::string> bound_fo, bound_so;
  auto visit = [&](const Formula& node, const std::vector<std::string>& bfo,
                   const std::vector<std::string>& bso) {
    std::vector<std::string> fo, so;
    detail::atom_variables(node, fo, so);
    for (const auto& x : fo) {
      if (!detail::contains_name(bfo, x)) out.fo.insert(x);
    }
    for (const auto& X : so) {
      if (!detail::contains_name(bso, X)) out.so.insert(X);
    }
  };
  detail::walk(phi, bound_fo, bound_so, visit);
  return out;
}

inline bool is_sentence(const Formula& phi) { return free_vars(phi).empty(); }

// Throws VariableKindMismatch when a name is used as both a first-order and
// a second-order variable anywhere in phi.
inline void check_variable_kinds(const Formula& phi) {
  std::set<std::string> fo_names, so_names;
  std::vector<std::string> bound_fo, bound_so;
  auto visit = [&](const Formula& node, const std::vector<std::string>&,
                   const std::vector<std::string>&) {
    std::vector<std::string> fo, so;
    detail::atom_variables(node, fo, so);
    if (node.kind() == Kind::ExistsFO || node.kind() == Kind::ForallFO) {
      fo.push_back(node.var());
    }
    if (node.kind() == Kind::ExistsSO || node.kind() == Kind::ForallSO) {
      so.push_back(node.set());
    }
    fo_names.insert(fo.begin(), fo.end());
    so_names.insert(so.begin(), so.end());
  };
  detail::walk(phi, bound_fo, bound_so, visit);
  for (const auto& name : fo_names) {
    if (name.empty()) {
      throw Error(Errc::VariableKindMismatch, "empty variable name");
    }
    if (so_names.count(name)) {
      throw Error(Errc::VariableKindMismatch,
                  "'" + name + "' used as first- and second-order variable");
    }
  }
  for (const auto& name : so_names) {
    if (name.empty()) {
      throw Error(Errc::VariableKindMismatch, "empty variable name");
    }
  }
}

// Validates letters against the alphabet and the variable namespaces.
inline void check_well_formed(const Formula& phi, const Alphabet& sigma) {
  check_variable_kinds(phi);
  std::vector<std::string> bound_fo, bound_so;
  auto visit = [&](const Formula& node, const std::vector<std::string>&,
                   const std::vector<std::string>&) {
    if (node.kind() == Kind::Letter && !sigma.contains(node.letter())) {
      throw Error(Errc::UnknownLetter,
                  "letter '" + node.letter() + "' not in alphabet");
    }
  };
  detail::walk(phi, bound_fo, bound_so, visit);
}

// True when phi mentions any second-order construct.
inline bool has_second_order(const Formula& phi) {
  bool found = false;
  std::vector<std::string> bound_fo, bound_so;
  auto visit = [&](const Formula& node, const std::vector<std::string>&,
                   const std::vector<std::string>&) {
    switch (node.kind()) {
      case Kind::SetMember: case Kind::ExistsSO: case Kind::ForallSO:
      case Kind::Subset: case Kind::SetEq: case Kind::SetNeq:
        found = true;
        break;
      default:
        break;
    }
  };
  detail::walk(phi, bound_fo, bound_so, visit);
  return found;
}

struct ExpandOptions {
  // Keep succ(x, y) as an atom (the automaton compiler has a dedicated
  // automaton for it).
  bool keep_succ = false;
  // Keep conjunction instead of rewriting it to !(!a | !b).
  bool keep_and = false;
};

namespace detail {

class Expander {
 public:
  Expander(const Formula& root, ExpandOptions options) : options_(options) {
    // Continue numbering after any generated name already present, so
    // re-expanding a partially expanded formula cannot capture.
    std::vector<std::string> bound_fo, bound_so;
    auto visit = [&](const Formula& node, const std::vector<std::string>&,
                     const std::vector<std::string>&) {
      std::vector<std::string> fo, so;
      atom_variables(node, fo, so);
      if (node.kind() == Kind::ExistsFO || node.kind() == Kind::ForallFO) {
        fo.push_back(node.var());
      }
      for (const auto& name : fo) bump(name);
    };
    walk(root, bound_fo, bound_so, visit);
  }

  Formula run(const Formula& phi) {
    using namespace f;
    switch (phi.kind()) {
      case Kind::Letter:
      case Kind::Less:
      case Kind::SetMember:
        return phi;
      case Kind::Not:
        return neg(run(phi.operand()));
      case Kind::Or:
        return lor(run(phi.left()), run(phi.right()));
      case Kind::ExistsFO:
        return ex1(phi.var(), run(phi.operand()));
      case Kind::ExistsSO:
        return ex2(phi.set(), run(phi.operand()));

      case Kind::True: {
        std::string z = fresh();
        return neg(ex1(z, less(z, z)));
      }
      case Kind::False: {
        std::string z = fresh();
        return ex1(z, less(z, z));
      }
      case Kind::And:
        return conj(run(phi.left()), run(phi.right()));
      case Kind::Implies:
        return lor(neg(run(phi.left())), run(phi.right()));
      case Kind::Iff: {
        Formula a = run(phi.left());
        Formula b = run(phi.right());
        return conj(lor(neg(a), b), lor(neg(b), a));
      }
      case Kind::ForallFO:
        return neg(ex1(phi.var(), neg(run(phi.operand()))));
      case Kind::ForallSO:
        return neg(ex2(phi.set(), neg(run(phi.operand()))));
      case Kind::Geq:
        return neg(less(phi.var(), phi.var2()));
      case Kind::Leq:
        return neg(less(phi.var2(), phi.var()));
      case Kind::Gt:
        return less(phi.var2(), phi.var());
      case Kind::Eq:
        return equal(phi.var(), phi.var2());
      case Kind::Neq:
        return neg(equal(phi.var(), phi.var2()));
      case Kind::EqConst: {
        if (phi.constant() == 0) return run(first(phi.var()));
        // x = k  is  ex1 z. (z = 0 & x = z + k)
        std::string z = fresh();
        return run(ex1(z, land(eq_const(z, 0), plus(phi.var(), z, phi.constant()))));
      }
      case Kind::PlusOffset:
        return offset(phi.var(), phi.var2(), phi.constant());
      case Kind::MinusOffset:
        // y = x - k  is  x = y + k
        return offset(phi.var2(), phi.var(), phi.constant());
      case Kind::Succ: {
        if (options_.keep_succ) return phi;
        std::string z = fresh();
        return conj(less(phi.var(), phi.var2()),
                    neg(ex1(z, conj(less(phi.var(), z), less(z, phi.var2())))));
      }
      case Kind::First: {
        std::string y = fresh();
        return neg(ex1(y, less(y, phi.var())));
      }
      case Kind::Last: {
        std::string y = fresh();
        return neg(ex1(y, less(phi.var(), y)));
      }
      case Kind::Subset: {
        std::string x = fresh();
        return neg(ex1(x, neg(lor(neg(member(phi.set(), x)), member(phi.set2(), x)))));
      }
      case Kind::SetEq:
        return conj(run(subset(phi.set(), phi.set2())),
                    run(subset(phi.set2(), phi.set())));
      case Kind::SetNeq:
        return neg(run(set_eq(phi.set(), phi.set2())));
    }
    return phi;
  }

 private:
  void bump(const std::string& name) {
    if (name.size() < 3 || name[0] != kReservedPrefix || name[1] != 'z') return;
    std::size_t n = 0;
    for (std::size_t i = 2; i < name.size(); ++i) {
      if (name[i] < '0' || name[i] > '9') return;
      n = n * 10 + static_cast<std::size_t>(name[i] - '0');
    }
    next_ = std::max(next_, n + 1);
  }

  std::string fresh() {
    return std::string(1, kReservedPrefix) + "z" + std::to_string(next_++);
  }

  Formula conj(const Formula& a, const Formula& b) {
    if (options_.keep_and) return f::land(a, b);
    return f::neg(f::lor(f::neg(a), f::neg(b)));
  }

  // x = y  is  x <= y & y <= x, with x <= y  being  !(y < x).
  Formula equal(const std::string& x, const std::string& y) {
    return conj(f::neg(f::less(y, x)), f::neg(f::less(x, y)));
  }

  // y = x + k  is  ex1 z0..zk. (z0 = x & succ(z0,z1) & .. & succ(z_{k-1},zk) & y = zk)
  Formula offset(const std::string& y, const std::string& x, unsigned k) {
    std::vector<std::string> zs;
    for (unsigned i = 0; i <= k; ++i) zs.push_back(fresh());
    std::vector<Formula> parts;
    parts.push_back(f::eq(zs[0], x));
    for (unsigned i = 0; i < k; ++i) parts.push_back(f::succ(zs[i], zs[i + 1]));
    parts.push_back(f::eq(y, zs[k]));
    Formula body = f::land(parts);
    for (unsigned i = k + 1; i-- > 0;) body = f::ex1(zs[i], body);
    return run(body);
  }

  ExpandOptions options_;
  std::size_t next_ = 0;
};

}  // namespace detail

/// Rewrites every abbreviation into the core connectives Letter, Less,
/// SetMember, Not, Or, ExistsFO and ExistsSO (modulo ExpandOptions).
/// Generated variables use the reserved '_z' prefix.
inline Formula expand(const Formula& phi, ExpandOptions options = {}) {
  check_variable_kinds(phi);
  return detail::Expander(phi, options).run(phi);
}

inline Formula expand(const Formula& phi, const Alphabet& sigma,
                      ExpandOptions options = {}) {
  check_well_formed(phi, sigma);
  return expand(phi, options);
}

// Maximum nesting depth of quantifiers.
inline std::size_t quantifier_depth(const Formula& phi) {
  switch (phi.kind()) {
    case Kind::Not:
      return quantifier_depth(phi.operand());
    case Kind::Or: case Kind::And: case Kind::Implies: case Kind::Iff:
      return std::max(quantifier_depth(phi.left()), quantifier_depth(phi.right()));
    case Kind::ExistsFO: case Kind::ForallFO: case Kind::ExistsSO: case Kind::ForallSO:
      return 1 + quantifier_depth(phi.operand());
    default:
      return 0;
  }
}

}  // namespace msol

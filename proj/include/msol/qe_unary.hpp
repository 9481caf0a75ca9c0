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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "msol/alphabet.hpp"
#include "msol/error.hpp"
#include "msol/formula.hpp"
#include "msol/formula_io.hpp"

namespace msol {

/// Position-valued term of the one-letter fragment: 0, last, or a
/// first-order variable.
struct QfTerm {
  enum class Base : std::uint8_t { Zero, Last, Var };
  Base base = Base::Zero;
  std::string var;

  static QfTerm zero() { return {Base::Zero, {}}; }
  static QfTerm last() { return {Base::Last, {}}; }
  static QfTerm of(std::string v) { return {Base::Var, std::move(v)}; }

  friend bool operator==(const QfTerm&, const QfTerm&) = default;
  friend auto operator<=>(const QfTerm&, const QfTerm&) = default;
};

/// lhs < rhs + c. Every QF-MFO atom has this shape: x < k is x < 0 + k,
/// k < last is 0 < last - k, x > y + k is y < x - k.
struct QfAtom {
  QfTerm lhs;
  QfTerm rhs;
  long c = 0;
  // Derived from one of the implicit bounds -1 < x and x < last + 1.
  bool synthetic = false;

  bool same_bases(const QfAtom& o) const { return lhs == o.lhs && rhs == o.rhs; }
  bool mentions(const std::string& x) const {
    return (lhs.base == QfTerm::Base::Var && lhs.var == x) ||
           (rhs.base == QfTerm::Base::Var && rhs.var == x);
  }
  bool is_sentence_atom() const {
    return lhs.base != QfTerm::Base::Var && rhs.base != QfTerm::Base::Var;
  }

  friend bool operator==(const QfAtom& a, const QfAtom& b) {
    return a.lhs == b.lhs && a.rhs == b.rhs && a.c == b.c;
  }
};

// k < last
inline QfAtom k_lt_last(long k) { return {QfTerm::zero(), QfTerm::last(), -k}; }
// k > last
inline QfAtom k_gt_last(long k) { return {QfTerm::last(), QfTerm::zero(), k}; }

/// Positive boolean combination of QF-MFO atoms.
class QfFormula {
 public:
  enum class Kind : std::uint8_t { True, False, Atom, And, Or };

  static QfFormula truth() { return QfFormula(Kind::True); }
  static QfFormula falsity() { return QfFormula(Kind::False); }
  static QfFormula atom(QfAtom a) {
    QfFormula f(Kind::Atom);
    f.atom_ = std::move(a);
    return f;
  }
  // n-ary; nested nodes of the same kind are flattened, neutral elements
  // dropped and absorbing elements propagated.
  static QfFormula conj(std::vector<QfFormula> xs) { return nary(Kind::And, std::move(xs)); }
  static QfFormula disj(std::vector<QfFormula> xs) { return nary(Kind::Or, std::move(xs)); }

  Kind kind() const noexcept { return kind_; }
  const QfAtom& atom() const { return atom_; }
  const std::vector<QfFormula>& children() const noexcept { return children_; }

  friend bool operator==(const QfFormula&, const QfFormula&) = default;

 private:
  explicit QfFormula(Kind k) : kind_(k) {}

  static QfFormula nary(Kind k, std::vector<QfFormula> xs) {
    const Kind unit = k == Kind::And ? Kind::True : Kind::False;
    const Kind zero = k == Kind::And ? Kind::False : Kind::True;
    QfFormula out(k);
    for (auto& x : xs) {
      if (x.kind_ == unit) continue;
      if (x.kind_ == zero) return QfFormula(zero);
      if (x.kind_ == k) {
        for (auto& y : x.children_) out.children_.push_back(std::move(y));
      } else {
        out.children_.push_back(std::move(x));
      }
    }
    if (out.children_.empty()) return QfFormula(unit);
    if (out.children_.size() == 1) return std::move(out.children_.front());
    return out;
  }

  Kind kind_;
  QfAtom atom_;
  std::vector<QfFormula> children_;
};

/// First-order formula over a one-letter alphabet whose atoms are QF-MFO
/// comparisons; the input language of quantifier elimination.
class QeFormula {
 public:
  enum class Kind : std::uint8_t { True, False, Atom, Not, And, Or, Exists, Forall };

  static QeFormula truth() { return QeFormula(Kind::True); }
  static QeFormula falsity() { return QeFormula(Kind::False); }
  static QeFormula atom(QfAtom a) {
    QeFormula f(Kind::Atom);
    f.atom_ = std::move(a);
    return f;
  }
  static QeFormula neg(QeFormula a) { return QeFormula(Kind::Not, {std::move(a)}); }
  static QeFormula conj(QeFormula a, QeFormula b) {
    return QeFormula(Kind::And, {std::move(a), std::move(b)});
  }
  static QeFormula disj(QeFormula a, QeFormula b) {
    return QeFormula(Kind::Or, {std::move(a), std::move(b)});
  }
  static QeFormula exists(std::string x, QeFormula body) {
    QeFormula f(Kind::Exists, {std::move(body)});
    f.var_ = std::move(x);
    return f;
  }
  static QeFormula forall(std::string x, QeFormula body) {
    QeFormula f(Kind::Forall, {std::move(body)});
    f.var_ = std::move(x);
    return f;
  }

  Kind kind() const noexcept { return kind_; }
  const QfAtom& atom() const { return atom_; }
  const std::string& var() const noexcept { return var_; }
  const QeFormula& operand() const { return children_.at(0); }
  const QeFormula& left() const { return children_.at(0); }
  const QeFormula& right() const { return children_.at(1); }

 private:
  explicit QeFormula(Kind k, std::vector<QeFormula> children = {})
      : kind_(k), children_(std::move(children)) {}

  Kind kind_;
  QfAtom atom_;
  std::string var_;
  std::vector<QeFormula> children_;
};

namespace detail {

struct Offset {
  QfTerm term;
  long k = 0;
};

// t1 < t2
inline QeFormula qe_less(const Offset& a, const Offset& b) {
  return QeFormula::atom({a.term, b.term, b.k - a.k});
}
inline QeFormula qe_leq(const Offset& a, const Offset& b) {
  return QeFormula::atom({a.term, b.term, b.k - a.k + 1});
}
inline QeFormula qe_equal(const Offset& a, const Offset& b) {
  return QeFormula::conj(qe_leq(a, b), qe_leq(b, a));
}

inline void require_unary(const Alphabet& sigma) {
  if (sigma.size() != 1) {
    throw Error(Errc::NonUnaryAlphabet, "quantifier elimination needs a one-letter alphabet");
  }
}

inline QeFormula from_formula(const Formula& phi) {
  auto var = [](const std::string& v, long k = 0) { return Offset{QfTerm::of(v), k}; };
  switch (phi.kind()) {
    case Kind::Letter:
    case Kind::True:
      return QeFormula::truth();
    case Kind::False:
      return QeFormula::falsity();
    case Kind::Less:
      return qe_less(var(phi.var()), var(phi.var2()));
    case Kind::Gt:
      return qe_less(var(phi.var2()), var(phi.var()));
    case Kind::Leq:
      return qe_leq(var(phi.var()), var(phi.var2()));
    case Kind::Geq:
      return qe_leq(var(phi.var2()), var(phi.var()));
    case Kind::Eq:
      return qe_equal(var(phi.var()), var(phi.var2()));
    case Kind::Neq:
      return QeFormula::neg(qe_equal(var(phi.var()), var(phi.var2())));
    case Kind::EqConst:
      return qe_equal(var(phi.var()), Offset{QfTerm::zero(), static_cast<long>(phi.constant())});
    case Kind::PlusOffset:
      return qe_equal(var(phi.var()), var(phi.var2(), static_cast<long>(phi.constant())));
    case Kind::MinusOffset:
      return qe_equal(var(phi.var2()), var(phi.var(), static_cast<long>(phi.constant())));
    case Kind::Succ:
      return qe_equal(var(phi.var2()), var(phi.var(), 1));
    case Kind::First:
      return qe_equal(var(phi.var()), Offset{QfTerm::zero(), 0});
    case Kind::Last:
      return qe_equal(var(phi.var()), Offset{QfTerm::last(), 0});
    case Kind::Not:
      return QeFormula::neg(from_formula(phi.operand()));
    case Kind::Or:
      return QeFormula::disj(from_formula(phi.left()), from_formula(phi.right()));
    case Kind::And:
      return QeFormula::conj(from_formula(phi.left()), from_formula(phi.right()));
    case Kind::Implies:
      return QeFormula::disj(QeFormula::neg(from_formula(phi.left())),
                             from_formula(phi.right()));
    case Kind::Iff: {
      QeFormula a = from_formula(phi.left());
      QeFormula b = from_formula(phi.right());
      return QeFormula::disj(QeFormula::conj(a, b),
                             QeFormula::conj(QeFormula::neg(a), QeFormula::neg(b)));
    }
    case Kind::ExistsFO:
      return QeFormula::exists(phi.var(), from_formula(phi.operand()));
    case Kind::ForallFO:
      return QeFormula::forall(phi.var(), from_formula(phi.operand()));
    default:
      throw Error(Errc::SecondOrderPresent,
                  "quantifier elimination applies to first-order formulas only");
  }
}

// Value of a term on a^n, or nullopt for an unassigned variable.
inline long term_value(const QfTerm& t, long n, const std::map<std::string, long>& nu) {
  switch (t.base) {
    case QfTerm::Base::Zero: return 0;
    case QfTerm::Base::Last: return n - 1;
    case QfTerm::Base::Var: {
      auto it = nu.find(t.var);
      if (it == nu.end()) throw Error(Errc::UnboundVariable, "unbound variable '" + t.var + "'");
      return it->second;
    }
  }
  return 0;
}

inline bool atom_holds(const QfAtom& a, long n, const std::map<std::string, long>& nu) {
  return term_value(a.lhs, n, nu) < term_value(a.rhs, n, nu) + a.c;
}

// Constant atoms compare a base with itself (except variables, which the
// elimination keeps as written unless they are being eliminated).
inline std::optional<bool> constant_value(const QfAtom& a) {
  if (a.lhs == a.rhs && a.lhs.base != QfTerm::Base::Var) return a.c > 0;
  return std::nullopt;
}

inline QfFormula make_atom(QfAtom a) {
  if (auto v = constant_value(a)) return *v ? QfFormula::truth() : QfFormula::falsity();
  return QfFormula::atom(std::move(a));
}

// not (u < v + c)  iff  v < u + (1 - c)
inline QfAtom flip(const QfAtom& a) { return {a.rhs, a.lhs, 1 - a.c, a.synthetic}; }

inline QfFormula negate(const QfFormula& f) {
  switch (f.kind()) {
    case QfFormula::Kind::True: return QfFormula::falsity();
    case QfFormula::Kind::False: return QfFormula::truth();
    case QfFormula::Kind::Atom: return make_atom(flip(f.atom()));
    case QfFormula::Kind::And:
    case QfFormula::Kind::Or: {
      std::vector<QfFormula> xs;
      for (const auto& c : f.children()) xs.push_back(negate(c));
      return f.kind() == QfFormula::Kind::And ? QfFormula::disj(std::move(xs))
                                              : QfFormula::conj(std::move(xs));
    }
  }
  return f;
}

using Conjunct = std::vector<QfAtom>;

inline std::vector<Conjunct> dnf(const QfFormula& f) {
  switch (f.kind()) {
    case QfFormula::Kind::True: return {Conjunct{}};
    case QfFormula::Kind::False: return {};
    case QfFormula::Kind::Atom: return {Conjunct{f.atom()}};
    case QfFormula::Kind::Or: {
      std::vector<Conjunct> out;
      for (const auto& c : f.children()) {
        auto d = dnf(c);
        out.insert(out.end(), d.begin(), d.end());
      }
      return out;
    }
    case QfFormula::Kind::And: {
      std::vector<Conjunct> out{Conjunct{}};
      for (const auto& c : f.children()) {
        auto d = dnf(c);
        std::vector<Conjunct> next;
        for (const auto& left : out) {
          for (const auto& right : d) {
            Conjunct both = left;
            both.insert(both.end(), right.begin(), right.end());
            next.push_back(std::move(both));
          }
        }
        out = std::move(next);
      }
      return out;
    }
  }
  return {};
}

// Holds on every a^n with n >= 1 for any placement of the variables.
inline bool implied_by_domain(const QfAtom& a) {
  using B = QfTerm::Base;
  if (a.c < 1) return false;
  return (a.lhs.base == B::Zero && a.rhs.base == B::Var) ||
         (a.lhs.base == B::Var && a.rhs.base == B::Last) ||
         (a.lhs.base == B::Zero && a.rhs.base == B::Last);
}

struct Bound {
  QfTerm term;
  long k;
  bool synthetic;
};

// ex1 x. D for a conjunction D: x must lie strictly between every lower
// and every upper bound, where 0 <= x <= last contributes the implicit
// bounds -1 < x and x < last + 1. Returns nullopt when D is unsatisfiable.
inline std::optional<Conjunct> eliminate_conjunct(const std::string& x, const Conjunct& d) {
  std::vector<Bound> lower, upper;
  Conjunct rest;
  for (const QfAtom& a : d) {
    bool l = a.lhs.base == QfTerm::Base::Var && a.lhs.var == x;
    bool r = a.rhs.base == QfTerm::Base::Var && a.rhs.var == x;
    if (l && r) {
      if (a.c <= 0) return std::nullopt;
    } else if (r) {
      lower.push_back({a.lhs, -a.c, a.synthetic});  // lhs - c < x
    } else if (l) {
      upper.push_back({a.rhs, a.c, a.synthetic});  // x < rhs + c
    } else {
      rest.push_back(a);
    }
  }
  lower.push_back({QfTerm::zero(), -1, true});
  upper.push_back({QfTerm::last(), 1, true});

  Conjunct out;
  auto add = [&](QfAtom a) -> bool {
    if (auto v = constant_value(a)) return *v;
    for (QfAtom& b : out) {
      if (b == a) {
        b.synthetic = b.synthetic && a.synthetic;
        return true;
      }
    }
    out.push_back(std::move(a));
    return true;
  };
  for (const Bound& lo : lower) {
    for (const Bound& hi : upper) {
      // lo + 1 < hi
      QfAtom a{lo.term, hi.term, hi.k - lo.k - 1, lo.synthetic || hi.synthetic};
      if (!add(std::move(a))) return std::nullopt;
    }
  }
  for (const QfAtom& a : rest) {
    if (!add(a)) return std::nullopt;
  }
  // Drop synthetic atoms that are implied by the domain or by a tighter
  // atom over the same terms.
  Conjunct pruned;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const QfAtom& a = out[i];
    if (a.synthetic) {
      if (implied_by_domain(a)) continue;
      bool subsumed = false;
      for (std::size_t j = 0; j < out.size() && !subsumed; ++j) {
        subsumed = j != i && out[j].same_bases(a) && out[j].c < a.c;
      }
      if (subsumed) continue;
    }
    pruned.push_back(a);
  }
  return pruned;
}

inline QfFormula eliminate(const std::string& x, const QfFormula& body) {
  std::vector<QfFormula> disjuncts;
  for (const Conjunct& d : dnf(body)) {
    auto e = eliminate_conjunct(x, d);
    if (!e) continue;
    std::vector<QfFormula> atoms;
    for (auto& a : *e) atoms.push_back(QfFormula::atom(std::move(a)));
    QfFormula c = QfFormula::conj(std::move(atoms));
    if (std::find(disjuncts.begin(), disjuncts.end(), c) == disjuncts.end()) {
      disjuncts.push_back(std::move(c));
    }
  }
  return QfFormula::disj(std::move(disjuncts));
}

inline QfFormula qe(const QeFormula& f) {
  switch (f.kind()) {
    case QeFormula::Kind::True: return QfFormula::truth();
    case QeFormula::Kind::False: return QfFormula::falsity();
    case QeFormula::Kind::Atom: return make_atom(f.atom());
    case QeFormula::Kind::Not: return negate(qe(f.operand()));
    case QeFormula::Kind::And: return QfFormula::conj({qe(f.left()), qe(f.right())});
    case QeFormula::Kind::Or: return QfFormula::disj({qe(f.left()), qe(f.right())});
    case QeFormula::Kind::Exists: return eliminate(f.var(), qe(f.operand()));
    case QeFormula::Kind::Forall:
      return negate(eliminate(f.var(), negate(qe(f.operand()))));
  }
  return QfFormula::truth();
}

inline void qe_free_vars(const QeFormula& f, std::vector<std::string>& bound,
                         std::set<std::string>& out) {
  switch (f.kind()) {
    case QeFormula::Kind::Atom:
      for (const QfTerm* t : {&f.atom().lhs, &f.atom().rhs}) {
        if (t->base == QfTerm::Base::Var && !contains_name(bound, t->var)) out.insert(t->var);
      }
      break;
    case QeFormula::Kind::Not:
      qe_free_vars(f.operand(), bound, out);
      break;
    case QeFormula::Kind::And:
    case QeFormula::Kind::Or:
      qe_free_vars(f.left(), bound, out);
      qe_free_vars(f.right(), bound, out);
      break;
    case QeFormula::Kind::Exists:
    case QeFormula::Kind::Forall:
      bound.push_back(f.var());
      qe_free_vars(f.operand(), bound, out);
      bound.pop_back();
      break;
    default:
      break;
  }
}

}  // namespace detail

inline std::set<std::string> free_vars(const QeFormula& f) {
  std::vector<std::string> bound;
  std::set<std::string> out;
  detail::qe_free_vars(f, bound, out);
  return out;
}

/// Truth of a first-order formula on a^n by direct search over positions.
inline bool qe_evaluate(long n, const QeFormula& f, std::map<std::string, long> nu = {}) {
  switch (f.kind()) {
    case QeFormula::Kind::True: return true;
    case QeFormula::Kind::False: return false;
    case QeFormula::Kind::Atom: return detail::atom_holds(f.atom(), n, nu);
    case QeFormula::Kind::Not: return !qe_evaluate(n, f.operand(), nu);
    case QeFormula::Kind::And: return qe_evaluate(n, f.left(), nu) && qe_evaluate(n, f.right(), nu);
    case QeFormula::Kind::Or: return qe_evaluate(n, f.left(), nu) || qe_evaluate(n, f.right(), nu);
    case QeFormula::Kind::Exists:
    case QeFormula::Kind::Forall: {
      bool exists = f.kind() == QeFormula::Kind::Exists;
      for (long p = 0; p < n; ++p) {
        nu[f.var()] = p;
        if (qe_evaluate(n, f.operand(), nu) == exists) return exists;
      }
      return !exists;
    }
  }
  return false;
}

/// Truth of a QF-MFO formula on a^n with last = n - 1.
inline bool qf_evaluate(long n, const QfFormula& f, const std::map<std::string, long>& nu = {}) {
  switch (f.kind()) {
    case QfFormula::Kind::True: return true;
    case QfFormula::Kind::False: return false;
    case QfFormula::Kind::Atom: return detail::atom_holds(f.atom(), n, nu);
    case QfFormula::Kind::And:
      return std::all_of(f.children().begin(), f.children().end(),
                         [&](const QfFormula& c) { return qf_evaluate(n, c, nu); });
    case QfFormula::Kind::Or:
      return std::any_of(f.children().begin(), f.children().end(),
                         [&](const QfFormula& c) { return qf_evaluate(n, c, nu); });
  }
  return false;
}

/// Eliminates every quantifier. The result is equivalent to f on all a^n
/// with n >= 1, or n >= 0 in IncludeEpsilon mode.
inline QfFormula to_qfmfo(const QeFormula& f, EpsilonMode mode = EpsilonMode::ExcludeEpsilon) {
  QfFormula out = detail::qe(f);
  if (mode == EpsilonMode::IncludeEpsilon && free_vars(f).empty()) {
    bool want = qe_evaluate(0, f);
    if (qf_evaluate(0, out) != want) {
      out = want ? QfFormula::disj({out, QfFormula::atom(k_gt_last(0))})
                 : QfFormula::conj({out, QfFormula::atom(k_lt_last(-1))});
    }
  }
  return out;
}

inline QeFormula to_qe_formula(const Formula& phi, const Alphabet& sigma) {
  detail::require_unary(sigma);
  check_well_formed(phi, sigma);
  return detail::from_formula(phi);
}

inline QfFormula to_qfmfo(const Formula& phi, const Alphabet& sigma,
                          EpsilonMode mode = EpsilonMode::ExcludeEpsilon) {
  return to_qfmfo(to_qe_formula(phi, sigma), mode);
}

// Complement of a sentence, by the four rewrite rules
//   neg(k < last) = last < k | (k-1 < last & last < k+1)
//   neg(k > last) = k < last | (k-1 < last & last < k+1)
// and De Morgan for & and |.
inline QfFormula neg_qf(const QfFormula& f) {
  auto point = [](long k) {
    return QfFormula::conj({QfFormula::atom(k_lt_last(k - 1)), QfFormula::atom(k_gt_last(k + 1))});
  };
  switch (f.kind()) {
    case QfFormula::Kind::True: return QfFormula::falsity();
    case QfFormula::Kind::False: return QfFormula::truth();
    case QfFormula::Kind::Atom: {
      const QfAtom& a = f.atom();
      using B = QfTerm::Base;
      if (a.lhs.base == B::Zero && a.rhs.base == B::Last) {
        long k = -a.c;
        return QfFormula::disj({QfFormula::atom(k_gt_last(k)), point(k)});
      }
      if (a.lhs.base == B::Last && a.rhs.base == B::Zero) {
        long k = a.c;
        return QfFormula::disj({QfFormula::atom(k_lt_last(k)), point(k)});
      }
      throw Error(Errc::OpenFormula, "neg applies to sentences only");
    }
    case QfFormula::Kind::And:
    case QfFormula::Kind::Or: {
      std::vector<QfFormula> xs;
      for (const auto& c : f.children()) xs.push_back(neg_qf(c));
      return f.kind() == QfFormula::Kind::And ? QfFormula::disj(std::move(xs))
                                              : QfFormula::conj(std::move(xs));
    }
  }
  return f;
}

/// A set of word lengths that is finite, or co-finite with a finite
/// complement.
struct UnaryLanguageClass {
  enum class Tag : std::uint8_t { Finite, CoFinite };
  Tag tag = Tag::Finite;
  // The members when Finite, the non-members when CoFinite.
  std::set<long> lengths;

  static UnaryLanguageClass finite(std::set<long> xs) { return {Tag::Finite, std::move(xs)}; }
  static UnaryLanguageClass cofinite(std::set<long> xs) { return {Tag::CoFinite, std::move(xs)}; }

  bool is_finite() const { return tag == Tag::Finite; }
  bool contains(long n) const { return lengths.count(n) ? is_finite() : !is_finite(); }

  UnaryLanguageClass complement() const {
    return {is_finite() ? Tag::CoFinite : Tag::Finite, lengths};
  }

  // Restricts the universe to nonempty words.
  UnaryLanguageClass without_empty() const {
    UnaryLanguageClass out = *this;
    out.lengths.erase(0);
    return out;
  }

  friend bool operator==(const UnaryLanguageClass&, const UnaryLanguageClass&) = default;
};

namespace detail {

inline std::set<long> set_union(const std::set<long>& a, const std::set<long>& b) {
  std::set<long> out = a;
  out.insert(b.begin(), b.end());
  return out;
}
inline std::set<long> set_intersection(const std::set<long>& a, const std::set<long>& b) {
  std::set<long> out;
  for (long x : a) {
    if (b.count(x)) out.insert(x);
  }
  return out;
}
inline std::set<long> set_difference(const std::set<long>& a, const std::set<long>& b) {
  std::set<long> out;
  for (long x : a) {
    if (!b.count(x)) out.insert(x);
  }
  return out;
}

inline UnaryLanguageClass lang_or(const UnaryLanguageClass& a, const UnaryLanguageClass& b) {
  using C = UnaryLanguageClass;
  if (a.is_finite() && b.is_finite()) return C::finite(set_union(a.lengths, b.lengths));
  if (!a.is_finite() && !b.is_finite()) return C::cofinite(set_intersection(a.lengths, b.lengths));
  const C& fin = a.is_finite() ? a : b;
  const C& co = a.is_finite() ? b : a;
  return C::cofinite(set_difference(co.lengths, fin.lengths));
}

inline UnaryLanguageClass lang_and(const UnaryLanguageClass& a, const UnaryLanguageClass& b) {
  return lang_or(a.complement(), b.complement()).complement();
}

inline std::set<long> range(long lo, long hi) {
  std::set<long> out;
  for (long n = std::max(0L, lo); n <= hi; ++n) out.insert(n);
  return out;
}

}  // namespace detail

/// Language of a QF-MFO sentence as a set of lengths n >= 0 of a^n.
inline UnaryLanguageClass classify(const QfFormula& f) {
  using C = UnaryLanguageClass;
  switch (f.kind()) {
    case QfFormula::Kind::True: return C::cofinite({});
    case QfFormula::Kind::False: return C::finite({});
    case QfFormula::Kind::Atom: {
      const QfAtom& a = f.atom();
      using B = QfTerm::Base;
      if (auto v = detail::constant_value(a)) return *v ? C::cofinite({}) : C::finite({});
      if (a.lhs.base == B::Zero && a.rhs.base == B::Last) {
        // 0 < n - 1 + c  iff  n >= 2 - c
        return C::cofinite(detail::range(0, 1 - a.c));
      }
      if (a.lhs.base == B::Last && a.rhs.base == B::Zero) {
        // n - 1 < c  iff  n <= c
        return C::finite(detail::range(0, a.c));
      }
      throw Error(Errc::OpenFormula, "classify applies to sentences only");
    }
    case QfFormula::Kind::And:
    case QfFormula::Kind::Or: {
      bool is_and = f.kind() == QfFormula::Kind::And;
      C acc = is_and ? C::cofinite({}) : C::finite({});
      for (const auto& c : f.children()) {
        acc = is_and ? detail::lang_and(acc, classify(c)) : detail::lang_or(acc, classify(c));
      }
      return acc;
    }
  }
  return C::finite({});
}

/// Sentence defining exactly the given lengths: one disjunct
/// (k-2 < last & last < k) per length k, since last = k - 1 on a^k.
inline QfFormula finite_sentence(const std::set<long>& lengths) {
  std::vector<QfFormula> xs;
  for (long k : lengths) {
    xs.push_back(QfFormula::conj({QfFormula::atom(k_lt_last(k - 2)), QfFormula::atom(k_gt_last(k))}));
  }
  return QfFormula::disj(std::move(xs));
}

namespace detail {

inline std::string term_name(const QfTerm& t) {
  switch (t.base) {
    case QfTerm::Base::Zero: return "0";
    case QfTerm::Base::Last: return "last";
    case QfTerm::Base::Var: return t.var;
  }
  return {};
}

inline std::string plus(const std::string& base, long k) {
  if (k == 0) return base;
  return base + (k > 0 ? "+" : "-") + std::to_string(k > 0 ? k : -k);
}

inline std::string render_atom(const QfAtom& a) {
  using B = QfTerm::Base;
  const std::string u = term_name(a.lhs), v = term_name(a.rhs);
  if (auto c = constant_value(a)) return *c ? "true" : "false";
  if (a.lhs.base == B::Zero) return v + ">" + std::to_string(-a.c);  // v > -c
  if (a.rhs.base == B::Zero) return u + "<" + std::to_string(a.c);   // u < c
  if (a.c >= 0) return u + "<" + plus(v, a.c);
  if (a.lhs.base == B::Var && a.rhs.base == B::Last) return plus(u, -a.c) + "<" + v;
  return v + ">" + plus(u, -a.c);
}

inline void render_qf(const QfFormula& f, std::string& out) {
  switch (f.kind()) {
    case QfFormula::Kind::True: out += "true"; return;
    case QfFormula::Kind::False: out += "false"; return;
    case QfFormula::Kind::Atom: out += render_atom(f.atom()); return;
    case QfFormula::Kind::And:
    case QfFormula::Kind::Or: {
      const char* sep = f.kind() == QfFormula::Kind::And ? " & " : " | ";
      bool first = true;
      for (const auto& c : f.children()) {
        if (!first) out += sep;
        first = false;
        bool wrap = c.kind() == QfFormula::Kind::And || c.kind() == QfFormula::Kind::Or;
        if (wrap) out += '(';
        render_qf(c, out);
        if (wrap) out += ')';
      }
      return;
    }
  }
}

}  // namespace detail

/// Surface QF-MFO text, e.g. "z<y+6 & y<y+3 & z<y+2" or "last>1".
/// Sentence atoms are written with last on the left.
inline std::string render_qf(const QfFormula& f) {
  std::string out;
  detail::render_qf(f, out);
  return out;
}

inline std::string render_class(const UnaryLanguageClass& c) {
  std::string out = "{";
  bool first = true;
  for (long n : c.lengths) {
    if (!first) out += ", ";
    first = false;
    out += std::to_string(n);
  }
  return out + "}";
}

namespace detail {

// Parser for the elimination input: first-order syntax whose comparisons
// may use offset terms, constants and last, e.g.
//   ex1 x. (x < y + 3 & z < x + 4)     ex1 x. (!ex1 y. x < y) & x < 4
class QeParser {
 public:
  QeParser(std::string_view text, const Alphabet& sigma) : tokens_(lex(text)), sigma_(sigma) {}

  QeFormula parse() {
    QeFormula f = parse_iff();
    if (peek().kind != Tok::End) fail(peek(), "unexpected trailing input");
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& take() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    take();
    return true;
  }
  void expect(Tok k, const char* what) {
    if (peek().kind != k) fail(peek(), std::string("expected ") + what);
    take();
  }
  [[noreturn]] static void fail(const Token& t, const std::string& message) {
    std::string near = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(t.line, t.column, message + " near " + near);
  }
  bool is_ident(const char* s, std::size_t ahead = 0) const {
    return peek(ahead).kind == Tok::Ident && peek(ahead).text == s;
  }

  std::string variable() {
    const Token& t = peek();
    if (t.kind != Tok::Ident || is_keyword(t.text)) fail(t, "expected variable");
    if (std::isupper(static_cast<unsigned char>(t.text[0]))) {
      throw Error(Errc::SecondOrderPresent, "set variable '" + t.text + "' in first-order input");
    }
    if (t.text[0] == kReservedPrefix) {
      throw Error(Errc::ReservedName, "identifier '" + t.text + "' uses the reserved prefix");
    }
    return take().text;
  }

  QeFormula parse_iff() {
    QeFormula lhs = parse_implies();
    while (accept(Tok::DArrow)) {
      QeFormula rhs = parse_implies();
      lhs = QeFormula::disj(QeFormula::conj(lhs, rhs),
                            QeFormula::conj(QeFormula::neg(lhs), QeFormula::neg(rhs)));
    }
    return lhs;
  }
  QeFormula parse_implies() {
    QeFormula lhs = parse_or();
    if (accept(Tok::Arrow)) return QeFormula::disj(QeFormula::neg(lhs), parse_implies());
    return lhs;
  }
  QeFormula parse_or() {
    QeFormula lhs = parse_and();
    while (accept(Tok::Bar)) lhs = QeFormula::disj(lhs, parse_and());
    return lhs;
  }
  QeFormula parse_and() {
    QeFormula lhs = parse_unary();
    while (accept(Tok::Amp)) lhs = QeFormula::conj(lhs, parse_unary());
    return lhs;
  }
  QeFormula parse_unary() {
    if (accept(Tok::Bang)) return QeFormula::neg(parse_unary());
    if (is_ident("ex2") || is_ident("all2")) {
      throw Error(Errc::SecondOrderPresent, "second-order quantifier in first-order input");
    }
    if (is_ident("ex1") || is_ident("all1")) {
      bool exists = take().text == "ex1";
      std::string x = variable();
      expect(Tok::Dot, "'.'");
      QeFormula body = parse_iff();
      return exists ? QeFormula::exists(x, body) : QeFormula::forall(x, body);
    }
    return parse_primary();
  }

  Offset term() {
    Offset t;
    const Token& tok = peek();
    if (tok.kind == Tok::Number) {
      t = Offset{QfTerm::zero(), std::stol(take().text)};
    } else if (is_ident("last")) {
      take();
      t = Offset{QfTerm::last(), 0};
    } else if (accept(Tok::Minus)) {
      const Token& num = peek();
      if (num.kind != Tok::Number) fail(num, "expected number");
      t = Offset{QfTerm::zero(), -std::stol(take().text)};
    } else {
      t = Offset{QfTerm::of(variable()), 0};
    }
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      bool minus = take().kind == Tok::Minus;
      const Token& num = peek();
      if (num.kind != Tok::Number) fail(num, "expected number");
      long k = std::stol(take().text);
      t.k += minus ? -k : k;
    }
    return t;
  }

  QeFormula parse_primary() {
    if (accept(Tok::LParen)) {
      QeFormula f = parse_iff();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (is_ident("true")) {
      take();
      return QeFormula::truth();
    }
    if (is_ident("false")) {
      take();
      return QeFormula::falsity();
    }
    if (peek().kind == Tok::Ident && peek(1).kind == Tok::LParen) {
      std::string head = take().text;
      take();
      std::string x = variable();
      Offset vx{QfTerm::of(x), 0};
      QeFormula out = QeFormula::truth();
      if (head == "succ") {
        expect(Tok::Comma, "','");
        std::string y = variable();
        out = qe_equal(Offset{QfTerm::of(y), 0}, Offset{QfTerm::of(x), 1});
      } else if (head == "first") {
        out = qe_equal(vx, Offset{QfTerm::zero(), 0});
      } else if (head == "last") {
        out = qe_equal(vx, Offset{QfTerm::last(), 0});
      } else if (!sigma_.contains(head)) {
        if (std::isupper(static_cast<unsigned char>(head[0]))) {
          throw Error(Errc::SecondOrderPresent, "set variable '" + head + "' in first-order input");
        }
        throw Error(Errc::UnknownLetter, "letter '" + head + "' not in alphabet");
      }
      expect(Tok::RParen, "')'");
      return out;
    }
    Offset a = term();
    if (is_ident("in") || is_ident("sub")) {
      throw Error(Errc::SecondOrderPresent, "set membership in first-order input");
    }
    const Token op = take();
    Offset b = term();
    switch (op.kind) {
      case Tok::Lt: return qe_less(a, b);
      case Tok::Gt: return qe_less(b, a);
      case Tok::Le: return qe_leq(a, b);
      case Tok::Ge: return qe_leq(b, a);
      case Tok::EqTok: return qe_equal(a, b);
      case Tok::Ne: return QeFormula::neg(qe_equal(a, b));
      default: fail(op, "expected comparison");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  const Alphabet& sigma_;
};

}  // namespace detail

/// Parses elimination input over a one-letter alphabet. Accepts the
/// first-order formula syntax plus terms t + k, t - k, constants and last
/// in comparisons.
inline QeFormula parse_qe_formula(std::string_view text, const Alphabet& sigma) {
  detail::require_unary(sigma);
  return detail::QeParser(text, sigma).parse();
}

}  // namespace msol

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

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "msol/alphabet.hpp"
#include "msol/automata.hpp"
#include "msol/automaton_io.hpp"
#include "msol/compiler.hpp"
#include "msol/error.hpp"
#include "msol/formula.hpp"
#include "msol/formula_io.hpp"
#include "msol/fsa2mso.hpp"
#include "msol/interpreter.hpp"
#include "msol/qe_unary.hpp"

namespace msol::cli {

enum Exit : int { kYes = 0, kNo = 1, kError = 2 };

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::FormatError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::FormatError, "cannot write '" + path + "'");
  out << text;
}

// An existing file path is read; anything else is taken literally.
inline std::string load(const std::string& arg) {
  std::error_code ec;
  if (!arg.empty() && std::filesystem::is_regular_file(arg, ec)) return read_file(arg);
  return arg;
}

inline bool looks_like_json(const std::string& text) {
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) return c == '{';
  }
  return false;
}

struct Language {
  Alphabet sigma;
  std::optional<Formula> formula;
  Dfa dfa;
};

inline Alphabet require_alphabet(const std::string& alphabet) {
  if (alphabet.empty()) throw Error(Errc::InvalidAlphabet, "--alphabet is required");
  return Alphabet::parse(alphabet);
}

// A formula (compiled over the declared alphabet) or an automaton in the
// exchange format, which carries its own alphabet.
inline Language language(const std::string& arg, const std::string& alphabet, EpsilonMode mode) {
  std::string text = load(arg);
  if (looks_like_json(text)) {
    Nfa a = parse_automaton(text);
    if (!alphabet.empty() && !(Alphabet::parse(alphabet) == a.alphabet())) {
      throw Error(Errc::InvalidAlphabet, "automaton alphabet differs from --alphabet");
    }
    if (a.tracks() != 0) throw Error(Errc::TrackMismatch, "expected an automaton without tracks");
    Dfa d = minimize(a);
    if (mode == EpsilonMode::ExcludeEpsilon) d = minimize(set_empty_word(d, false));
    return Language{a.alphabet(), std::nullopt, d};
  }
  Alphabet sigma = require_alphabet(alphabet);
  Formula phi = parse_formula(text, sigma);
  if (!is_sentence(phi)) {
    throw Error(Errc::UnboundVariable, "expected a sentence, found free variables");
  }
  return Language{sigma, phi, compile(phi, sigma, mode)};
}

inline std::string show(const TrackWord& w, const Alphabet& sigma) {
  return w.empty() ? "ε" : to_string(w, sigma);
}

inline Word parse_word_arg(const std::string& text, const Alphabet& sigma) {
  if (text == "ε" || text == "eps") return {};
  return sigma.parse_word(text);
}

}  // namespace detail

/// Runs one command line. Verdicts and results go to out, diagnostics to
/// err. Exit status: 0 affirmative, 1 negative, 2 usage or input error.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monadic logic on strings: formulas, automata and decision procedures", "msol"};
  app.require_subcommand(1);

  std::string alphabet, formula, f1, f2, word, in, out_path, dot;
  bool epsilon = false;
  std::size_t max_len = 5;

  auto with_alphabet = [&](CLI::App* c) {
    c->add_option("--alphabet", alphabet, "Comma separated letters, e.g. a,b,c");
  };
  auto with_epsilon = [&](CLI::App* c) {
    c->add_flag("--epsilon", epsilon, "Include the empty word in the universe");
  };
  auto with_formula = [&](CLI::App* c) {
    c->add_option("--formula", formula, "Formula text, or a file holding a formula or automaton")
        ->required();
  };

  auto* compile_cmd = app.add_subcommand("compile", "Compile a formula to a minimal DFA");
  with_alphabet(compile_cmd);
  with_formula(compile_cmd);
  with_epsilon(compile_cmd);
  compile_cmd->add_option("--out", out_path, "Write the automaton (JSON) to this file");
  compile_cmd->add_option("--dot", dot, "Write a Graphviz rendering to this file");

  auto* check_cmd = app.add_subcommand("check", "Decide whether a word satisfies a sentence");
  with_alphabet(check_cmd);
  with_formula(check_cmd);
  with_epsilon(check_cmd);
  check_cmd->add_option("--word", word, "The word; 'eps' for the empty word")->required();

  auto* equiv_cmd = app.add_subcommand("equiv", "Decide language equivalence");
  auto* contains_cmd = app.add_subcommand("contains", "Decide L(f1) subset of L(f2)");
  for (auto* c : {equiv_cmd, contains_cmd}) {
    with_alphabet(c);
    with_epsilon(c);
    c->add_option("--f1", f1, "First formula or automaton")->required();
    c->add_option("--f2", f2, "Second formula or automaton")->required();
  }

  auto* empty_cmd = app.add_subcommand("empty", "Decide emptiness");
  with_alphabet(empty_cmd);
  with_formula(empty_cmd);
  with_epsilon(empty_cmd);

  auto* enum_cmd = app.add_subcommand("enumerate", "List accepted words in shortlex order");
  with_alphabet(enum_cmd);
  with_formula(enum_cmd);
  with_epsilon(enum_cmd);
  enum_cmd->add_option("--max-len", max_len, "Longest word to list");

  auto* fsa_cmd = app.add_subcommand("fsa2mso", "Encode an automaton as an MSO sentence");
  fsa_cmd->add_option("--in", in, "Automaton file (JSON)")->required();
  fsa_cmd->add_option("--out", out_path, "Write the sentence to this file");
  with_epsilon(fsa_cmd);

  auto* qe_cmd = app.add_subcommand("qe", "Eliminate quantifiers over a one-letter alphabet");
  auto* classify_cmd = app.add_subcommand("classify", "Finite or co-finite length set of a sentence");
  for (auto* c : {qe_cmd, classify_cmd}) {
    with_alphabet(c);
    with_formula(c);
    with_epsilon(c);
  }

  std::vector<const char*> argv{"msol"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kYes;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kYes;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kError;
  }

  const EpsilonMode mode = epsilon ? EpsilonMode::IncludeEpsilon : EpsilonMode::ExcludeEpsilon;
  try {
    if (compile_cmd->parsed()) {
      Alphabet sigma = detail::require_alphabet(alphabet);
      CompiledFormula c = compile_open(parse_formula(detail::load(formula), sigma), sigma, mode);
      std::string json = render_automaton(c.dfa);
      if (!dot.empty()) detail::write_file(dot, render_dot(c.dfa));
      if (out_path.empty()) {
        out << json;
      } else {
        detail::write_file(out_path, json);
        out << "states " << c.dfa.num_states() << "\n";
      }
      return kYes;
    }

    if (check_cmd->parsed()) {
      auto lang = detail::language(formula, alphabet, mode);
      Word w = detail::parse_word_arg(word, lang.sigma);
      if (w.empty() && mode == EpsilonMode::ExcludeEpsilon) {
        throw Error(Errc::EmptyWordRejected, "the empty word needs --epsilon");
      }
      bool by_automaton = accepts(lang.dfa, w);
      if (lang.formula) {
        bool by_semantics = evaluate(w, *lang.formula, lang.sigma, Assignment{}, mode);
        if (by_semantics != by_automaton) {
          err << "internal error: interpreter says " << (by_semantics ? "ACCEPT" : "REJECT")
              << ", automaton says " << (by_automaton ? "ACCEPT" : "REJECT") << "\n";
          return kError;
        }
      }
      out << (by_automaton ? "ACCEPT" : "REJECT") << "\n";
      return by_automaton ? kYes : kNo;
    }

    if (equiv_cmd->parsed() || contains_cmd->parsed()) {
      auto a = detail::language(f1, alphabet, mode);
      auto b = detail::language(f2, alphabet, mode);
      if (!(a.sigma == b.sigma)) throw Error(Errc::TrackMismatch, "operands use different alphabets");
      bool equiv = equiv_cmd->parsed();
      Verdict v = equiv ? equivalent(a.dfa, b.dfa) : contains(a.dfa, b.dfa);
      if (v.holds) {
        out << (equiv ? "EQUIVALENT" : "CONTAINED") << "\n";
        return kYes;
      }
      out << (equiv ? "NOT_EQUIVALENT" : "NOT_CONTAINED") << "\n";
      const TrackWord& w = *v.witness;
      std::string side = accepts(a.dfa, w) ? "f1" : "f2";
      out << "counterexample " << detail::show(w, a.sigma);
      if (equiv) out << " (accepted by " << side << " only)";
      out << "\n";
      return kNo;
    }

    if (empty_cmd->parsed()) {
      auto lang = detail::language(formula, alphabet, mode);
      Verdict v = is_empty(lang.dfa);
      if (v.holds) {
        out << "EMPTY\n";
        return kYes;
      }
      out << "NONEMPTY\nwitness " << detail::show(*v.witness, lang.sigma) << "\n";
      return kNo;
    }

    if (enum_cmd->parsed()) {
      auto lang = detail::language(formula, alphabet, mode);
      for (const auto& w : enumerate(lang.dfa, max_len)) {
        out << detail::show(w, lang.sigma) << "\n";
      }
      return kYes;
    }

    if (fsa_cmd->parsed()) {
      Nfa a = parse_automaton(detail::read_file(in));
      std::string text = render_formula(fsa_to_mso(a, mode)) + "\n";
      if (out_path.empty()) {
        out << text;
      } else {
        detail::write_file(out_path, text);
      }
      return kYes;
    }

    if (qe_cmd->parsed() || classify_cmd->parsed()) {
      Alphabet sigma = detail::require_alphabet(alphabet);
      QfFormula f = to_qfmfo(parse_qe_formula(detail::load(formula), sigma), mode);
      if (qe_cmd->parsed()) {
        out << render_qf(f) << "\n";
        return kYes;
      }
      UnaryLanguageClass c = classify(f);
      if (mode == EpsilonMode::ExcludeEpsilon) c = c.without_empty();
      if (c.is_finite()) {
        out << "FINITE\nlengths " << render_class(c) << "\n";
      } else {
        out << "COFINITE\ncomplement " << render_class(c) << "\n";
      }
      return kYes;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace msol::cli

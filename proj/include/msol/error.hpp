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

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace msol {

enum class Errc {
  InvalidAlphabet,
  UnknownLetter,
  VariableKindMismatch,
  ReservedName,
  SyntaxError,
  FormatError,
  DanglingState,
  UnboundVariable,
  InvalidAssignment,
  EmptyWordRejected,
  WordTooLong,
  TrackMismatch,
  BadTrack,
  TooManyTracks,
  UnmappedVariable,
  MultipleInitial,
  NoInitialState,
  EpsilonTransition,
  NonUnaryAlphabet,
  SecondOrderPresent,
  OpenFormula,
};

constexpr std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::InvalidAlphabet: return "InvalidAlphabet";
    case Errc::UnknownLetter: return "UnknownLetter";
    case Errc::VariableKindMismatch: return "VariableKindMismatch";
    case Errc::ReservedName: return "ReservedName";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::FormatError: return "FormatError";
    case Errc::DanglingState: return "DanglingState";
    case Errc::UnboundVariable: return "UnboundVariable";
    case Errc::InvalidAssignment: return "InvalidAssignment";
    case Errc::EmptyWordRejected: return "EmptyWordRejected";
    case Errc::WordTooLong: return "WordTooLong";
    case Errc::TrackMismatch: return "TrackMismatch";
    case Errc::BadTrack: return "BadTrack";
    case Errc::TooManyTracks: return "TooManyTracks";
    case Errc::UnmappedVariable: return "UnmappedVariable";
    case Errc::MultipleInitial: return "MultipleInitial";
    case Errc::NoInitialState: return "NoInitialState";
    case Errc::EpsilonTransition: return "EpsilonTransition";
    case Errc::NonUnaryAlphabet: return "NonUnaryAlphabet";
    case Errc::SecondOrderPresent: return "SecondOrderPresent";
    case Errc::OpenFormula: return "OpenFormula";
  }
  return "Unknown";
}

// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

// Parse failure with a 1-based source position.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t line, std::size_t column, const std::string& message)
      : Error(Errc::SyntaxError, std::to_string(line) + ":" +
                                     std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace msol

// include/lexfree/errors.h

// Copyright 2026  The lexfree authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABILITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef LEXFREE_ERRORS_H_
#define LEXFREE_ERRORS_H_

#include <stdexcept>
#include <string>

namespace lexfree {

// Base type for every error this library raises on bad input or bad state.
// Programming errors (violated internal invariants) use assert instead.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

// A character with no letter token in the active token set.
class UnknownCharacterError : public Error {
 public:
  using Error::Error;
};

// encode_word called on an empty string.
class EmptyWordError : public Error {
 public:
  using Error::Error;
};

// A repetition token with no preceding letter in its word span.
class DanglingRepetitionError : public Error {
 public:
  using Error::Error;
};

// Malformed text input. Carries a 1-based line number when known.
class ParseError : public Error {
 public:
  using Error::Error;
  ParseError(const std::string &what, long line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  long line() const { return line_; }

 private:
  long line_ = 0;
};

// Model header declares one n-gram count, body contains another.
class OrderMismatchError : public Error {
 public:
  using Error::Error;
};

// Character-level LM queried with a token outside its closed vocabulary.
class UnknownTokenError : public Error {
 public:
  using Error::Error;
};

// Decoder configuration inconsistent with the resources handed to it.
class ModeMismatchError : public Error {
 public:
  using Error::Error;
};

// Every hypothesis died; with a finite threshold this is reachable.
class EmptyBeamError : public Error {
 public:
  using Error::Error;
};

// Exhaustive reference computation refused: state space over the guard.
class TooLargeError : public Error {
 public:
  using Error::Error;
};

// Parallel sequences that must agree in length do not.
class LengthMismatchError : public Error {
 public:
  using Error::Error;
};

// An aggregate over a corpus with nothing to aggregate.
class EmptyCorpusError : public Error {
 public:
  using Error::Error;
};

}  // namespace lexfree

#endif  // LEXFREE_ERRORS_H_

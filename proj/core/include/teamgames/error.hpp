// Copyright 2026 The teamgames Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TEAMGAMES_ERROR_HPP
#define TEAMGAMES_ERROR_HPP

#include <stdexcept>
#include <string>

namespace teamgames {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A game, evaluation or experiment description violates one of its invariants.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An argument is outside the domain of the operation it was passed to.
class InputError : public Error {
 public:
  using Error::Error;
};

/// The operation needs a smooth evaluation function (logistic or identity).
class UnsupportedEvaluation : public Error {
 public:
  using Error::Error;
};

/// The solver was asked to handle a task type it does not cover.
class WrongSolver : public Error {
 public:
  using Error::Error;
};

/// An aggregate value lies outside the domain of a replacement or share map.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// The game is outside the parameter regime where the solver is valid.
class UnsupportedRegime : public Error {
 public:
  using Error::Error;
};

/// The fixed-point scan found no sign change. `trace()` holds the scan.
class NoEquilibriumFound : public Error {
 public:
  NoEquilibriumFound(const std::string& what, std::string trace)
      : Error(what), trace_(std::move(trace)) {}

  const std::string& trace() const noexcept { return trace_; }

 private:
  std::string trace_;
};

/// Input data is degenerate for the requested statistic.
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

}  // namespace teamgames

#endif  // TEAMGAMES_ERROR_HPP

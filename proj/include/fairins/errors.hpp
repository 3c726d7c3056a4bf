// Copyright 2026 The fairins Authors
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

#ifndef FAIRINS_ERRORS_HPP
#define FAIRINS_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace fairins {

/// Base of every error raised by the library. `kind()` is a stable name used
/// in machine-readable reports.
class Error : public std::runtime_error {
 public:
  Error(std::string_view kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define FAIRINS_DEFINE_ERROR(Name)                          \
  class Name : public Error {                               \
   public:                                                  \
    explicit Name(const std::string& what) : Error(#Name, what) {} \
  }

FAIRINS_DEFINE_ERROR(NonPositiveProbability);
FAIRINS_DEFINE_ERROR(ProbabilityMassMismatch);
FAIRINS_DEFINE_ERROR(SpaceMismatch);
FAIRINS_DEFINE_ERROR(DomainError);
FAIRINS_DEFINE_ERROR(InvalidDistortion);
FAIRINS_DEFINE_ERROR(InvalidMeasure);
FAIRINS_DEFINE_ERROR(ExhaustionLimitExceeded);
FAIRINS_DEFINE_ERROR(NegativeLiability);
FAIRINS_DEFINE_ERROR(NotASubgradient);
FAIRINS_DEFINE_ERROR(DegeneratePortfolio);
FAIRINS_DEFINE_ERROR(DegenerateState);
FAIRINS_DEFINE_ERROR(NotAdmissibleStatePayoff);
FAIRINS_DEFINE_ERROR(InconsistentRepresentation);
FAIRINS_DEFINE_ERROR(DimensionMismatch);
FAIRINS_DEFINE_ERROR(InputParseError);

#undef FAIRINS_DEFINE_ERROR

/// Input validation failure; `field()` names the offending input field.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error("ValidationError", field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace fairins

#endif  // FAIRINS_ERRORS_HPP

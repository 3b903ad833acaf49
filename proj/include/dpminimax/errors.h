// Copyright 2026 The dpminimax Authors.
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

#ifndef DPMINIMAX_ERRORS_H_
#define DPMINIMAX_ERRORS_H_

#include <optional>
#include "absl/strings/string_view.h"

#include "absl/status/status.h"

namespace dpminimax {

// Library-specific error kinds. Each maps onto a canonical absl code and is
// attached to the status as a payload so callers can match on it.
enum class ErrorKind {
  kUnsupportedPair,
  kDegenerateMarginal,
  kTooLarge,
  kFormMismatch,
  kShapeMismatch,
  kDomainError,
  kLengthMismatch,
  kKindConstraintMismatch,
  kArityMismatch,
  kBudgetExhausted,
  kOutOfSpace,
  kInsufficientBudget,
  kNonFinite,
  kDegenerateInput,
  kRegimeError,
};

absl::string_view ErrorKindName(ErrorKind kind);

absl::Status MakeError(ErrorKind kind, absl::string_view detail);

// Returns the kind attached by MakeError, if any.
std::optional<ErrorKind> GetErrorKind(const absl::Status& status);

inline bool HasErrorKind(const absl::Status& status, ErrorKind kind) {
  return GetErrorKind(status) == kind;
}

}  // namespace dpminimax

#endif  // DPMINIMAX_ERRORS_H_

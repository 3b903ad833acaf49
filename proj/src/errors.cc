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

#include "dpminimax/errors.h"

#include <array>
#include <string>
#include <utility>

#include "absl/strings/cord.h"
#include "absl/strings/str_cat.h"

namespace dpminimax {
namespace {

constexpr char kPayloadUrl[] = "dpminimax/error_kind";

struct KindInfo {
  ErrorKind kind;
  absl::string_view name;
  absl::StatusCode code;
};

constexpr std::array<KindInfo, 15> kKinds = {{
    {ErrorKind::kUnsupportedPair, "UnsupportedPair",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kDegenerateMarginal, "DegenerateMarginal",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kTooLarge, "TooLarge", absl::StatusCode::kResourceExhausted},
    {ErrorKind::kFormMismatch, "FormMismatch",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kShapeMismatch, "ShapeMismatch",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kDomainError, "DomainError", absl::StatusCode::kOutOfRange},
    {ErrorKind::kLengthMismatch, "LengthMismatch",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kKindConstraintMismatch, "KindConstraintMismatch",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kArityMismatch, "ArityMismatch",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kBudgetExhausted, "BudgetExhausted",
     absl::StatusCode::kResourceExhausted},
    {ErrorKind::kOutOfSpace, "OutOfSpace", absl::StatusCode::kOutOfRange},
    {ErrorKind::kInsufficientBudget, "InsufficientBudget",
     absl::StatusCode::kFailedPrecondition},
    {ErrorKind::kNonFinite, "NonFinite", absl::StatusCode::kInternal},
    {ErrorKind::kDegenerateInput, "DegenerateInput",
     absl::StatusCode::kInvalidArgument},
    {ErrorKind::kRegimeError, "RegimeError",
     absl::StatusCode::kFailedPrecondition},
}};

const KindInfo& Info(ErrorKind kind) {
  for (const KindInfo& info : kKinds) {
    if (info.kind == kind) return info;
  }
  return kKinds[0];
}

}  // namespace

absl::string_view ErrorKindName(ErrorKind kind) { return Info(kind).name; }

absl::Status MakeError(ErrorKind kind, absl::string_view detail) {
  const KindInfo& info = Info(kind);
  absl::Status status(info.code, absl::StrCat(info.name, ": ", detail));
  status.SetPayload(kPayloadUrl, absl::Cord(info.name));
  return status;
}

std::optional<ErrorKind> GetErrorKind(const absl::Status& status) {
  auto payload = status.GetPayload(kPayloadUrl);
  if (!payload.has_value()) return std::nullopt;
  std::string name(*payload);
  for (const KindInfo& info : kKinds) {
    if (info.name == name) return info.kind;
  }
  return std::nullopt;
}

}  // namespace dpminimax

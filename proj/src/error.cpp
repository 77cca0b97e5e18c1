// Copyright 2026 The ams-clt Authors
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

#include "ams/error.hpp"

namespace ams {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::Range: return "RangeError";
    case ErrorKind::IterationCapExceeded: return "IterationCapExceeded";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::Io: return "IoError";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::Internal: return "InternalError";
  }
  return "Unknown";
}

std::optional<ErrorKind> error_kind_from_string(std::string_view name) noexcept {
  for (int i = 0; i <= static_cast<int>(ErrorKind::Internal); ++i) {
    auto kind = static_cast<ErrorKind>(i);
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace ams

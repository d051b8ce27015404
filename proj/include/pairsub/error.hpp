// Copyright 2026 The pairsub Authors.
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

#ifndef PAIRSUB_ERROR_HPP_
#define PAIRSUB_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pairsub {

enum class ErrorCode {
  kBudgetExceeded,
  kUnknownElement,
  kDuplicateElement,
  kCardinalityTooLarge,
  kInstanceTooLarge,
  kMalformedSpec,
  kInvalidAlpha,
  kInvalidCurvature,
  kTraceMismatch,
  kParseError,
  kDuplicateId,
  kNegativeDemand,
  kEmptyInput,
  kGridMismatch,
  kInvalidArgument,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every library failure is reported through this type; `code()` identifies
// the failure class named in the public contracts.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pairsub

#endif  // PAIRSUB_ERROR_HPP_

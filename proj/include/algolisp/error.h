// Copyright 2026 The AlgoLisp Toolkit Authors
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

#ifndef ALGOLISP_ERROR_H_
#define ALGOLISP_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace algolisp {

// Every failure the library reports carries one of these codes. The CLI maps
// them onto the JSON error object it prints on stderr.
enum class ErrorCode {
  // dsl
  kUnbalancedParens,
  kUnknownToken,
  kArityMismatch,
  kCollision,
  // interp
  kUnboundIdentifier,
  kTypeError,
  kDivisionByZero,
  kStepLimitExceeded,
  kDepthLimitExceeded,
  kIndexError,
  kUnknownOp,
  // judge
  kEmptyTestSuite,
  // corpus
  kParseError,
  kEmptyCorpus,
  kIoError,
  // attacks
  kNoFreshName,
  kNoRemovableToken,
  kNoSynonymAvailable,
  kNoRuleMatch,
  kTooFewVariables,
  kInsufficientEligibleInstances,
  kValidationFailed,
  // metrics
  kEmptyOriginal,
  kProviderUnavailable,
  kDimensionMismatch,
  kZeroVector,
  kOutOfRange,
  // augment
  kNoEditableTokens,
  kEmptyTranslation,
  kDegenerateFill,
  // attnkernel
  kNonFiniteInput,
  kNonFiniteGradient,
  // generic
  kInvalidArgument,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace algolisp

#endif  // ALGOLISP_ERROR_H_

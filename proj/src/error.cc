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

#include "algolisp/error.h"

namespace algolisp {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnbalancedParens: return "UnbalancedParens";
    case ErrorCode::kUnknownToken: return "UnknownToken";
    case ErrorCode::kArityMismatch: return "ArityMismatch";
    case ErrorCode::kCollision: return "CollisionError";
    case ErrorCode::kUnboundIdentifier: return "UnboundIdentifier";
    case ErrorCode::kTypeError: return "TypeError";
    case ErrorCode::kDivisionByZero: return "DivisionByZero";
    case ErrorCode::kStepLimitExceeded: return "StepLimitExceeded";
    case ErrorCode::kDepthLimitExceeded: return "DepthLimitExceeded";
    case ErrorCode::kIndexError: return "IndexError";
    case ErrorCode::kUnknownOp: return "UnknownOp";
    case ErrorCode::kEmptyTestSuite: return "EmptyTestSuite";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kNoFreshName: return "NoFreshName";
    case ErrorCode::kNoRemovableToken: return "NoRemovableToken";
    case ErrorCode::kNoSynonymAvailable: return "NoSynonymAvailable";
    case ErrorCode::kNoRuleMatch: return "NoRuleMatch";
    case ErrorCode::kTooFewVariables: return "TooFewVariables";
    case ErrorCode::kInsufficientEligibleInstances:
      return "InsufficientEligibleInstances";
    case ErrorCode::kValidationFailed: return "ValidationFailed";
    case ErrorCode::kEmptyOriginal: return "EmptyOriginal";
    case ErrorCode::kProviderUnavailable: return "ProviderUnavailable";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kZeroVector: return "ZeroVector";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kNoEditableTokens: return "NoEditableTokens";
    case ErrorCode::kEmptyTranslation: return "EmptyTranslation";
    case ErrorCode::kDegenerateFill: return "DegenerateFill";
    case ErrorCode::kNonFiniteInput: return "NonFiniteInput";
    case ErrorCode::kNonFiniteGradient: return "NonFiniteGradient";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace algolisp

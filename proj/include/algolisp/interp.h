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

#ifndef ALGOLISP_INTERP_H_
#define ALGOLISP_INTERP_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "algolisp/ast.h"
#include "algolisp/error.h"
#include "algolisp/registry.h"
#include "algolisp/value.h"

namespace algolisp {

struct Limits {
  std::int64_t max_steps = 1'000'000;  // one step per node visit
  int max_depth = 10'000;              // nesting of node evaluations
};

// A lexical scope. The root scope holds program arguments; each closure call
// pushes a frame binding arg1/arg2 and the closure itself (for `self`).
struct Env {
  std::map<std::string, Value, std::less<>> bindings;
  std::shared_ptr<const Env> parent;
  std::shared_ptr<const FunctionValue> self;

  // Innermost-first; nullptr if unbound.
  const Value* Lookup(std::string_view name) const;
};

struct Closure {
  int arity = 1;
  std::shared_ptr<const ProgramAst> body;
  std::shared_ptr<const Env> captured;
};

struct BuiltinRef {
  const OpSpec* op = nullptr;
};

// `bound` fills parameter `position` of `inner`; the result takes the rest.
struct Partial {
  std::shared_ptr<const FunctionValue> inner;
  Value bound;
  int position = 0;
};

// x -> outer(inner(x))
struct Composition {
  std::shared_ptr<const FunctionValue> outer;
  std::shared_ptr<const FunctionValue> inner;
};

struct FunctionValue {
  std::variant<Closure, BuiltinRef, Partial, Composition> impl;
  int arity = 1;
};

// Evaluates `ast` with program arguments `env`. Throws Error with
// kUnboundIdentifier, kTypeError, kDivisionByZero, kStepLimitExceeded,
// kDepthLimitExceeded, kIndexError or kUnknownOp.
Value Eval(const ProgramAst& ast, const Env& env, const Limits& limits = {},
           const OpRegistry& registry = OpRegistry::Builtin());

struct IoPair {
  std::map<std::string, Value, std::less<>> input;
  Value output;

  friend bool operator==(const IoPair&, const IoPair&) = default;
};

struct TestOutcome {
  bool passed = false;
  std::optional<ErrorCode> error;
  std::string detail;  // error message or "expected X, got Y"
};

// Runs every test; evaluation errors are captured per test.
std::vector<TestOutcome> RunTests(
    const ProgramAst& ast, const std::vector<IoPair>& tests,
    const Limits& limits = {},
    const OpRegistry& registry = OpRegistry::Builtin());

}  // namespace algolisp

#endif  // ALGOLISP_INTERP_H_

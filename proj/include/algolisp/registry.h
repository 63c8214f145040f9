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

#ifndef ALGOLISP_REGISTRY_H_
#define ALGOLISP_REGISTRY_H_

#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "algolisp/value.h"

namespace algolisp {

// Lets a builtin call back into the evaluator to apply a function value
// (filter, map, reduce, invoke...).
class Invoker {
 public:
  virtual ~Invoker() = default;
  virtual Value Call(const Value& fn, std::span<const Value> args) = 0;
};

using BuiltinFn = std::function<Value(std::span<const Value>, Invoker&)>;

inline constexpr int kVariadic = -1;

struct OpSpec {
  enum class Form {
    kStrict,    // arguments evaluated left to right, then `fn` applied
    kSpecial,   // evaluator handles the node itself (if, lambda1, self...)
    kConstant,  // a nullary name bound to `constant` (true, false)
  };

  std::string name;
  int min_arity = 0;
  int max_arity = 0;  // kVariadic for no upper bound
  Form form = Form::kStrict;
  BuiltinFn fn;
  Value constant;

  bool AcceptsArity(int n) const {
    return n >= min_arity && (max_arity == kVariadic || n <= max_arity);
  }
};

// The set of reserved DSL symbols and their semantics. The parser consults it
// to tell operators from identifiers and to check arity; the interpreter
// consults it to evaluate applications.
//
// The registry is open: datasets that use operators beyond the builtin set
// can register them before loading.
class OpRegistry {
 public:
  // The process-wide default registry with every builtin installed.
  static const OpRegistry& Builtin();

  // An empty registry followed by InstallBuiltins() equals Builtin().
  OpRegistry() = default;
  void InstallBuiltins();

  // Replaces any existing entry with the same name.
  void Register(OpSpec spec);

  const OpSpec* Find(std::string_view name) const;
  bool IsReserved(std::string_view name) const { return Find(name) != nullptr; }
  std::size_t size() const { return ops_.size(); }

 private:
  std::map<std::string, OpSpec, std::less<>> ops_;
};

}  // namespace algolisp

#endif  // ALGOLISP_REGISTRY_H_

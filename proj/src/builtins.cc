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

// Builtin operator semantics. Conventions that the dataset leaves open:
//  - '/' truncates toward zero, '%' takes the sign of the dividend.
//  - slice clamps both indices into [0, len] and yields [start, end).
//  - digits yields decimal digits least significant first; digits of 0 is [0].
//  - (partial0 v f) is x -> f(v, x); (partial1 v f) is x -> f(x, v).
//  - (reduce xs f) folds from the first element and fails on an empty list.

#include <algorithm>
#include <cstdlib>
#include <limits>

#include "algolisp/error.h"
#include "algolisp/interp.h"
#include "algolisp/registry.h"

namespace algolisp {
namespace {

using Args = std::span<const Value>;

[[noreturn]] void Overflow(const char* op) {
  throw Error(ErrorCode::kTypeError, std::string(op) + ": integer overflow");
}

std::int64_t CheckedAdd(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) Overflow("+");
  return r;
}

std::int64_t CheckedSub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) Overflow("-");
  return r;
}

std::int64_t CheckedMul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) Overflow("*");
  return r;
}

std::int64_t CheckedDiv(std::int64_t a, std::int64_t b, const char* op) {
  if (b == 0) {
    throw Error(ErrorCode::kDivisionByZero, std::string(op) + " by zero");
  }
  if (a == std::numeric_limits<std::int64_t>::min() && b == -1) Overflow(op);
  return op[0] == '/' ? a / b : a % b;
}

std::shared_ptr<const FunctionValue> MakeFunction(
    std::variant<Closure, BuiltinRef, Partial, Composition> impl, int arity) {
  auto fn = std::make_shared<FunctionValue>();
  fn->impl = std::move(impl);
  fn->arity = arity;
  return fn;
}

bool IsPrime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d <= n / d; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::int64_t ClampIndex(std::int64_t i, std::size_t len) {
  return std::clamp<std::int64_t>(i, 0, static_cast<std::int64_t>(len));
}

OpSpec Strict(std::string name, int arity, BuiltinFn fn) {
  OpSpec s;
  s.name = std::move(name);
  s.min_arity = arity;
  s.max_arity = arity;
  s.form = OpSpec::Form::kStrict;
  s.fn = std::move(fn);
  return s;
}

OpSpec Special(std::string name, int min_arity, int max_arity) {
  OpSpec s;
  s.name = std::move(name);
  s.min_arity = min_arity;
  s.max_arity = max_arity;
  s.form = OpSpec::Form::kSpecial;
  return s;
}

OpSpec Constant(std::string name, Value v) {
  OpSpec s;
  s.name = std::move(name);
  s.form = OpSpec::Form::kConstant;
  s.constant = std::move(v);
  return s;
}

template <typename F>
OpSpec IntBinary(std::string name, F f) {
  return Strict(name, 2, [f, name](Args a, Invoker&) {
    return Value::Int(f(a[0].AsInt(name.c_str()), a[1].AsInt(name.c_str())));
  });
}

template <typename F>
OpSpec Compare(std::string name, F f) {
  return Strict(name, 2, [f](Args a, Invoker&) { return Value::Bool(f(a[0], a[1])); });
}

}  // namespace

void OpRegistry::InstallBuiltins() {
  // Arithmetic.
  Register(IntBinary("+", CheckedAdd));
  Register(IntBinary("-", CheckedSub));
  Register(IntBinary("*", CheckedMul));
  Register(IntBinary("/", [](std::int64_t a, std::int64_t b) {
    return CheckedDiv(a, b, "/");
  }));
  Register(IntBinary("%", [](std::int64_t a, std::int64_t b) {
    return CheckedDiv(a, b, "%");
  }));
  Register(Strict("min", 2, [](Args a, Invoker&) {
    return Value::Less(a[1], a[0]) ? a[1] : a[0];
  }));
  Register(Strict("max", 2, [](Args a, Invoker&) {
    return Value::Less(a[0], a[1]) ? a[1] : a[0];
  }));
  Register(Strict("square", 1, [](Args a, Invoker&) {
    const std::int64_t x = a[0].AsInt("square");
    return Value::Int(CheckedMul(x, x));
  }));
  Register(Strict("sqrt", 1, [](Args a, Invoker&) {
    const std::int64_t x = a[0].AsInt("sqrt");
    if (x < 0) throw Error(ErrorCode::kTypeError, "sqrt of negative number");
    std::int64_t r = 0;
    while ((r + 1) <= x / (r + 1)) ++r;
    return Value::Int(r);
  }));

  // Comparison and logic.
  Register(Compare("==", [](const Value& x, const Value& y) { return x == y; }));
  Register(Compare("!=", [](const Value& x, const Value& y) { return x != y; }));
  Register(Compare("<", [](const Value& x, const Value& y) { return Value::Less(x, y); }));
  Register(Compare(">", [](const Value& x, const Value& y) { return Value::Less(y, x); }));
  Register(Compare("<=", [](const Value& x, const Value& y) { return !Value::Less(y, x); }));
  Register(Compare(">=", [](const Value& x, const Value& y) { return !Value::Less(x, y); }));
  Register(Strict("not", 1, [](Args a, Invoker&) {
    return Value::Bool(!a[0].AsBool("not"));
  }));
  Register(Special("and", 2, kVariadic));
  Register(Special("or", 2, kVariadic));
  Register(Special("if", 3, 3));
  Register(Constant("true", Value::Bool(true)));
  Register(Constant("false", Value::Bool(false)));
  Register(Strict("is_prime", 1, [](Args a, Invoker&) {
    return Value::Bool(IsPrime(a[0].AsInt("is_prime")));
  }));

  // Lists and strings.
  Register(Strict("len", 1, [](Args a, Invoker&) {
    if (a[0].is_string()) {
      return Value::Int(static_cast<std::int64_t>(a[0].AsString().size()));
    }
    return Value::Int(static_cast<std::int64_t>(a[0].AsList("len").size()));
  }));
  Register(Strict("strlen", 1, [](Args a, Invoker&) {
    return Value::Int(static_cast<std::int64_t>(a[0].AsString("strlen").size()));
  }));
  Register(Strict("str_concat", 2, [](Args a, Invoker&) {
    return Value::Str(a[0].AsString("str_concat") + a[1].AsString("str_concat"));
  }));
  Register(Strict("slice", 3, [](Args a, Invoker&) {
    const std::int64_t s = a[1].AsInt("slice");
    const std::int64_t e = a[2].AsInt("slice");
    if (a[0].is_string()) {
      const std::string& str = a[0].AsString();
      const auto lo = ClampIndex(s, str.size());
      const auto hi = std::max(lo, ClampIndex(e, str.size()));
      return Value::Str(str.substr(static_cast<std::size_t>(lo),
                                   static_cast<std::size_t>(hi - lo)));
    }
    const ValueList& xs = a[0].AsList("slice");
    const auto lo = ClampIndex(s, xs.size());
    const auto hi = std::max(lo, ClampIndex(e, xs.size()));
    return Value::List(ValueList(xs.begin() + lo, xs.begin() + hi));
  }));
  Register(Strict("reverse", 1, [](Args a, Invoker&) {
    if (a[0].is_string()) {
      std::string s = a[0].AsString();
      std::reverse(s.begin(), s.end());
      return Value::Str(std::move(s));
    }
    const ValueList& xs = a[0].AsList("reverse");
    return Value::List(ValueList(xs.rbegin(), xs.rend()));
  }));
  Register(Strict("head", 1, [](Args a, Invoker&) {
    const ValueList& xs = a[0].AsList("head");
    if (xs.empty()) throw Error(ErrorCode::kIndexError, "head of empty list");
    return xs.front();
  }));
  Register(Strict("last", 1, [](Args a, Invoker&) {
    const ValueList& xs = a[0].AsList("last");
    if (xs.empty()) throw Error(ErrorCode::kIndexError, "last of empty list");
    return xs.back();
  }));
  Register(Strict("deref", 2, [](Args a, Invoker&) {
    const ValueList& xs = a[0].AsList("deref");
    const std::int64_t i = a[1].AsInt("deref");
    if (i < 0 || i >= static_cast<std::int64_t>(xs.size())) {
      throw Error(ErrorCode::kIndexError,
                  "deref index " + std::to_string(i) + " out of range");
    }
    return xs[static_cast<std::size_t>(i)];
  }));
  Register(Strict("sort", 1, [](Args a, Invoker&) {
    ValueList xs = a[0].AsList("sort");
    std::stable_sort(xs.begin(), xs.end(), &Value::Less);
    return Value::List(std::move(xs));
  }));
  Register(Strict("is_sorted", 1, [](Args a, Invoker&) {
    const ValueList& xs = a[0].AsList("is_sorted");
    return Value::Bool(std::is_sorted(xs.begin(), xs.end(), &Value::Less));
  }));
  Register(Strict("range", 2, [](Args a, Invoker&) {
    const std::int64_t lo = a[0].AsInt("range");
    const std::int64_t hi = a[1].AsInt("range");
    if (hi - lo > 1'000'000) {
      throw Error(ErrorCode::kIndexError, "range too large");
    }
    ValueList xs;
    for (std::int64_t i = lo; i < hi; ++i) xs.push_back(Value::Int(i));
    return Value::List(std::move(xs));
  }));
  Register(Strict("digits", 1, [](Args a, Invoker&) {
    std::int64_t x = a[0].AsInt("digits");
    ValueList ds;
    // Negate digit-wise so INT64_MIN needs no special case.
    do {
      ds.push_back(Value::Int(std::abs(x % 10)));
      x /= 10;
    } while (x != 0);
    return Value::List(std::move(ds));
  }));

  // Higher-order.
  Register(Strict("filter", 2, [](Args a, Invoker& inv) {
    ValueList out;
    for (const Value& x : a[0].AsList("filter")) {
      if (inv.Call(a[1], std::span<const Value>(&x, 1)).AsBool("filter")) {
        out.push_back(x);
      }
    }
    return Value::List(std::move(out));
  }));
  Register(Strict("map", 2, [](Args a, Invoker& inv) {
    ValueList out;
    const ValueList& xs = a[0].AsList("map");
    out.reserve(xs.size());
    for (const Value& x : xs) {
      out.push_back(inv.Call(a[1], std::span<const Value>(&x, 1)));
    }
    return Value::List(std::move(out));
  }));
  {
    OpSpec reduce = Strict("reduce", 3, [](Args a, Invoker& inv) {
      const ValueList& xs = a[0].AsList("reduce");
      const Value& fn = a.size() == 3 ? a[2] : a[1];
      std::size_t i = 0;
      Value acc;
      if (a.size() == 3) {
        acc = a[1];
      } else {
        if (xs.empty()) {
          throw Error(ErrorCode::kIndexError, "reduce of empty list without seed");
        }
        acc = xs[0];
        i = 1;
      }
      for (; i < xs.size(); ++i) {
        const Value pair[2] = {acc, xs[i]};
        acc = inv.Call(fn, pair);
      }
      return acc;
    });
    reduce.min_arity = 2;
    Register(std::move(reduce));
  }
  Register(Strict("invoke1", 2, [](Args a, Invoker& inv) {
    return inv.Call(a[0], a.subspan(1, 1));
  }));
  Register(Strict("invoke2", 3, [](Args a, Invoker& inv) {
    return inv.Call(a[0], a.subspan(1, 2));
  }));
  for (int position : {0, 1}) {
    const std::string name = "partial" + std::to_string(position);
    Register(Strict(name, 2, [position, name](Args a, Invoker&) {
      const auto& inner = a[1].AsFunction(name.c_str());
      if (inner->arity <= position) {
        throw Error(ErrorCode::kTypeError,
                    name + " needs a function of arity > " +
                        std::to_string(position));
      }
      return Value::Function(
          MakeFunction(Partial{inner, a[0], position}, inner->arity - 1));
    }));
  }
  Register(Strict("combine", 2, [](Args a, Invoker&) {
    const auto& outer = a[0].AsFunction("combine");
    const auto& inner = a[1].AsFunction("combine");
    if (outer->arity != 1) {
      throw Error(ErrorCode::kTypeError, "combine needs a unary outer function");
    }
    return Value::Function(MakeFunction(Composition{outer, inner}, inner->arity));
  }));
  Register(Special("lambda1", 1, 1));
  Register(Special("lambda2", 1, 1));
  Register(Special("self", 1, 2));
  Register(Special("arg1", 0, 0));
  Register(Special("arg2", 0, 0));
}

void OpRegistry::Register(OpSpec spec) {
  std::string name = spec.name;
  ops_.insert_or_assign(std::move(name), std::move(spec));
}

const OpSpec* OpRegistry::Find(std::string_view name) const {
  auto it = ops_.find(name);
  return it == ops_.end() ? nullptr : &it->second;
}

const OpRegistry& OpRegistry::Builtin() {
  static const OpRegistry* registry = [] {
    auto* r = new OpRegistry();
    r->InstallBuiltins();
    return r;
  }();
  return *registry;
}

}  // namespace algolisp

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

#include "algolisp/interp.h"

#include <utility>

namespace algolisp {

const Value* Env::Lookup(std::string_view name) const {
  for (const Env* e = this; e != nullptr; e = e->parent.get()) {
    auto it = e->bindings.find(name);
    if (it != e->bindings.end()) return &it->second;
  }
  return nullptr;
}

namespace {

class Evaluator : public Invoker {
 public:
  Evaluator(std::shared_ptr<const ProgramAst> root, const Limits& limits,
            const OpRegistry& registry)
      : root_(std::move(root)), limits_(limits), registry_(registry) {}

  Value Run(std::shared_ptr<const Env> env) { return EvalNode(*root_, env); }

  Value Call(const Value& fn, std::span<const Value> args) override {
    return Apply(fn.AsFunction("call"), args);
  }

 private:
  // Tracks evaluation nesting for the depth limit.
  class DepthGuard {
   public:
    DepthGuard(int& depth, int limit) : depth_(depth) {
      if (++depth_ > limit) {
        --depth_;
        throw Error(ErrorCode::kDepthLimitExceeded,
                    "evaluation depth exceeded " + std::to_string(limit));
      }
    }
    ~DepthGuard() { --depth_; }
    DepthGuard(const DepthGuard&) = delete;
    DepthGuard& operator=(const DepthGuard&) = delete;

   private:
    int& depth_;
  };

  void Step() {
    if (++steps_ > limits_.max_steps) {
      throw Error(ErrorCode::kStepLimitExceeded,
                  "step limit " + std::to_string(limits_.max_steps) +
                      " exceeded");
    }
  }

  Value EvalNode(const ProgramAst& node, const std::shared_ptr<const Env>& env) {
    Step();
    DepthGuard guard(depth_, limits_.max_depth);
    switch (node.kind()) {
      case ProgramAst::Kind::kInt:
        return Value::Int(node.int_value());
      case ProgramAst::Kind::kString:
        return Value::Str(node.symbol());
      case ProgramAst::Kind::kIdentifier:
        return Resolve(node, *env);
      case ProgramAst::Kind::kApply:
        return EvalApply(node, env);
    }
    throw Error(ErrorCode::kTypeError, "corrupt node");
  }

  Value Resolve(const ProgramAst& node, const Env& env) {
    if (const Value* v = env.Lookup(node.symbol())) return *v;
    const OpSpec* spec = registry_.Find(node.symbol());
    if (spec == nullptr) {
      throw Error(ErrorCode::kUnboundIdentifier,
                  "unbound identifier '" + node.symbol() + "'");
    }
    switch (spec->form) {
      case OpSpec::Form::kConstant:
        return spec->constant;
      case OpSpec::Form::kStrict: {
        auto fn = std::make_shared<FunctionValue>();
        fn->impl = BuiltinRef{spec};
        fn->arity = spec->min_arity;
        return Value::Function(std::move(fn));
      }
      case OpSpec::Form::kSpecial:
        break;
    }
    if (node.symbol() == "arg1" || node.symbol() == "arg2") {
      throw Error(ErrorCode::kUnboundIdentifier,
                  "'" + node.symbol() + "' used outside a lambda of that arity");
    }
    throw Error(ErrorCode::kTypeError,
                "special form '" + node.symbol() + "' cannot be used as a value");
  }

  Value EvalApply(const ProgramAst& node, const std::shared_ptr<const Env>& env) {
    const OpSpec* spec = registry_.Find(node.symbol());
    if (spec == nullptr) {
      throw Error(ErrorCode::kUnknownOp,
                  "unregistered operator '" + node.symbol() + "'");
    }
    const auto& kids = node.children();
    if (!spec->AcceptsArity(static_cast<int>(kids.size()))) {
      throw Error(ErrorCode::kArityMismatch,
                  "'" + node.symbol() + "' applied to " +
                      std::to_string(kids.size()) + " argument(s)");
    }
    if (spec->form == OpSpec::Form::kSpecial) return EvalSpecial(node, env);
    if (spec->form == OpSpec::Form::kConstant) return spec->constant;

    std::vector<Value> args;
    args.reserve(kids.size());
    for (const auto& c : kids) args.push_back(EvalNode(c, env));
    return spec->fn(args, *this);
  }

  Value EvalSpecial(const ProgramAst& node,
                    const std::shared_ptr<const Env>& env) {
    const std::string& op = node.symbol();
    const auto& kids = node.children();
    if (op == "if") {
      const bool cond = EvalNode(kids[0], env).AsBool("if");
      return EvalNode(cond ? kids[1] : kids[2], env);
    }
    if (op == "and") {
      for (const auto& c : kids) {
        if (!EvalNode(c, env).AsBool("and")) return Value::Bool(false);
      }
      return Value::Bool(true);
    }
    if (op == "or") {
      for (const auto& c : kids) {
        if (EvalNode(c, env).AsBool("or")) return Value::Bool(true);
      }
      return Value::Bool(false);
    }
    if (op == "lambda1" || op == "lambda2") {
      auto fn = std::make_shared<FunctionValue>();
      const int arity = op == "lambda1" ? 1 : 2;
      // Aliasing constructor: the body shares ownership of the whole tree.
      fn->impl = Closure{arity, std::shared_ptr<const ProgramAst>(root_, &kids[0]),
                         env};
      fn->arity = arity;
      return Value::Function(std::move(fn));
    }
    if (op == "self") {
      const FunctionValue* self = nullptr;
      std::shared_ptr<const FunctionValue> owner;
      for (const Env* e = env.get(); e != nullptr; e = e->parent.get()) {
        if (e->self) {
          owner = e->self;
          self = owner.get();
          break;
        }
      }
      if (self == nullptr) {
        throw Error(ErrorCode::kUnboundIdentifier,
                    "'self' used outside a lambda");
      }
      std::vector<Value> args;
      args.reserve(kids.size());
      for (const auto& c : kids) args.push_back(EvalNode(c, env));
      return Apply(owner, args);
    }
    throw Error(ErrorCode::kTypeError,
                "special form '" + op + "' has no evaluation rule");
  }

  Value Apply(const std::shared_ptr<const FunctionValue>& fn,
              std::span<const Value> args) {
    if (static_cast<int>(args.size()) != fn->arity) {
      throw Error(ErrorCode::kTypeError,
                  "function of arity " + std::to_string(fn->arity) +
                      " called with " + std::to_string(args.size()) +
                      " argument(s)");
    }
    if (const auto* c = std::get_if<Closure>(&fn->impl)) {
      auto frame = std::make_shared<Env>();
      frame->bindings.emplace("arg1", args[0]);
      if (c->arity == 2) frame->bindings.emplace("arg2", args[1]);
      frame->parent = c->captured;
      frame->self = fn;
      return EvalNode(*c->body, frame);
    }
    if (const auto* b = std::get_if<BuiltinRef>(&fn->impl)) {
      Step();
      return b->op->fn(args, *this);
    }
    if (const auto* p = std::get_if<Partial>(&fn->impl)) {
      std::vector<Value> full;
      full.reserve(args.size() + 1);
      full.insert(full.end(), args.begin(), args.end());
      const auto at = static_cast<std::size_t>(p->position);
      full.insert(full.begin() + static_cast<std::ptrdiff_t>(at), p->bound);
      return Apply(p->inner, full);
    }
    const auto& comp = std::get<Composition>(fn->impl);
    const Value mid = Apply(comp.inner, args);
    return Apply(comp.outer, std::span<const Value>(&mid, 1));
  }

  std::shared_ptr<const ProgramAst> root_;
  const Limits& limits_;
  const OpRegistry& registry_;
  std::int64_t steps_ = 0;
  int depth_ = 0;
};

void CheckLimits(const Limits& limits) {
  if (limits.max_steps <= 0 || limits.max_depth <= 0) {
    throw Error(ErrorCode::kInvalidArgument, "limits must be positive");
  }
}

}  // namespace

Value Eval(const ProgramAst& ast, const Env& env, const Limits& limits,
           const OpRegistry& registry) {
  CheckLimits(limits);
  Evaluator evaluator(std::make_shared<const ProgramAst>(ast), limits, registry);
  return evaluator.Run(std::make_shared<const Env>(env));
}

std::vector<TestOutcome> RunTests(const ProgramAst& ast,
                                  const std::vector<IoPair>& tests,
                                  const Limits& limits,
                                  const OpRegistry& registry) {
  CheckLimits(limits);
  const auto root = std::make_shared<const ProgramAst>(ast);
  std::vector<TestOutcome> outcomes;
  outcomes.reserve(tests.size());
  for (const IoPair& test : tests) {
    TestOutcome outcome;
    try {
      auto env = std::make_shared<Env>();
      for (const auto& [name, value] : test.input) {
        env->bindings.emplace(name, value);
      }
      Evaluator evaluator(root, limits, registry);
      const Value got = evaluator.Run(std::move(env));
      outcome.passed = got == test.output;
      if (!outcome.passed) {
        outcome.detail =
            "expected " + test.output.ToString() + ", got " + got.ToString();
      }
    } catch (const Error& e) {
      outcome.error = e.code();
      outcome.detail = e.what();
    }
    outcomes.push_back(std::move(outcome));
  }
  return outcomes;
}

}  // namespace algolisp

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

#ifndef ALGOLISP_VALUE_H_
#define ALGOLISP_VALUE_H_

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace algolisp {

struct FunctionValue;  // defined in interp.h
class Value;

using ValueList = std::vector<Value>;

// A runtime value of the DSL. Lists and functions are immutable and shared,
// so copying a Value is cheap regardless of its size.
class Value {
 public:
  enum class Kind { kInt, kBool, kString, kList, kFunction };

  Value() : data_(std::int64_t{0}) {}

  static Value Int(std::int64_t v) { return Value(Data(v)); }
  static Value Bool(bool v) { return Value(Data(v)); }
  static Value Str(std::string v) { return Value(Data(std::move(v))); }
  static Value List(ValueList items) {
    return Value(
        Data(std::make_shared<const ValueList>(std::move(items))));
  }
  static Value Function(std::shared_ptr<const FunctionValue> fn) {
    return Value(Data(std::move(fn)));
  }

  Kind kind() const { return static_cast<Kind>(data_.index()); }
  bool is_int() const { return kind() == Kind::kInt; }
  bool is_bool() const { return kind() == Kind::kBool; }
  bool is_string() const { return kind() == Kind::kString; }
  bool is_list() const { return kind() == Kind::kList; }
  bool is_function() const { return kind() == Kind::kFunction; }

  // Accessors throw Error(kTypeError) on a kind mismatch; `context` names the
  // operation for the error message.
  std::int64_t AsInt(const char* context = "value") const;
  bool AsBool(const char* context = "value") const;
  const std::string& AsString(const char* context = "value") const;
  const ValueList& AsList(const char* context = "value") const;
  const std::shared_ptr<const FunctionValue>& AsFunction(
      const char* context = "value") const;

  // Deep structural equality. Functions compare by identity.
  friend bool operator==(const Value& a, const Value& b);
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }

  // Strict weak order over comparable values (ints, bools, strings, lists of
  // those). Used by sort/min/max.
  static bool Less(const Value& a, const Value& b);

  std::string ToString() const;

 private:
  using Data = std::variant<std::int64_t, bool, std::string,
                            std::shared_ptr<const ValueList>,
                            std::shared_ptr<const FunctionValue>>;
  explicit Value(Data d) : data_(std::move(d)) {}

  Data data_;
};

const char* KindName(Value::Kind kind);

// JSON mapping: integer <-> number, bool <-> bool, string <-> string,
// list <-> array. Functions are not representable.
nlohmann::ordered_json ValueToJson(const Value& v);
Value ValueFromJson(const nlohmann::ordered_json& j);

}  // namespace algolisp

#endif  // ALGOLISP_VALUE_H_

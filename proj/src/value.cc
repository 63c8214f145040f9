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

#include "algolisp/value.h"

#include <algorithm>
#include <sstream>

#include "algolisp/error.h"

namespace algolisp {
namespace {

[[noreturn]] void KindMismatch(const char* context, const char* wanted,
                               Value::Kind got) {
  throw Error(ErrorCode::kTypeError, std::string(context) + ": expected " +
                                         wanted + ", got " + KindName(got));
}

}  // namespace

const char* KindName(Value::Kind kind) {
  switch (kind) {
    case Value::Kind::kInt: return "int";
    case Value::Kind::kBool: return "bool";
    case Value::Kind::kString: return "string";
    case Value::Kind::kList: return "list";
    case Value::Kind::kFunction: return "function";
  }
  return "?";
}

std::int64_t Value::AsInt(const char* context) const {
  if (!is_int()) KindMismatch(context, "int", kind());
  return std::get<std::int64_t>(data_);
}

bool Value::AsBool(const char* context) const {
  if (!is_bool()) KindMismatch(context, "bool", kind());
  return std::get<bool>(data_);
}

const std::string& Value::AsString(const char* context) const {
  if (!is_string()) KindMismatch(context, "string", kind());
  return std::get<std::string>(data_);
}

const ValueList& Value::AsList(const char* context) const {
  if (!is_list()) KindMismatch(context, "list", kind());
  return *std::get<std::shared_ptr<const ValueList>>(data_);
}

const std::shared_ptr<const FunctionValue>& Value::AsFunction(
    const char* context) const {
  if (!is_function()) KindMismatch(context, "function", kind());
  return std::get<std::shared_ptr<const FunctionValue>>(data_);
}

bool operator==(const Value& a, const Value& b) {
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Value::Kind::kInt:
      return std::get<std::int64_t>(a.data_) == std::get<std::int64_t>(b.data_);
    case Value::Kind::kBool:
      return std::get<bool>(a.data_) == std::get<bool>(b.data_);
    case Value::Kind::kString:
      return std::get<std::string>(a.data_) == std::get<std::string>(b.data_);
    case Value::Kind::kList: {
      const auto& x = std::get<std::shared_ptr<const ValueList>>(a.data_);
      const auto& y = std::get<std::shared_ptr<const ValueList>>(b.data_);
      return x == y || *x == *y;
    }
    case Value::Kind::kFunction:
      return std::get<std::shared_ptr<const FunctionValue>>(a.data_) ==
             std::get<std::shared_ptr<const FunctionValue>>(b.data_);
  }
  return false;
}

bool Value::Less(const Value& a, const Value& b) {
  if (a.kind() != b.kind()) {
    throw Error(ErrorCode::kTypeError,
                std::string("cannot compare ") + KindName(a.kind()) + " with " +
                    KindName(b.kind()));
  }
  switch (a.kind()) {
    case Kind::kInt: return a.AsInt() < b.AsInt();
    case Kind::kBool: return !a.AsBool() && b.AsBool();
    case Kind::kString: return a.AsString() < b.AsString();
    case Kind::kList: {
      const auto& x = a.AsList();
      const auto& y = b.AsList();
      return std::lexicographical_compare(x.begin(), x.end(), y.begin(),
                                          y.end(), &Value::Less);
    }
    case Kind::kFunction:
      throw Error(ErrorCode::kTypeError, "cannot order functions");
  }
  return false;
}

std::string Value::ToString() const {
  switch (kind()) {
    case Kind::kInt: return std::to_string(AsInt());
    case Kind::kBool: return AsBool() ? "true" : "false";
    case Kind::kString: return "\"" + AsString() + "\"";
    case Kind::kList: {
      std::ostringstream out;
      out << "[";
      const auto& items = AsList();
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (i > 0) out << ", ";
        out << items[i].ToString();
      }
      out << "]";
      return out.str();
    }
    case Kind::kFunction: return "<function>";
  }
  return "?";
}

nlohmann::ordered_json ValueToJson(const Value& v) {
  switch (v.kind()) {
    case Value::Kind::kInt: return v.AsInt();
    case Value::Kind::kBool: return v.AsBool();
    case Value::Kind::kString: return v.AsString();
    case Value::Kind::kList: {
      auto arr = nlohmann::ordered_json::array();
      for (const Value& item : v.AsList()) arr.push_back(ValueToJson(item));
      return arr;
    }
    case Value::Kind::kFunction:
      throw Error(ErrorCode::kTypeError, "function values are not serializable");
  }
  return nullptr;
}

Value ValueFromJson(const nlohmann::ordered_json& j) {
  if (j.is_boolean()) return Value::Bool(j.get<bool>());
  if (j.is_number_integer()) return Value::Int(j.get<std::int64_t>());
  if (j.is_number_float()) {
    const double d = j.get<double>();
    const auto i = static_cast<std::int64_t>(d);
    if (static_cast<double>(i) != d) {
      throw Error(ErrorCode::kParseError,
                  "non-integral number " + j.dump() + " in value");
    }
    return Value::Int(i);
  }
  if (j.is_string()) return Value::Str(j.get<std::string>());
  if (j.is_array()) {
    ValueList items;
    items.reserve(j.size());
    for (const auto& e : j) items.push_back(ValueFromJson(e));
    return Value::List(std::move(items));
  }
  throw Error(ErrorCode::kParseError, "unsupported JSON value " + j.dump());
}

}  // namespace algolisp

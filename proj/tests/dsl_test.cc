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

#include <random>
#include <string>
#include <vector>

#include "algolisp/ast.h"
#include "algolisp/error.h"
#include "doctest.h"

namespace algolisp {
namespace {

constexpr const char* kHalfSlice = "( slice a ( / ( len a ) 2 ) ( len a ) )";
constexpr const char* kFactorial =
    "( invoke1 ( lambda1 ( if ( <= arg1 1 ) 1 ( * ( self ( - arg1 1 ) ) arg1 ) "
    ") ) a )";

ErrorCode ParseErrorCode(const std::string& text) {
  try {
    ParseProgram(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a parse error for: " << text);
  return ErrorCode::kInvalidArgument;
}

// Random well-formed trees over a small operator/identifier alphabet.
ProgramAst RandomTree(std::mt19937_64& rng, int depth) {
  static const std::vector<std::string> kIdents = {"a", "b", "c", "d", "e"};
  static const std::vector<std::pair<std::string, int>> kOps = {
      {"+", 2}, {"len", 1}, {"slice", 3}, {"reverse", 1}, {"if", 3}, {"max", 2}};
  std::uniform_int_distribution<int> pick(0, 9);
  if (depth == 0 || pick(rng) < 3) {
    if (pick(rng) < 5) {
      return ProgramAst::Identifier(kIdents[rng() % kIdents.size()]);
    }
    return ProgramAst::Int(static_cast<std::int64_t>(rng() % 21) - 10);
  }
  const auto& [op, arity] = kOps[rng() % kOps.size()];
  std::vector<ProgramAst> kids;
  for (int i = 0; i < arity; ++i) kids.push_back(RandomTree(rng, depth - 1));
  return ProgramAst::Apply(op, std::move(kids));
}

TEST_CASE("parse_program builds the documented trees") {
  const ProgramAst strlen_a = ParseProgram("( strlen a )");
  CHECK(strlen_a == ProgramAst::Apply("strlen", {ProgramAst::Identifier("a")}));

  const ProgramAst leaf = ParseProgram("a");
  CHECK(leaf.is_identifier());
  CHECK(leaf.symbol() == "a");

  const ProgramAst half_slice = ParseProgram(kHalfSlice);
  REQUIRE(half_slice.is_apply());
  CHECK(half_slice.symbol() == "slice");
  REQUIRE(half_slice.children().size() == 3);
  CHECK(half_slice.children()[1].symbol() == "/");
  CHECK(half_slice.children()[1].children()[0] ==
        ProgramAst::Apply("len", {ProgramAst::Identifier("a")}));
  CHECK(half_slice.children()[1].children()[1] == ProgramAst::Int(2));
}

TEST_CASE("parse_program records token positions") {
  const ProgramAst half_slice = ParseProgram(kHalfSlice);
  CHECK(half_slice.position() == 0);
  CHECK(half_slice.children()[0].position() == 2);
  CHECK(half_slice.children()[1].position() == 3);
}

TEST_CASE("parse_program error paths") {
  CHECK(ParseErrorCode("( strlen a") == ErrorCode::kUnbalancedParens);
  CHECK(ParseErrorCode(")") == ErrorCode::kUnbalancedParens);
  CHECK(ParseErrorCode("( strlen a ) )") == ErrorCode::kUnbalancedParens);
  CHECK(ParseErrorCode("a b") == ErrorCode::kUnbalancedParens);
  CHECK(ParseErrorCode("") == ErrorCode::kUnbalancedParens);
  CHECK(ParseErrorCode("( strlen @ )") == ErrorCode::kUnknownToken);
  CHECK(ParseErrorCode("( ( strlen a ) )") == ErrorCode::kUnknownToken);
  CHECK(ParseErrorCode("( frobnicate a )") == ErrorCode::kUnknownOp);
  CHECK(ParseErrorCode("( strlen a b )") == ErrorCode::kArityMismatch);
  CHECK(ParseErrorCode("( if a b )") == ErrorCode::kArityMismatch);

  try {
    ParseProgram("( len a ( strlen a b ) )");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("token 4") != std::string::npos);
  }
}

TEST_CASE("operators may appear as function arguments") {
  const ProgramAst t = ParseProgram("( reduce a 0 + )");
  CHECK(t.children()[2].is_identifier());
  CHECK(t.children()[2].symbol() == "+");
  CHECK(SerializeToString(ParseProgram("( filter a ( partial1 b > ) )")) ==
        "( filter a ( partial1 b > ) )");
}

TEST_CASE("serialize produces canonical token sequences") {
  CHECK(Serialize(ProgramAst::Identifier("a")) ==
        std::vector<std::string>{"a"});
  CHECK(SerializeToString(ParseProgram(kHalfSlice)) == kHalfSlice);
  CHECK(SerializeToString(ParseProgram(kFactorial)) == kFactorial);
  // Irregular whitespace is canonicalized.
  CHECK(SerializeToString(ParseProgram("  ( strlen\ta )\n")) == "( strlen a )");
  CHECK(SerializeToString(ProgramAst::String("abc")) == "\"abc\"");
  CHECK(SerializeToString(ProgramAst::Int(-3)) == "-3");
}

TEST_CASE("tree_depth") {
  CHECK(TreeDepth(ParseProgram("a")) == 1);
  CHECK(TreeDepth(ParseProgram("( strlen a )")) == 2);
  CHECK(TreeDepth(ParseProgram(kHalfSlice)) == 4);
}

TEST_CASE("code_length counts non-parenthesis tokens by default") {
  CHECK(CodeLength(ParseProgram("a")) == 1);
  CHECK(CodeLength(ParseProgram("( strlen a )")) == 2);
  // slice a / len a 2 len a
  CHECK(CodeLength(ParseProgram(kHalfSlice)) == 8);
  CHECK(CodeLength(ParseProgram(kHalfSlice), /*count_parens=*/true) ==
        static_cast<int>(Serialize(ParseProgram(kHalfSlice)).size()));
}

TEST_CASE("rename_identifiers") {
  CHECK(RenameIdentifiers(ParseProgram("( strlen a )"), VarMap{{"a", "b"}}) ==
        ParseProgram("( strlen b )"));
  const ProgramAst half_slice = ParseProgram(kHalfSlice);
  CHECK(RenameIdentifiers(half_slice, VarMap{}) == half_slice);
  CHECK(RenameIdentifiers(ParseProgram("( slice a d ( * c b ) )"),
                          VarMap{{"d", "e"}}) ==
        ParseProgram("( slice a e ( * c b ) )"));
  CHECK(RenameIdentifiers(ParseProgram("( slice a d ( * c b ) )"),
                          VarMap::Swap("b", "d")) ==
        ParseProgram("( slice a b ( * c d ) )"));
  // Operators passed as values are not identifiers of the program.
  CHECK(RenameIdentifiers(ParseProgram("( reduce a 0 + )"),
                          VarMap{{"a", "x"}}) ==
        ParseProgram("( reduce x 0 + )"));
}

TEST_CASE("rename_identifiers rejects collisions") {
  CHECK_THROWS_AS(
      RenameIdentifiers(ParseProgram("( + a b )"), VarMap{{"a", "b"}}), Error);
  try {
    RenameIdentifiers(ParseProgram("( + a b )"), VarMap{{"a", "b"}});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCollision);
  }
  // A non-injective map cannot even be built.
  VarMap m;
  m.Add("a", "z");
  CHECK_THROWS_AS(m.Add("b", "z"), Error);
}

TEST_CASE("FreeIdentifiers skips reserved symbols") {
  CHECK(FreeIdentifiers(ParseProgram(kFactorial)) ==
        std::vector<std::string>{"a"});
  CHECK(FreeIdentifiers(ParseProgram("( filter a ( partial1 b > ) )")) ==
        std::vector<std::string>{"a", "b"});
}

TEST_CASE("property: serialize/parse round trip on random trees") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const ProgramAst t = RandomTree(rng, 5);
    const std::vector<std::string> tokens = Serialize(t);
    const ProgramAst back = ParseProgram(tokens);
    REQUIRE(back == t);
    REQUIRE(Serialize(back) == tokens);
  }
}

TEST_CASE("property: renaming composes and preserves depth and length") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const ProgramAst t = RandomTree(rng, 5);
    // Fresh targets keep both steps collision free.
    const VarMap m1{{"a", "p"}, {"b", "q"}};
    const VarMap m2{{"p", "r"}, {"c", "s"}};
    const ProgramAst stepwise = RenameIdentifiers(RenameIdentifiers(t, m1), m2);
    REQUIRE(stepwise == RenameIdentifiers(t, m1.Then(m2)));
    REQUIRE(TreeDepth(stepwise) == TreeDepth(t));
    REQUIRE(CodeLength(stepwise) == CodeLength(t));
    REQUIRE(CodeLength(stepwise, true) == CodeLength(t, true));
  }
}

TEST_CASE("property: swap is an involution") {
  std::mt19937_64 rng(13);
  const VarMap swap = VarMap::Swap("a", "d");
  for (int i = 0; i < 200; ++i) {
    const ProgramAst t = RandomTree(rng, 4);
    REQUIRE(RenameIdentifiers(RenameIdentifiers(t, swap), swap) == t);
  }
}

}  // namespace
}  // namespace algolisp

// tests/test_ngram_counts.cc

// Copyright 2026  The lexfree authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABILITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "lexfree/errors.h"
#include "lexfree/ngram_counts.h"

using namespace lexfree;

TEST_CASE("hand counts for a two-sentence corpus") {
  const CountTable t = count_ngrams({{"a", "b"}, {"a"}}, 2);
  const int32_t a = t.token_id("a");
  const int32_t b = t.token_id("b");
  REQUIRE(a >= 2);  // 0 and 1 are the reserved markers
  REQUIRE(b >= 2);
  CHECK(t.token_id("<s>") == CountTable::kBosId);
  CHECK(t.token_id("</s>") == CountTable::kEosId);
  CHECK(t.token_id("zzz") == -1);

  CHECK(t.count({a}) == 2);
  CHECK(t.count({b}) == 1);
  CHECK(t.count({CountTable::kEosId}) == 2);
  // The begin marker is never a predicted event.
  CHECK(t.count({CountTable::kBosId}) == 0);
  CHECK(t.grams(1).size() == 3);

  CHECK(t.count({CountTable::kBosId, a}) == 2);
  CHECK(t.count({a, b}) == 1);
  CHECK(t.count({b, CountTable::kEosId}) == 1);
  CHECK(t.count({a, CountTable::kEosId}) == 1);
  CHECK(t.grams(2).size() == 4);

  // L words contribute L+1 events at every order.
  long uni_total = 0;
  for (const auto &gc : t.grams(1)) uni_total += gc.second;
  long bi_total = 0;
  for (const auto &gc : t.grams(2)) bi_total += gc.second;
  CHECK(uni_total == 5);
  CHECK(bi_total == 5);
}

TEST_CASE("order-3 contexts pad with begin markers") {
  const CountTable t = count_ngrams({{"a"}}, 3);
  const int32_t a = t.token_id("a");
  CHECK(t.count({CountTable::kBosId, CountTable::kBosId, a}) == 1);
  CHECK(t.count({CountTable::kBosId, a, CountTable::kEosId}) == 1);
  CHECK(t.grams(3).size() == 2);
}

TEST_CASE("empty sentences are skipped") {
  const CountTable t = count_ngrams({{}, {"a"}, {}}, 1);
  CHECK(t.count({t.token_id("a")}) == 1);
  CHECK(t.count({CountTable::kEosId}) == 1);
}

TEST_CASE("empty corpus yields an empty table") {
  const CountTable t = count_ngrams({}, 2);
  CHECK(t.empty());
  CHECK(!count_ngrams({{"x"}}, 2).empty());
}

TEST_CASE("reserved markers are rejected inside sentences") {
  CHECK_THROWS_AS(count_ngrams({{"a", "<s>"}}, 2), ParseError);
  CHECK_THROWS_AS(count_ngrams({{"</s>"}}, 1), ParseError);
}

TEST_CASE("CountTable validates order and gram length") {
  CHECK_THROWS_AS(CountTable(0), Error);
  CountTable t(2);
  CHECK_THROWS_AS(t.add({}, 1), Error);
  CHECK_THROWS_AS(t.add({0, 1, 0}, 1), Error);
  t.add({t.add_token("x")}, 5);
  CHECK(t.count({t.token_id("x")}) == 5);
  CHECK(t.count({t.token_id("x"), t.token_id("x")}) == 0);
}

TEST_CASE("save_counts_tsv is sorted and stable") {
  const CountTable t = count_ngrams({{"b", "a"}}, 2);
  std::ostringstream out;
  save_counts_tsv(out, t);
  CHECK(out.str() ==
        "</s>\t1\n"
        "a\t1\n"
        "b\t1\n"
        "<s> b\t1\n"
        "a </s>\t1\n"
        "b a\t1\n");
}

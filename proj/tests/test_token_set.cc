// tests/test_token_set.cc

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

#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "lexfree/errors.h"
#include "lexfree/token_set.h"
#include "test_util.h"

using namespace lexfree;

TEST_CASE("standard token set has the 31 canonical entries") {
  const TokenSet ts = TokenSet::standard();
  REQUIRE(ts.size() == 31);
  for (int i = 0; i < 26; ++i) {
    CHECK(ts.token(i) == std::string(1, static_cast<char>('a' + i)));
    CHECK(ts.index_of(std::string(1, static_cast<char>('a' + i))) == i);
    CHECK(ts.is_letter(i));
  }
  CHECK(ts.index_of("'") == 26);
  CHECK(ts.index_of(".") == 27);
  CHECK(ts.index_of("1") == 28);
  CHECK(ts.index_of("2") == 29);
  CHECK(ts.index_of("|") == 30);
  CHECK(ts.silence_index() == 30);
  CHECK(ts.rep1_index() == 28);
  CHECK(ts.rep2_index() == 29);
  CHECK(ts.has_reps());
  CHECK(ts.is_silence(30));
  CHECK(ts.is_rep(28));
  CHECK(ts.is_rep(29));
  CHECK(!ts.is_letter(28));
  CHECK(!ts.is_letter(30));
  CHECK(ts.is_letter(26));  // apostrophe counts as a letter token
  CHECK(ts.index_of("q") == 16);
  CHECK(ts.index_of("?") == -1);
}

TEST_CASE("from_tokens validates its inventory") {
  CHECK_NOTHROW(TokenSet::from_tokens({"a", "b", "|"}));
  const TokenSet no_reps = TokenSet::from_tokens({"a", "b", "|"});
  CHECK(!no_reps.has_reps());
  CHECK(no_reps.rep1_index() == -1);
  CHECK(no_reps.rep2_index() == -1);

  CHECK_THROWS_AS(TokenSet::from_tokens({"a", "a", "|"}), ParseError);
  CHECK_THROWS_AS(TokenSet::from_tokens({"ab", "|"}), ParseError);
  CHECK_THROWS_AS(TokenSet::from_tokens({"a", "b"}), ParseError);
  CHECK_THROWS_AS(TokenSet::from_tokens({"a", "1", "|"}), ParseError);
  CHECK_THROWS_AS(TokenSet::from_tokens({"a", "2", "|"}), ParseError);
  CHECK_THROWS_AS(TokenSet::from_tokens({"a", "", "|"}), ParseError);
}

TEST_CASE("string helpers") {
  CHECK(to_lower("Hello World") == "hello world");
  CHECK(to_lower("a-B'c.") == "a-b'c.");
  CHECK(split_words("  the  cat \t sat ") ==
        std::vector<std::string>{"the", "cat", "sat"});
  CHECK(split_words("") == std::vector<std::string>{});
  CHECK(join_words({"a", "b", "c"}) == "a b c");
  CHECK(join_words({}) == "");
}

TEST_CASE("encode_word fixtures") {
  const TokenSet ts = TokenSet::standard();
  // h e l l o -> h e l 1 o
  CHECK(encode_word("hello", ts) == EncodedCharSeq{7, 4, 11, 28, 14});
  CHECK(encode_word("HELLO", ts) == EncodedCharSeq{7, 4, 11, 28, 14});
  CHECK(encode_word("a", ts) == EncodedCharSeq{0});
  CHECK(encode_word("aa", ts) == EncodedCharSeq{0, 28});
  CHECK(encode_word("aaa", ts) == EncodedCharSeq{0, 29});
  // Runs over three decompose greedily: 4 = 3 + 1, 5 = 3 + 2.
  CHECK(encode_word("aaaa", ts) == EncodedCharSeq{0, 29, 0});
  CHECK(encode_word("aaaaa", ts) == EncodedCharSeq{0, 29, 0, 28});
  CHECK(encode_word("aaaaaa", ts) == EncodedCharSeq{0, 29, 0, 29});
  CHECK(encode_word("don't", ts) == EncodedCharSeq{3, 14, 13, 26, 19});
  CHECK(encode_word("dr.", ts) == EncodedCharSeq{3, 17, 27});

  CHECK_THROWS_AS(encode_word("", ts), EmptyWordError);
  CHECK_THROWS_AS(encode_word("caf\xc3\xa9", ts), UnknownCharacterError);
  CHECK_THROWS_AS(encode_word("a-b", ts), UnknownCharacterError);
  // "1" is a repetition token, not a letter.
  CHECK_THROWS_AS(encode_word("a1", ts), UnknownCharacterError);

  const TokenSet no_reps = testutil::tiny_tokens(3, false);
  CHECK_THROWS_AS(encode_word("aa", no_reps), UnknownCharacterError);
  CHECK_THROWS_AS(encode_word("aaa", no_reps), UnknownCharacterError);
  CHECK(encode_word("aba", no_reps) == EncodedCharSeq{0, 1, 0});
}

TEST_CASE("encode_word output never has two equal consecutive tokens") {
  std::mt19937_64 rng(11);
  const TokenSet ts = TokenSet::standard();
  for (int it = 0; it < 200; ++it) {
    std::string w;
    const int len = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < len; ++i)
      w += static_cast<char>('a' + rng() % 4);
    const EncodedCharSeq enc = encode_word(w, ts);
    for (size_t i = 1; i < enc.size(); ++i) CHECK(enc[i] != enc[i - 1]);
    for (int tok : enc) CHECK(!ts.is_silence(tok));
  }
}

TEST_CASE("decode_chars inverts encode_word") {
  std::mt19937_64 rng(12);
  const TokenSet ts = TokenSet::standard();
  for (int it = 0; it < 200; ++it) {
    std::string w;
    const int len = 1 + static_cast<int>(rng() % 10);
    for (int i = 0; i < len; ++i)
      w += static_cast<char>('a' + rng() % 3);
    const std::vector<std::string> back = decode_chars(encode_word(w, ts), ts);
    REQUIRE(back.size() == 1);
    CHECK(back[0] == w);
  }
}

TEST_CASE("decode_chars splits on silence and drops empty spans") {
  const TokenSet ts = TokenSet::standard();
  const int sil = ts.silence_index();
  // | c a t | | d o g |
  const EncodedCharSeq seq{sil, 2, 0, 19, sil, sil, 3, 14, 6, sil};
  CHECK(decode_chars(seq, ts) == std::vector<std::string>{"cat", "dog"});
  CHECK(decode_chars({sil, sil}, ts) == std::vector<std::string>{});
  CHECK(decode_chars({}, ts) == std::vector<std::string>{});
  // Repetition token opening a span is dangling.
  CHECK_THROWS_AS(decode_chars({28, 0}, ts), DanglingRepetitionError);
  CHECK_THROWS_AS(decode_chars({0, sil, 29}, ts), DanglingRepetitionError);
}

TEST_CASE("encode_sentence fixtures") {
  const TokenSet ts = TokenSet::standard();
  const int sil = ts.silence_index();
  // eos = true: sentence-final, no trailing silence.
  CHECK(encode_sentence({"a", "b"}, ts, true) == EncodedCharSeq{0, sil, 1});
  // eos = false: mid-stream, closed by silence.
  CHECK(encode_sentence({"a", "b"}, ts, false) ==
        EncodedCharSeq{0, sil, 1, sil});
  CHECK(encode_sentence({}, ts, true) == EncodedCharSeq{});
  CHECK(encode_sentence({}, ts, false) == EncodedCharSeq{});
  CHECK(decode_chars(encode_sentence({"the", "cat"}, ts, true), ts) ==
        std::vector<std::string>{"the", "cat"});
}

TEST_CASE("collapse_alignment") {
  CHECK(collapse_alignment({0, 0, 0, 1, 1, 0}) == EncodedCharSeq{0, 1, 0});
  CHECK(collapse_alignment({5}) == EncodedCharSeq{5});
  CHECK(collapse_alignment({}) == EncodedCharSeq{});
  CHECK(collapse_alignment({2, 2, 2, 2}) == EncodedCharSeq{2});
}

TEST_CASE("collapse after expansion loses nothing on encoded words") {
  // Expanding an encoded word into an alignment by repeating frames and
  // collapsing recovers the label sequence.
  const TokenSet ts = TokenSet::standard();
  std::mt19937_64 rng(13);
  for (int it = 0; it < 100; ++it) {
    std::string w;
    const int len = 1 + static_cast<int>(rng() % 6);
    for (int i = 0; i < len; ++i)
      w += static_cast<char>('a' + rng() % 3);
    const EncodedCharSeq labels = encode_word(w, ts);
    EncodedCharSeq align;
    for (int tok : labels) {
      const int copies = 1 + static_cast<int>(rng() % 3);
      for (int k = 0; k < copies; ++k) align.push_back(tok);
    }
    CHECK(collapse_alignment(align) == labels);
  }
}

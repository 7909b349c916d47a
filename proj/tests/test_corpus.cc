// tests/test_corpus.cc

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
#include "lexfree/corpus.h"
#include "lexfree/errors.h"
#include "lexfree/token_set.h"

using namespace lexfree;

namespace {

const std::vector<std::string> kTiny = {
    "The cat sat",
    "the dog",
    "",
    "THE cat",
};

}  // namespace

TEST_CASE("prepare_lm_corpus lowercases, counts, and sorts the vocabulary") {
  const PreparedCorpus pc =
      prepare_lm_corpus(kTiny, CorpusPrepConfig{}, TokenSet::standard());
  // the:3 cat:2 dog:1 sat:1; count descending, ties lexicographic.
  REQUIRE(pc.vocab.size() == 4);
  CHECK(pc.vocab[0] == std::pair<std::string, long>{"the", 3});
  CHECK(pc.vocab[1] == std::pair<std::string, long>{"cat", 2});
  CHECK(pc.vocab[2] == std::pair<std::string, long>{"dog", 1});
  CHECK(pc.vocab[3] == std::pair<std::string, long>{"sat", 1});
  CHECK(pc.in_vocab("cat"));
  CHECK(!pc.in_vocab("bird"));

  // Blank lines vanish entirely.
  REQUIRE(pc.word_lines.size() == 3);
  CHECK(pc.word_lines[0] == "the cat sat");
  CHECK(pc.word_lines[1] == "the dog");
  CHECK(pc.word_lines[2] == "the cat");

  REQUIRE(pc.char_lines.size() == 3);
  CHECK(pc.char_lines[0] == "t h e | c a t | s a t");
  CHECK(pc.char_lines[1] == "t h e | d o g");
  CHECK(pc.char_lines[2] == "t h e | c a t");
}

TEST_CASE("min_word_count prunes and the word corpus gets the unk marker") {
  CorpusPrepConfig cfg;
  cfg.min_word_count = 2;
  const PreparedCorpus pc =
      prepare_lm_corpus(kTiny, cfg, TokenSet::standard());
  REQUIRE(pc.vocab.size() == 2);
  CHECK(pc.vocab[0].first == "the");
  CHECK(pc.vocab[1].first == "cat");
  CHECK(pc.word_lines[0] == "the cat <unk>");
  CHECK(pc.word_lines[1] == "the <unk>");
  // Char lines keep the raw words: the character vocabulary is open.
  CHECK(pc.char_lines[0] == "t h e | c a t | s a t");
}

TEST_CASE("max_vocab truncates after sorting") {
  CorpusPrepConfig cfg;
  cfg.max_vocab = 3;
  const PreparedCorpus pc =
      prepare_lm_corpus(kTiny, cfg, TokenSet::standard());
  REQUIRE(pc.vocab.size() == 3);
  CHECK(pc.vocab[2].first == "dog");  // "sat" loses the count tie to "dog"
  CHECK(pc.word_lines[0] == "the cat <unk>");
}

TEST_CASE("custom unknown marker") {
  CorpusPrepConfig cfg;
  cfg.min_word_count = 3;
  cfg.unknown_token = "<oov>";
  const PreparedCorpus pc =
      prepare_lm_corpus(kTiny, cfg, TokenSet::standard());
  CHECK(pc.word_lines[1] == "the <oov>");
}

TEST_CASE("doubled letters become repetition tokens in char lines") {
  const PreparedCorpus pc = prepare_lm_corpus({"hello bee"}, CorpusPrepConfig{},
                                              TokenSet::standard());
  CHECK(pc.char_lines[0] == "h e l 1 o | b e 1");
}

TEST_CASE("characters outside the alphabet fail with the line number") {
  CHECK_THROWS_AS(prepare_lm_corpus({"fine", "bad-word"}, CorpusPrepConfig{},
                                    TokenSet::standard()),
                  UnknownCharacterError);
  try {
    prepare_lm_corpus({"fine", "bad-word"}, CorpusPrepConfig{},
                      TokenSet::standard());
    FAIL("expected UnknownCharacterError");
  } catch (const UnknownCharacterError &e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
  CHECK_THROWS_AS(
      prepare_lm_corpus({"ok"}, CorpusPrepConfig{.min_word_count = -1},
                        TokenSet::standard()),
      Error);
}

TEST_CASE("read_lines strips carriage returns") {
  std::istringstream in("one\r\ntwo\n\nthree");
  const std::vector<std::string> lines = read_lines(in);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "one");
  CHECK(lines[1] == "two");
  CHECK(lines[2] == "");
  CHECK(lines[3] == "three");
}

TEST_CASE("write_lines round trip") {
  const std::vector<std::string> lines = {"a", "", "b c"};
  std::ostringstream out;
  write_lines(out, lines);
  std::istringstream in(out.str());
  CHECK(read_lines(in) == lines);
}

TEST_CASE("vocab io round trip") {
  const PreparedCorpus pc =
      prepare_lm_corpus(kTiny, CorpusPrepConfig{}, TokenSet::standard());
  std::ostringstream out;
  write_vocab(out, pc);
  CHECK(out.str() == "the\ncat\ndog\nsat\n");
  std::istringstream in(out.str());
  CHECK(read_vocab(in) ==
        std::vector<std::string>{"the", "cat", "dog", "sat"});
}

// include/lexfree/corpus.h

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

#ifndef LEXFREE_CORPUS_H_
#define LEXFREE_CORPUS_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "lexfree/token_set.h"

namespace lexfree {

struct CorpusPrepConfig {
  // Words with count below this are dropped from the vocabulary.
  long min_word_count = 0;
  // Vocabulary is truncated to this many most frequent words; < 0 means
  // unlimited. Ties at equal count break lexicographically.
  long max_vocab = -1;
  // Replacement for out-of-vocabulary words in the word corpus.
  std::string unknown_token = "<unk>";
};

struct PreparedCorpus {
  // One sentence per entry, words space-joined, OOV replaced.
  std::vector<std::string> word_lines;
  // One sentence per entry: encoded letter tokens space-joined, words
  // separated by the silence token, no sentence-final silence. Character
  // LMs keep the original words: their vocabulary is open.
  std::vector<std::string> char_lines;
  // Descending count, ties lexicographic.
  std::vector<std::pair<std::string, long>> vocab;

  bool in_vocab(const std::string &word) const;
};

// Lowercases, splits, counts, truncates the vocabulary, and emits the two
// training corpora. Blank lines are skipped. A character outside the token
// alphabet is a hard error reported with its line number.
PreparedCorpus prepare_lm_corpus(const std::vector<std::string> &sentences,
                                 const CorpusPrepConfig &cfg,
                                 const TokenSet &ts);

std::vector<std::string> read_lines(std::istream &in);
std::vector<std::string> read_lines_file(const std::string &path);
void write_lines(std::ostream &out, const std::vector<std::string> &lines);
void write_lines_file(const std::string &path,
                      const std::vector<std::string> &lines);

// One word per line, ordered by descending count.
void write_vocab(std::ostream &out, const PreparedCorpus &corpus);
std::vector<std::string> read_vocab(std::istream &in);

}  // namespace lexfree

#endif  // LEXFREE_CORPUS_H_

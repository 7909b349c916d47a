// include/lexfree/lexicon.h

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

#ifndef LEXFREE_LEXICON_H_
#define LEXFREE_LEXICON_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

#include "lexfree/ngram_model.h"
#include "lexfree/token_set.h"

namespace lexfree {

// Word list with repetition-encoded spellings (no silence inside a
// spelling). A word may have several spellings; (word, spelling) pairs are
// unique. The key set is the decoder vocabulary V.
struct Lexicon {
  std::vector<std::string> words;  // id = position
  std::vector<std::vector<EncodedCharSeq>> spellings;
  std::unordered_map<std::string, int32_t> word_index;

  int32_t word_id(const std::string &word) const {
    auto it = word_index.find(word);
    return it == word_index.end() ? -1 : it->second;
  }
  bool contains(const std::string &word) const { return word_id(word) >= 0; }
  size_t size() const { return words.size(); }

  // Throws ParseError on malformed entries or duplicate words.
  int32_t add(const std::string &word, EncodedCharSeq spelling);
};

// Lines of "word TAB space-separated spelling tokens". Duplicate
// (word, spelling) lines collapse; a second distinct spelling is retained.
// Throws ParseError with line numbers, UnknownTokenError for spelling
// tokens outside ts.
Lexicon load_lexicon(std::istream &in, const TokenSet &ts);
Lexicon load_lexicon_file(const std::string &path, const TokenSet &ts);
void save_lexicon(std::ostream &out, const Lexicon &lex, const TokenSet &ts);

// One spelling per word via encode_word; duplicate words collapse.
Lexicon lexicon_from_words(const std::vector<std::string> &words,
                           const TokenSet &ts);

// Prefix trie over spellings. Following a spelling from the root lands on
// a node listing that word. Immutable after build (smear fills scores once)
// and shared freely across concurrent decoders.
class LexiconTrie {
 public:
  struct Node {
    // (token, child index), sorted by token.
    std::vector<std::pair<int, int32_t>> children;
    // Words whose spelling ends here, sorted by id.
    std::vector<int32_t> word_ids;
    // Max over the subtree of word unigram scores, natural log; only
    // meaningful after smear().
    double smear = 0.0;
  };

  static constexpr int32_t kRoot = 0;

  const Node &node(int32_t idx) const { return nodes_.at(idx); }
  size_t size() const { return nodes_.size(); }
  // -1 when the edge does not exist.
  int32_t child(int32_t from, int token) const;
  // Follows a token sequence from `from`; -1 when it falls off the trie.
  int32_t walk(int32_t from, const EncodedCharSeq &seq) const;
  bool word_bearing(int32_t idx) const { return !node(idx).word_ids.empty(); }

  // Word id -> string, copied from the source lexicon.
  const std::vector<std::string> &words() const { return words_; }
  bool smeared() const { return smeared_; }

 private:
  friend LexiconTrie build_trie(const Lexicon &, const TokenSet &);
  friend void smear(LexiconTrie &, const NGramModel &);

  std::vector<Node> nodes_;
  std::vector<std::string> words_;
  bool smeared_ = false;
};

LexiconTrie build_trie(const Lexicon &lex, const TokenSet &ts);

// Fills each node with the max over its subtree of the word-LM unigram
// log-probs (converted to natural log). Changes pruning behavior only;
// every completed transcription keeps its exact decoder score.
void smear(LexiconTrie &trie, const NGramModel &word_lm);

}  // namespace lexfree

#endif  // LEXFREE_LEXICON_H_

// include/lexfree/token_set.h

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

#ifndef LEXFREE_TOKEN_SET_H_
#define LEXFREE_TOKEN_SET_H_

#include <string>
#include <unordered_map>
#include <vector>

namespace lexfree {

// Sequence of token indices. Alignments use one entry per frame; encoded
// words and sentences use one entry per label.
using EncodedCharSeq = std::vector<int>;

// Grapheme inventory. The standard English set has 31 tokens: the lowercase
// letters, apostrophe, period, the two repetition characters "1" and "2",
// and the silence token "|". Immutable after construction; safe to share
// across threads.
//
// Repetition characters stand for extra copies of the preceding letter:
// "1" for one extra (a doubled letter), "2" for two (a tripled letter).
// Silence separates words and never occurs inside one.
class TokenSet {
 public:
  // The 31-token standard set, indices 0..30:
  // a..z, ', ., 1, 2, |
  static TokenSet standard();

  // Builds a set from explicit token strings. Letter tokens must be single
  // characters. "|" is required and becomes the silence token; "1" and "2",
  // when present, become the repetition tokens (both or neither).
  // Throws ParseError on duplicates or malformed entries.
  static TokenSet from_tokens(const std::vector<std::string> &tokens);

  int size() const { return static_cast<int>(tokens_.size()); }
  const std::vector<std::string> &tokens() const { return tokens_; }

  // -1 when the token is not in the set.
  int index_of(const std::string &token) const {
    auto it = index_.find(token);
    return it == index_.end() ? -1 : it->second;
  }
  const std::string &token(int index) const { return tokens_.at(index); }

  int silence_index() const { return silence_; }
  int rep1_index() const { return rep1_; }  // -1 when the set has no reps
  int rep2_index() const { return rep2_; }
  bool has_reps() const { return rep1_ >= 0 && rep2_ >= 0; }

  bool is_silence(int index) const { return index == silence_; }
  bool is_rep(int index) const {
    return (rep1_ >= 0 && index == rep1_) || (rep2_ >= 0 && index == rep2_);
  }
  bool is_letter(int index) const {
    return !is_silence(index) && !is_rep(index);
  }

 private:
  TokenSet() = default;

  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
  int silence_ = -1;
  int rep1_ = -1;
  int rep2_ = -1;
};

// ASCII lowercasing; leaves non-alphabetic bytes alone.
std::string to_lower(const std::string &s);

// Whitespace-separated word list; empty fields dropped.
std::vector<std::string> split_words(const std::string &line);
std::string join_words(const std::vector<std::string> &words);

// Maps a raw word to letter tokens with repetition characters. A run of k
// identical characters becomes: k=1 the letter, k=2 letter+rep1, k=3
// letter+rep2, k>=4 greedy decomposition into runs of at most 3. Input is
// lowercased first. Output never contains silence and never contains two
// consecutive identical tokens.
// Throws EmptyWordError, UnknownCharacterError.
EncodedCharSeq encode_word(const std::string &word, const TokenSet &ts);

// Inverse direction: splits on silence, expands repetition tokens. Empty
// spans (leading, trailing, doubled silence) yield no word.
// Throws DanglingRepetitionError when a repetition token has no preceding
// letter in its span.
std::vector<std::string> decode_chars(const EncodedCharSeq &seq,
                                      const TokenSet &ts);

// Words joined by single silence tokens, no leading silence. When eos is
// false the sentence is mid-stream and gets a trailing silence; when true,
// sentence-final handling belongs to the LM's end marker, so no trailing
// token is added.
EncodedCharSeq encode_sentence(const std::vector<std::string> &words,
                               const TokenSet &ts, bool eos);

// Collapses maximal runs of identical consecutive tokens to one token.
// This is the alignment-to-label map; repetition characters exist precisely
// so that collapsing loses no information.
EncodedCharSeq collapse_alignment(const EncodedCharSeq &alignment);

}  // namespace lexfree

#endif  // LEXFREE_TOKEN_SET_H_

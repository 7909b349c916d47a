// src/lexicon.cc

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

#include "lexfree/lexicon.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include "lexfree/errors.h"

namespace lexfree {

namespace {
constexpr double kLn10 = 2.302585092994045684;
}

int32_t Lexicon::add(const std::string &word, EncodedCharSeq spelling) {
  if (word.empty()) throw ParseError("empty word in lexicon");
  if (spelling.empty())
    throw ParseError("empty spelling for word \"" + word + "\"");
  int32_t id = word_id(word);
  if (id < 0) {
    id = static_cast<int32_t>(words.size());
    words.push_back(word);
    spellings.emplace_back();
    word_index.emplace(word, id);
  }
  auto &list = spellings[id];
  if (std::find(list.begin(), list.end(), spelling) == list.end())
    list.push_back(std::move(spelling));
  return id;
}

Lexicon load_lexicon(std::istream &in, const TokenSet &ts) {
  Lexicon lex;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError("no TAB between word and spelling", line_no);
    const std::string word = line.substr(0, tab);
    if (word.empty()) throw ParseError("empty word", line_no);
    EncodedCharSeq spelling;
    for (const std::string &tok : split_words(line.substr(tab + 1))) {
      const int idx = ts.index_of(tok);
      if (idx < 0)
        throw UnknownTokenError("line " + std::to_string(line_no) +
                                ": spelling token \"" + tok +
                                "\" not in the token set");
      if (ts.is_silence(idx))
        throw ParseError("silence token inside a spelling", line_no);
      spelling.push_back(idx);
    }
    if (spelling.empty()) throw ParseError("empty spelling", line_no);
    lex.add(word, std::move(spelling));
  }
  return lex;
}

Lexicon load_lexicon_file(const std::string &path, const TokenSet &ts) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return load_lexicon(in, ts);
}

void save_lexicon(std::ostream &out, const Lexicon &lex, const TokenSet &ts) {
  for (size_t id = 0; id < lex.words.size(); ++id) {
    for (const EncodedCharSeq &spelling : lex.spellings[id]) {
      out << lex.words[id] << '\t';
      for (size_t i = 0; i < spelling.size(); ++i) {
        if (i) out << ' ';
        out << ts.token(spelling[i]);
      }
      out << '\n';
    }
  }
}

Lexicon lexicon_from_words(const std::vector<std::string> &words,
                           const TokenSet &ts) {
  Lexicon lex;
  for (const std::string &w : words)
    if (!lex.contains(w)) lex.add(w, encode_word(w, ts));
  return lex;
}

int32_t LexiconTrie::child(int32_t from, int token) const {
  for (const auto &edge : nodes_.at(from).children)
    if (edge.first == token) return edge.second;
  return -1;
}

int32_t LexiconTrie::walk(int32_t from, const EncodedCharSeq &seq) const {
  int32_t at = from;
  for (int tok : seq) {
    at = child(at, tok);
    if (at < 0) return -1;
  }
  return at;
}

LexiconTrie build_trie(const Lexicon &lex, const TokenSet &ts) {
  LexiconTrie trie;
  trie.words_ = lex.words;
  trie.nodes_.emplace_back();
  for (size_t id = 0; id < lex.words.size(); ++id) {
    for (const EncodedCharSeq &spelling : lex.spellings[id]) {
      int32_t at = LexiconTrie::kRoot;
      for (int tok : spelling) {
        if (tok < 0 || tok >= ts.size() || ts.is_silence(tok))
          throw Error("spelling of \"" + lex.words[id] +
                      "\" contains an invalid token");
        int32_t next = trie.child(at, tok);
        if (next < 0) {
          next = static_cast<int32_t>(trie.nodes_.size());
          trie.nodes_.emplace_back();
          auto &children = trie.nodes_[at].children;
          children.emplace_back(tok, next);
          std::sort(children.begin(), children.end());
        }
        at = next;
      }
      auto &ids = trie.nodes_[at].word_ids;
      ids.insert(std::lower_bound(ids.begin(), ids.end(),
                                  static_cast<int32_t>(id)),
                 static_cast<int32_t>(id));
    }
  }
  return trie;
}

namespace {

double smear_dfs(std::vector<LexiconTrie::Node> &all, int32_t idx,
                 const std::vector<double> &word_scores) {
  LexiconTrie::Node &node = all[idx];
  double best = -std::numeric_limits<double>::infinity();
  for (int32_t w : node.word_ids) best = std::max(best, word_scores[w]);
  for (const auto &edge : node.children)
    best = std::max(best, smear_dfs(all, edge.second, word_scores));
  node.smear = best;
  return best;
}

}  // namespace

void smear(LexiconTrie &trie, const NGramModel &word_lm) {
  if (word_lm.level() != LmLevel::kWord)
    throw ModeMismatchError("smearing needs a word-level model");
  std::vector<double> word_scores(trie.words_.size());
  const LmContextState empty = word_lm.null_state();
  for (size_t id = 0; id < trie.words_.size(); ++id)
    word_scores[id] = kLn10 * word_lm.score(empty, trie.words_[id]).second;
  if (!trie.nodes_.empty())
    smear_dfs(trie.nodes_, LexiconTrie::kRoot, word_scores);
  trie.smeared_ = true;
}

}  // namespace lexfree

// src/corpus.cc

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

#include "lexfree/corpus.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_map>
#include <unordered_set>

#include "lexfree/errors.h"

namespace lexfree {

bool PreparedCorpus::in_vocab(const std::string &word) const {
  for (const auto &wc : vocab)
    if (wc.first == word) return true;
  return false;
}

PreparedCorpus prepare_lm_corpus(const std::vector<std::string> &sentences,
                                 const CorpusPrepConfig &cfg,
                                 const TokenSet &ts) {
  if (cfg.min_word_count < 0) throw Error("min_word_count must be >= 0");

  std::vector<std::vector<std::string>> tokenized;
  std::unordered_map<std::string, long> counts;
  for (size_t i = 0; i < sentences.size(); ++i) {
    std::vector<std::string> words = split_words(to_lower(sentences[i]));
    if (words.empty()) continue;
    for (const std::string &w : words) {
      // Validate against the character alphabet up front so the error names
      // the offending line, not some later encoding site.
      try {
        encode_word(w, ts);
      } catch (const Error &e) {
        throw UnknownCharacterError("line " + std::to_string(i + 1) + ": " +
                                    e.what());
      }
      ++counts[w];
    }
    tokenized.push_back(std::move(words));
  }

  std::vector<std::pair<std::string, long>> vocab;
  for (const auto &wc : counts)
    if (wc.second >= cfg.min_word_count) vocab.push_back(wc);
  std::sort(vocab.begin(), vocab.end(), [](const auto &a, const auto &b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  if (cfg.max_vocab >= 0 && static_cast<long>(vocab.size()) > cfg.max_vocab)
    vocab.resize(cfg.max_vocab);

  std::unordered_set<std::string> in_v;
  for (const auto &wc : vocab) in_v.insert(wc.first);

  PreparedCorpus out;
  out.vocab = std::move(vocab);
  for (const auto &words : tokenized) {
    std::vector<std::string> replaced;
    replaced.reserve(words.size());
    for (const std::string &w : words)
      replaced.push_back(in_v.count(w) ? w : cfg.unknown_token);
    out.word_lines.push_back(join_words(replaced));

    const EncodedCharSeq enc = encode_sentence(words, ts, /*eos=*/true);
    std::vector<std::string> toks;
    toks.reserve(enc.size());
    for (int t : enc) toks.push_back(ts.token(t));
    out.char_lines.push_back(join_words(toks));
  }
  return out;
}

std::vector<std::string> read_lines(std::istream &in) {
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  return lines;
}

std::vector<std::string> read_lines_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_lines(in);
}

void write_lines(std::ostream &out, const std::vector<std::string> &lines) {
  for (const std::string &line : lines) out << line << '\n';
}

void write_lines_file(const std::string &path,
                      const std::vector<std::string> &lines) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  write_lines(out, lines);
}

void write_vocab(std::ostream &out, const PreparedCorpus &corpus) {
  for (const auto &wc : corpus.vocab) out << wc.first << '\n';
}

std::vector<std::string> read_vocab(std::istream &in) {
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) words.push_back(line);
  }
  return words;
}

}  // namespace lexfree

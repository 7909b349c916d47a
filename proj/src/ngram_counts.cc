// src/ngram_counts.cc

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

#include "lexfree/ngram_counts.h"

#include <algorithm>
#include <ostream>

#include "lexfree/errors.h"

namespace lexfree {

CountTable::CountTable(int order) : order_(order) {
  if (order < 1) throw Error("n-gram order must be >= 1");
  add_token(kBosToken);
  add_token(kEosToken);
  by_order_.resize(order);
}

bool CountTable::empty() const {
  for (const auto &m : by_order_)
    if (!m.empty()) return false;
  return true;
}

int32_t CountTable::add_token(const std::string &token) {
  auto it = token_index_.find(token);
  if (it != token_index_.end()) return it->second;
  const int32_t id = static_cast<int32_t>(tokens_.size());
  tokens_.push_back(token);
  token_index_.emplace(token, id);
  return id;
}

int32_t CountTable::token_id(const std::string &token) const {
  auto it = token_index_.find(token);
  return it == token_index_.end() ? -1 : it->second;
}

void CountTable::add(const Gram &gram, long count) {
  if (gram.empty() || static_cast<int>(gram.size()) > order_)
    throw Error("gram length outside 1.." + std::to_string(order_));
  by_order_[gram.size() - 1][gram] += count;
}

long CountTable::count(const Gram &gram) const {
  const auto &m = by_order_.at(gram.size() - 1);
  auto it = m.find(gram);
  return it == m.end() ? 0 : it->second;
}

CountTable count_ngrams(const std::vector<std::vector<std::string>> &sentences,
                        int order) {
  CountTable table(order);
  for (const auto &sentence : sentences) {
    if (sentence.empty()) continue;
    Gram ids;
    ids.reserve(sentence.size() + 1);
    for (const std::string &tok : sentence) {
      if (tok == CountTable::kBosToken || tok == CountTable::kEosToken)
        throw ParseError("reserved marker \"" + tok + "\" inside a sentence");
      ids.push_back(table.add_token(tok));
    }
    ids.push_back(CountTable::kEosId);
    const long len = static_cast<long>(ids.size());
    for (int k = 1; k <= order; ++k) {
      Gram gram(k);
      for (long i = 0; i < len; ++i) {
        for (int j = 0; j < k; ++j) {
          const long pos = i - (k - 1) + j;
          gram[j] = pos < 0 ? CountTable::kBosId : ids[pos];
        }
        table.add(gram);
      }
    }
  }
  return table;
}

void save_counts_tsv(std::ostream &out, const CountTable &table) {
  for (int k = 1; k <= table.order(); ++k) {
    std::vector<std::pair<std::vector<std::string>, long>> rows;
    for (const auto &gc : table.grams(k)) {
      std::vector<std::string> toks;
      toks.reserve(gc.first.size());
      for (int32_t id : gc.first) toks.push_back(table.tokens()[id]);
      rows.emplace_back(std::move(toks), gc.second);
    }
    std::sort(rows.begin(), rows.end());
    for (const auto &row : rows) {
      for (size_t i = 0; i < row.first.size(); ++i) {
        if (i) out << ' ';
        out << row.first[i];
      }
      out << '\t' << row.second << '\n';
    }
  }
}

}  // namespace lexfree

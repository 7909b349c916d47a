// include/lexfree/ngram_counts.h

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

#ifndef LEXFREE_NGRAM_COUNTS_H_
#define LEXFREE_NGRAM_COUNTS_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

namespace lexfree {

// An n-gram as a sequence of vocabulary ids, most recent token last.
using Gram = std::vector<int32_t>;

struct GramHash {
  size_t operator()(const Gram &g) const {
    uint64_t h = 1469598103934665603ull;
    for (int32_t v : g) {
      h ^= static_cast<uint64_t>(static_cast<uint32_t>(v));
      h *= 1099511628211ull;
    }
    return static_cast<size_t>(h);
  }
};

template <typename V>
using GramMap = std::unordered_map<Gram, V, GramHash>;

// Raw n-gram counts for all orders 1..order. Ids 0 and 1 are reserved for
// the begin and end of sentence markers.
class CountTable {
 public:
  static constexpr int32_t kBosId = 0;
  static constexpr int32_t kEosId = 1;
  static constexpr const char *kBosToken = "<s>";
  static constexpr const char *kEosToken = "</s>";

  explicit CountTable(int order);

  int order() const { return order_; }
  bool empty() const;

  int32_t add_token(const std::string &token);
  // -1 when absent.
  int32_t token_id(const std::string &token) const;
  const std::vector<std::string> &tokens() const { return tokens_; }

  void add(const Gram &gram, long count = 1);
  long count(const Gram &gram) const;
  // k is 1-based.
  const GramMap<long> &grams(int k) const { return by_order_.at(k - 1); }

 private:
  int order_;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int32_t> token_index_;
  std::vector<GramMap<long>> by_order_;
};

// Counts every k-gram (k = 1..order) ending at a predicted position: each
// real token and the end-of-sentence event. Contexts are padded with
// (order-1) begin markers, so a sentence of L words contributes L+1 k-grams
// at every order. The begin marker itself is never a predicted event and is
// never counted as a unigram. Empty sentences are skipped. The reserved
// marker strings are rejected inside sentences.
CountTable count_ngrams(const std::vector<std::vector<std::string>> &sentences,
                        int order);

// Tab-separated "token .. token TAB count", sorted by order then token
// strings. Debugging aid.
void save_counts_tsv(std::ostream &out, const CountTable &table);

}  // namespace lexfree

#endif  // LEXFREE_NGRAM_COUNTS_H_

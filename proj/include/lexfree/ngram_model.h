// include/lexfree/ngram_model.h

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

#ifndef LEXFREE_NGRAM_MODEL_H_
#define LEXFREE_NGRAM_MODEL_H_

#include <string>
#include <utility>
#include <vector>

#include "lexfree/ngram_counts.h"

namespace lexfree {

enum class LmLevel { kChar, kWord };

struct LmEntry {
  double log10_prob = 0.0;
  // Log10 backoff weight applied when a longer gram through this context is
  // missing. Always 0 at the top order.
  double log10_backoff = 0.0;
};

// Query context: the most recent tokens, truncated to the longest suffix
// the model actually stores. Two states with equal keys score every
// continuation identically, which is what hypothesis merging relies on.
class LmContextState {
 public:
  LmContextState() = default;
  explicit LmContextState(Gram ids) : ids_(std::move(ids)) {}
  const Gram &key() const { return ids_; }
  bool operator==(const LmContextState &o) const { return ids_ == o.ids_; }
  bool operator!=(const LmContextState &o) const { return !(*this == o); }

 private:
  Gram ids_;
};

// Backoff n-gram model over characters or words, log10 domain.
//
// The mutating calls (add_token, set_entry) exist for the trainer and the
// ARPA loader; a model is immutable once built and safe for concurrent
// queries.
class NGramModel {
 public:
  static constexpr int32_t kBosId = 0;
  static constexpr int32_t kEosId = 1;
  static constexpr const char *kBosToken = "<s>";
  static constexpr const char *kEosToken = "</s>";
  static constexpr const char *kUnkToken = "<unk>";

  NGramModel(int order, LmLevel level);

  int order() const { return order_; }
  LmLevel level() const { return level_; }

  int32_t add_token(const std::string &token);
  int32_t token_id(const std::string &token) const;
  const std::vector<std::string> &tokens() const { return tokens_; }
  // -1 when the model has no unknown marker (char level).
  int32_t unk_id() const { return unk_id_; }

  void set_entry(const Gram &gram, double log10_prob, double log10_backoff);
  // Overwrites only the backoff weight; the entry must already exist.
  void set_backoff(const Gram &gram, double log10_backoff);
  const LmEntry *find(const Gram &gram) const;
  // k is 1-based.
  const GramMap<LmEntry> &entries(int k) const { return by_order_.at(k - 1); }
  size_t entry_count(int k) const { return by_order_.at(k - 1).size(); }

  // Context of (order-1) begin markers.
  LmContextState start_state() const;
  // Empty context; continuations score as unigrams.
  LmContextState null_state() const { return LmContextState(); }

  // Longest-match backoff query. Returns the new context state (suffix of
  // context+id truncated to order-1 and to the longest stored gram) and the
  // log10 probability. Word level substitutes the unknown marker for ids
  // without a unigram; char level throws UnknownToken.
  std::pair<LmContextState, double> score_id(const LmContextState &state,
                                             int32_t id) const;
  // As score_id, after mapping the token string to an id. Word level maps
  // out-of-vocabulary strings to the unknown marker.
  std::pair<LmContextState, double> score(const LmContextState &state,
                                          const std::string &token) const;
  // Log10 probability of the end-of-sentence event from this context.
  double finish(const LmContextState &state) const;
  // Chain rule from start_state through every token plus finish.
  double sentence_logprob(const std::vector<std::string> &tokens) const;

  // Every id with a unigram entry except the begin marker: the events a
  // context distributes probability over.
  std::vector<int32_t> predicted_ids() const;

 private:
  Gram canonical(Gram ids) const;

  int order_;
  LmLevel level_;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int32_t> token_index_;
  std::vector<GramMap<LmEntry>> by_order_;
  int32_t unk_id_ = -1;
};

// Max |Σ_id 10^score(h, id) − 1| over the empty context and every stored
// context (grams of order < n), the sum running over the whole vocabulary.
// Exhaustive; meant for tests and small models.
double max_normalization_error(const NGramModel &model);

}  // namespace lexfree

#endif  // LEXFREE_NGRAM_MODEL_H_

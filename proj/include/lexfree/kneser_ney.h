// include/lexfree/kneser_ney.h

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

#ifndef LEXFREE_KNESER_NEY_H_
#define LEXFREE_KNESER_NEY_H_

#include <map>
#include <string>
#include <vector>

#include "lexfree/ngram_counts.h"
#include "lexfree/ngram_model.h"

namespace lexfree {

// Count-threshold pruning applied to raw counts before discount
// estimation: a k-gram whose count is <= thresholds[k] is dropped.
// Missing orders default to 0 (keep everything). Unigrams cannot be pruned.
struct PruneSpec {
  std::map<int, long> thresholds;

  long threshold(int k) const {
    auto it = thresholds.find(k);
    return it == thresholds.end() ? 0 : it->second;
  }
};

// Parses "6:1,7:1,8:1,9:2,10+:3": each entry is ORDER:MAXDROPPEDCOUNT, and
// "K+" spans orders K..model order. Later entries override earlier ones.
// Empty text means no pruning. Throws ParseError on malformed entries,
// orders outside 2..order, or negative thresholds.
PruneSpec parse_prune_spec(const std::string &text, int order);

// Interpolated modified Kneser-Ney estimation.
//
// Pipeline: prune raw counts; restore prefixes pruning orphaned (ARPA
// well-formedness); replace lower-order counts with continuation counts
// (begin-marker-initial grams keep raw counts, they can never be
// continued); derive three discount constants per order from the
// count-of-counts of the adjusted counts; interpolate bottom-up. Contexts
// renormalize over survivors, so the normalization invariant holds exactly
// whether or not pruning dropped mass.
//
// Degenerate count-of-counts (tiny corpora) fall back to an absolute
// discount of 0.5 for that order, appended to *warnings when given.
//
// Word level guarantees an unknown-marker unigram. The begin marker gets
// probability -inf and its estimated backoff weights.
NGramModel estimate(const CountTable &counts, const PruneSpec &prune,
                    LmLevel level,
                    std::vector<std::string> *warnings = nullptr);

}  // namespace lexfree

#endif  // LEXFREE_KNESER_NEY_H_

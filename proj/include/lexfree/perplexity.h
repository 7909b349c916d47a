// include/lexfree/perplexity.h

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

#ifndef LEXFREE_PERPLEXITY_H_
#define LEXFREE_PERPLEXITY_H_

#include <string>
#include <utility>
#include <vector>

#include "lexfree/ngram_model.h"
#include "lexfree/token_set.h"

namespace lexfree {

struct PerplexityReport {
  long n_words = 0;     // Scored word occurrences (N).
  long n_excluded = 0;  // Occurrences outside the evaluation vocabulary.
  // Accumulated log10 probability of the scored words. For character LMs
  // this is the unnormalized (upper-bound) sum.
  double log10_sum = 0.0;
  double ppl = 0.0;  // Word-LM route: 10^(-log10_sum / N).
  // Character-LM route: renormalized and unnormalized word perplexities.
  double ppl_lower = 0.0;
  double ppl_upper = 0.0;
  double coverage_mass = 0.0;
};

// Word-level perplexity of a word LM. Words outside `vocab` advance the LM
// context as the unknown marker but are excluded from the product and from N.
// The end-of-sentence event is not counted as a word. Throws EmptyCorpusError
// when no word is scored.
PerplexityReport word_ppl_word_lm(const NGramModel &lm,
                                  const std::vector<std::string> &corpus,
                                  const std::vector<std::string> &vocab);

enum class Terminator { kSilence, kEos };

// log10 probability of a word under a character LM: the product over the
// word's encoded letters followed by the terminator (silence mid-sentence,
// end-of-sentence for sentence-final words). Returns the advanced state; for
// the EOS terminator the state reflects the letters only.
std::pair<LmContextState, double> word_logprob_char_lm(
    const NGramModel &lm, const TokenSet &ts, const LmContextState &state,
    const std::string &word, Terminator terminator);

// Denominator mass: sum over `subset` of 10^word_logprob_char_lm from the
// given context state, in the order the subset lists the words.
double normalizer(const NGramModel &lm, const TokenSet &ts,
                  const LmContextState &state,
                  const std::vector<std::string> &subset,
                  Terminator terminator);

// Most probable words under the word LM after `context`, covering at least
// `mass` of the LM's total mass over `vocab`. Sorted by descending
// probability, ties broken lexicographically; mass >= 1 returns all of
// `vocab` in that order.
std::vector<std::string> top_mass_subset(
    const NGramModel &word_lm, const std::vector<std::string> &context,
    const std::vector<std::string> &vocab, double mass);

// Upper and lower word-perplexity bounds for a character LM. The upper bound
// scores each in-vocabulary word occurrence unnormalized; the lower bound
// renormalizes by the denominator over the word LM's top-mass subset at the
// same context. Out-of-vocabulary occurrences stay in the character context
// but are excluded from both products and from N.
PerplexityReport char_lm_word_ppl_bounds(
    const NGramModel &char_lm, const NGramModel &word_lm, const TokenSet &ts,
    const std::vector<std::string> &corpus,
    const std::vector<std::string> &vocab, double mass = 0.95);

}  // namespace lexfree

#endif  // LEXFREE_PERPLEXITY_H_

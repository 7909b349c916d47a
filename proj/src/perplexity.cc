// src/perplexity.cc

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

#include "lexfree/perplexity.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

#include "lexfree/errors.h"

namespace lexfree {

PerplexityReport word_ppl_word_lm(const NGramModel &lm,
                                  const std::vector<std::string> &corpus,
                                  const std::vector<std::string> &vocab) {
  if (lm.level() != LmLevel::kWord)
    throw ModeMismatchError("word perplexity needs a word-level model");
  const std::unordered_set<std::string> in_vocab(vocab.begin(), vocab.end());
  PerplexityReport report;
  for (const std::string &line : corpus) {
    const std::vector<std::string> words = split_words(to_lower(line));
    if (words.empty()) continue;
    LmContextState state = lm.start_state();
    for (const std::string &w : words) {
      auto scored = lm.score(state, w);
      state = std::move(scored.first);
      if (in_vocab.count(w)) {
        report.log10_sum += scored.second;
        ++report.n_words;
      } else {
        ++report.n_excluded;
      }
    }
  }
  if (report.n_words == 0)
    throw EmptyCorpusError("no in-vocabulary word to score");
  report.ppl =
      std::pow(10.0, -report.log10_sum / static_cast<double>(report.n_words));
  return report;
}

std::pair<LmContextState, double> word_logprob_char_lm(
    const NGramModel &lm, const TokenSet &ts, const LmContextState &state,
    const std::string &word, Terminator terminator) {
  if (lm.level() != LmLevel::kChar)
    throw ModeMismatchError("word_logprob_char_lm needs a char-level model");
  const EncodedCharSeq letters = encode_word(word, ts);
  LmContextState cur = state;
  double log10_sum = 0.0;
  for (int idx : letters) {
    auto scored = lm.score(cur, ts.token(idx));
    cur = std::move(scored.first);
    log10_sum += scored.second;
  }
  if (terminator == Terminator::kSilence) {
    auto scored = lm.score(cur, ts.token(ts.silence_index()));
    cur = std::move(scored.first);
    log10_sum += scored.second;
  } else {
    log10_sum += lm.finish(cur);
  }
  return {std::move(cur), log10_sum};
}

double normalizer(const NGramModel &lm, const TokenSet &ts,
                  const LmContextState &state,
                  const std::vector<std::string> &subset,
                  Terminator terminator) {
  double sum = 0.0;
  for (const std::string &w : subset)
    sum += std::pow(
        10.0, word_logprob_char_lm(lm, ts, state, w, terminator).second);
  return sum;
}

std::vector<std::string> top_mass_subset(
    const NGramModel &word_lm, const std::vector<std::string> &context,
    const std::vector<std::string> &vocab, double mass) {
  if (word_lm.level() != LmLevel::kWord)
    throw ModeMismatchError("top_mass_subset needs a word-level model");
  if (!(mass > 0))
    throw Error("coverage mass must be positive");
  LmContextState state = word_lm.start_state();
  for (const std::string &w : context) state = word_lm.score(state, w).first;
  std::vector<std::pair<double, std::string>> scored;
  scored.reserve(vocab.size());
  double total = 0.0;
  for (const std::string &w : vocab) {
    const double p = std::pow(10.0, word_lm.score(state, w).second);
    scored.emplace_back(p, w);
    total += p;
  }
  std::sort(scored.begin(), scored.end(),
            [](const auto &a, const auto &b) {
              if (a.first != b.first) return a.first > b.first;
              return a.second < b.second;
            });
  std::vector<std::string> subset;
  if (mass >= 1.0) {
    subset.reserve(scored.size());
    for (auto &pw : scored) subset.push_back(std::move(pw.second));
    return subset;
  }
  const double threshold = mass * total;
  double cum = 0.0;
  for (auto &pw : scored) {
    cum += pw.first;
    subset.push_back(std::move(pw.second));
    if (cum >= threshold) break;
  }
  return subset;
}

PerplexityReport char_lm_word_ppl_bounds(
    const NGramModel &char_lm, const NGramModel &word_lm, const TokenSet &ts,
    const std::vector<std::string> &corpus,
    const std::vector<std::string> &vocab, double mass) {
  if (char_lm.level() != LmLevel::kChar)
    throw ModeMismatchError("bounds need a char-level model");
  if (word_lm.level() != LmLevel::kWord)
    throw ModeMismatchError("bounds need a word-level model for coverage");
  const std::unordered_set<std::string> in_vocab(vocab.begin(), vocab.end());
  // The coverage subset depends only on the word-LM context; cache it by the
  // canonical state key.
  std::map<Gram, std::vector<std::string>> subsets;
  PerplexityReport report;
  report.coverage_mass = mass;
  double lower_sum = 0.0;
  for (const std::string &line : corpus) {
    const std::vector<std::string> words = split_words(to_lower(line));
    if (words.empty()) continue;
    LmContextState cstate = char_lm.start_state();
    LmContextState wstate = word_lm.start_state();
    std::vector<std::string> context;
    for (size_t i = 0; i < words.size(); ++i) {
      const std::string &w = words[i];
      const Terminator term = i + 1 == words.size() ? Terminator::kEos
                                                    : Terminator::kSilence;
      const bool scored = in_vocab.count(w) != 0;
      double denom = 1.0;
      if (scored) {
        auto it = subsets.find(wstate.key());
        if (it == subsets.end())
          it = subsets
                   .emplace(wstate.key(),
                            top_mass_subset(word_lm, context, vocab, mass))
                   .first;
        denom = normalizer(char_lm, ts, cstate, it->second, term);
      }
      auto word_scored = word_logprob_char_lm(char_lm, ts, cstate, w, term);
      cstate = std::move(word_scored.first);
      if (scored) {
        report.log10_sum += word_scored.second;
        lower_sum += word_scored.second - std::log10(denom);
        ++report.n_words;
      } else {
        ++report.n_excluded;
      }
      wstate = word_lm.score(wstate, w).first;
      context.push_back(w);
    }
  }
  if (report.n_words == 0)
    throw EmptyCorpusError("no in-vocabulary word to score");
  const double n = static_cast<double>(report.n_words);
  report.ppl_upper = std::pow(10.0, -report.log10_sum / n);
  report.ppl_lower = std::pow(10.0, -lower_sum / n);
  return report;
}

}  // namespace lexfree

// include/lexfree/tune.h

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

#ifndef LEXFREE_TUNE_H_
#define LEXFREE_TUNE_H_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lexfree/batch.h"

namespace lexfree {

struct SearchSpace {
  double alpha_lo = 0.0;
  double alpha_hi = 5.0;
  double beta_lo = -5.0;
  double beta_hi = 5.0;
  double gamma_lo = -5.0;
  double gamma_hi = 5.0;
  int n_trials = 100;
  uint64_t seed = 0;
};

struct TrialResult {
  int trial_id = 0;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double wer = 0.0;
  double cer = 0.0;
  double wall_sec = 0.0;  // Informational; excluded from the trial log.
  bool ok = false;
  std::string error;
};

struct TuneOutcome {
  DecoderOptions best;
  int best_trial = -1;
  std::vector<TrialResult> trials;
};

// Uniform draw from the open interval (lo, hi). The mapping from raw
// mt19937_64 output is fixed so logs reproduce across platforms.
double uniform_open(std::mt19937_64 &rng, double lo, double hi);

// Random search over (alpha, beta, gamma). All triples are drawn up front
// from the seeded generator, then trials run (in parallel when available)
// and are reported in trial order; the same seed gives the same log for any
// thread count. Best trial: minimal WER, ties by CER then trial index. A
// trial whose batch has any failed utterance is recorded as failed.
TuneOutcome random_search(const std::vector<Utterance> &dev,
                          const TransitionMatrix *tr, const DecoderScorer &lm,
                          const LexiconTrie *lex, const DecoderOptions &base,
                          const SearchSpace &space, int threads = 0);

// TSV with header: trial_id, alpha, beta, gamma, wer, cer, status.
std::string format_trial_log(const std::vector<TrialResult> &trials);

}  // namespace lexfree

#endif  // LEXFREE_TUNE_H_

// src/tune.cc

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

#include "lexfree/tune.h"

#include <chrono>
#include <cmath>
#include <cstdio>

#include "lexfree/errors.h"
#include "lexfree/eval.h"
#include "lexfree/token_set.h"

namespace lexfree {

double uniform_open(std::mt19937_64 &rng, double lo, double hi) {
  const uint64_t x = rng();
  // 53-bit mantissa draw offset by half a step: never exactly 0 or 1.
  const double u = (static_cast<double>(x >> 11) + 0.5) * 0x1p-53;
  double v = lo + u * (hi - lo);
  if (v <= lo) v = std::nextafter(lo, hi);
  if (v >= hi) v = std::nextafter(hi, lo);
  return v;
}

namespace {

void check_range(double lo, double hi, const char *name) {
  if (!(lo < hi))
    throw Error(std::string("degenerate ") + name + " range");
}

}  // namespace

TuneOutcome random_search(const std::vector<Utterance> &dev,
                          const TransitionMatrix *tr, const DecoderScorer &lm,
                          const LexiconTrie *lex, const DecoderOptions &base,
                          const SearchSpace &space, int threads) {
  if (dev.empty()) throw EmptyCorpusError("empty dev set");
  if (space.n_trials < 1) throw Error("n_trials must be >= 1");
  check_range(space.alpha_lo, space.alpha_hi, "alpha");
  check_range(space.beta_lo, space.beta_hi, "beta");
  check_range(space.gamma_lo, space.gamma_hi, "gamma");

  // All triples come from one sequential pass over the generator, so the
  // sample set is a function of the seed alone.
  std::mt19937_64 rng(space.seed);
  std::vector<TrialResult> trials(space.n_trials);
  for (int t = 0; t < space.n_trials; ++t) {
    trials[t].trial_id = t;
    trials[t].alpha = uniform_open(rng, space.alpha_lo, space.alpha_hi);
    trials[t].beta = uniform_open(rng, space.beta_lo, space.beta_hi);
    trials[t].gamma = uniform_open(rng, space.gamma_lo, space.gamma_hi);
  }

  const auto run_trial = [&](int t) {
    TrialResult &trial = trials[t];
    const auto t0 = std::chrono::steady_clock::now();
    try {
      DecoderOptions opt = base;
      opt.alpha = trial.alpha;
      opt.beta = trial.beta;
      opt.gamma = trial.gamma;
      const std::vector<BatchResult> results =
          decode_batch(dev, tr, lm, lex, opt, 0);
      std::vector<EvalPair> pairs;
      pairs.reserve(results.size());
      for (size_t i = 0; i < results.size(); ++i) {
        if (!results[i].ok)
          throw Error("utterance " + results[i].utt_id + ": " +
                      results[i].error);
        pairs.push_back({results[i].utt_id, dev[i].reference,
                         join_words(results[i].result.words)});
      }
      const CorpusEval ev = evaluate_corpus(pairs);
      trial.wer = ev.wer;
      trial.cer = ev.cer;
      trial.ok = true;
    } catch (const std::exception &e) {
      trial.ok = false;
      trial.error = e.what();
    }
    trial.wall_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
  };

  const int n = space.n_trials;
#ifdef _OPENMP
  if (threads > 0) {
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (int t = 0; t < n; ++t) run_trial(t);
  } else {
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < n; ++t) run_trial(t);
  }
#else
  for (int t = 0; t < n; ++t) run_trial(t);
#endif

  int best = -1;
  for (int t = 0; t < n; ++t) {
    if (!trials[t].ok) continue;
    if (best < 0 || trials[t].wer < trials[best].wer ||
        (trials[t].wer == trials[best].wer && trials[t].cer < trials[best].cer))
      best = t;
  }
  if (best < 0) throw Error("every tuning trial failed");
  TuneOutcome out;
  out.best = base;
  out.best.alpha = trials[best].alpha;
  out.best.beta = trials[best].beta;
  out.best.gamma = trials[best].gamma;
  out.best_trial = best;
  out.trials = std::move(trials);
  return out;
}

std::string format_trial_log(const std::vector<TrialResult> &trials) {
  std::string out = "trial_id\talpha\tbeta\tgamma\twer\tcer\tstatus\n";
  char buf[256];
  for (const TrialResult &t : trials) {
    if (t.ok) {
      snprintf(buf, sizeof(buf), "%d\t%.17g\t%.17g\t%.17g\t%.6f\t%.6f\tok\n",
               t.trial_id, t.alpha, t.beta, t.gamma, t.wer, t.cer);
    } else {
      snprintf(buf, sizeof(buf), "%d\t%.17g\t%.17g\t%.17g\t-\t-\tfailed\n",
               t.trial_id, t.alpha, t.beta, t.gamma);
    }
    out += buf;
  }
  return out;
}

}  // namespace lexfree

// tests/test_tune.cc

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

#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "lexfree/batch.h"
#include "lexfree/decoder.h"
#include "lexfree/errors.h"
#include "lexfree/tune.h"
#include "test_util.h"

using namespace lexfree;

namespace {

struct TuneFixture {
  TokenSet ts = testutil::tiny_tokens(2);
  NGramModel lm = testutil::char_lm_from({"ab a", "a ba", "ab ba a"}, 2, ts);
  CharNgramScorer scorer{lm, ts};
  std::vector<Utterance> dev;
  DecoderOptions base;

  TuneFixture() {
    Utterance u1;
    u1.utt_id = "u1";
    u1.emission = testutil::one_hot_emissions(ts, {0, 1});
    u1.reference = "ab";
    Utterance u2;
    u2.utt_id = "u2";
    u2.emission = testutil::one_hot_emissions(ts, {0, ts.silence_index(), 0});
    u2.reference = "a a";
    dev = {u1, u2};
    base.mode = DecodeMode::kCharLmFree;
  }

  SearchSpace space() const {
    SearchSpace s;
    s.alpha_lo = 0.1;
    s.alpha_hi = 2.0;
    s.beta_lo = -1.0;
    s.beta_hi = 1.0;
    s.gamma_lo = -1.0;
    s.gamma_hi = 1.0;
    s.n_trials = 6;
    s.seed = 7;
    return s;
  }
};

}  // namespace

TEST_CASE("uniform_open stays strictly inside the interval") {
  std::mt19937_64 rng(123);
  for (int i = 0; i < 20000; ++i) {
    const double u = uniform_open(rng, 0.0, 1.0);
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
  for (int i = 0; i < 20000; ++i) {
    const double u = uniform_open(rng, -2.0, -1.0);
    CHECK(u > -2.0);
    CHECK(u < -1.0);
  }
  // Same seed, same stream.
  std::mt19937_64 a(9), b(9);
  for (int i = 0; i < 100; ++i)
    CHECK(uniform_open(a, 0.0, 5.0) == uniform_open(b, 0.0, 5.0));
}

TEST_CASE("random search picks the best trial by WER then CER") {
  TuneFixture fx;
  const TuneOutcome out = random_search(fx.dev, nullptr, fx.scorer, nullptr,
                                        fx.base, fx.space());
  REQUIRE(static_cast<int>(out.trials.size()) == fx.space().n_trials);
  const TrialResult &best = out.trials[out.best_trial];
  CHECK(best.ok);
  CHECK(out.best.alpha == best.alpha);
  CHECK(out.best.beta == best.beta);
  CHECK(out.best.gamma == best.gamma);
  CHECK(out.best.mode == fx.base.mode);
  int n_ok = 0;
  for (const TrialResult &t : out.trials) {
    if (!t.ok) continue;
    ++n_ok;
    const bool le = best.wer < t.wer ||
                    (best.wer == t.wer && best.cer <= t.cer);
    CHECK(le);
  }
  CHECK(n_ok == fx.space().n_trials);  // free mode never fails to decode

  SearchSpace one = fx.space();
  one.n_trials = 1;
  CHECK(random_search(fx.dev, nullptr, fx.scorer, nullptr, fx.base, one)
            .best_trial == 0);
}

TEST_CASE("tuning is reproducible and thread-count independent") {
  TuneFixture fx;
  const TuneOutcome a = random_search(fx.dev, nullptr, fx.scorer, nullptr,
                                      fx.base, fx.space(), 1);
  const TuneOutcome b = random_search(fx.dev, nullptr, fx.scorer, nullptr,
                                      fx.base, fx.space(), 3);
  const TuneOutcome c = random_search(fx.dev, nullptr, fx.scorer, nullptr,
                                      fx.base, fx.space(), 1);
  CHECK(a.best_trial == b.best_trial);
  CHECK(b.best_trial == c.best_trial);
  const std::string log = format_trial_log(a.trials);
  CHECK(log == format_trial_log(b.trials));
  CHECK(log == format_trial_log(c.trials));
  CHECK(log.find("trial_id\talpha\tbeta\tgamma\twer\tcer\tstatus\n") == 0);
  CHECK(log.find("\tok\n") != std::string::npos);

  // A different seed explores a different sample set.
  SearchSpace reseeded = fx.space();
  reseeded.seed = 8;
  const TuneOutcome d = random_search(fx.dev, nullptr, fx.scorer, nullptr,
                                      fx.base, reseeded);
  CHECK(d.trials[0].alpha != a.trials[0].alpha);
}

TEST_CASE("tuning validates its inputs") {
  TuneFixture fx;
  SearchSpace s = fx.space();

  s.n_trials = 0;
  CHECK_THROWS_AS(
      random_search(fx.dev, nullptr, fx.scorer, nullptr, fx.base, s), Error);

  s = fx.space();
  s.alpha_lo = s.alpha_hi = 1.0;
  CHECK_THROWS_AS(
      random_search(fx.dev, nullptr, fx.scorer, nullptr, fx.base, s), Error);
  s = fx.space();
  s.beta_lo = 2.0;
  s.beta_hi = -2.0;
  CHECK_THROWS_AS(
      random_search(fx.dev, nullptr, fx.scorer, nullptr, fx.base, s), Error);

  CHECK_THROWS_AS(
      random_search({}, nullptr, fx.scorer, nullptr, fx.base, fx.space()),
      EmptyCorpusError);
}

TEST_CASE("tuning reports failure when every trial fails") {
  // A one-frame utterance that can only reach a mid-spelling trie node under
  // a zero beam threshold; no weight draw rescues it.
  const TokenSet ts = testutil::tiny_tokens(2);
  const NGramModel lm = testutil::char_lm_from({"ab a", "a ba"}, 2, ts);
  const CharNgramScorer scorer(lm, ts);
  const Lexicon lex = lexicon_from_words({"ab"}, ts);
  const LexiconTrie trie = build_trie(lex, ts);

  Utterance u;
  u.utt_id = "hopeless";
  u.emission = testutil::one_hot_emissions(ts, {0}, -0.001, -50.0);
  u.reference = "ab";

  DecoderOptions base;
  base.mode = DecodeMode::kCharLmLexicon;
  base.beam_threshold = 0.0;

  SearchSpace s;
  s.alpha_lo = 0.1;
  s.alpha_hi = 2.0;
  s.beta_lo = -1.0;
  s.beta_hi = 1.0;
  s.gamma_lo = -1.0;
  s.gamma_hi = 1.0;
  s.n_trials = 3;
  CHECK_THROWS_AS(random_search({u}, nullptr, scorer, &trie, base, s), Error);

  // The failure reason survives into the per-trial log.
  try {
    random_search({u}, nullptr, scorer, &trie, base, s);
  } catch (const Error &e) {
    CHECK(std::string(e.what()).find("failed") != std::string::npos);
  }
}

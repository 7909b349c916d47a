// tests/test_perplexity.cc

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

#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "lexfree/errors.h"
#include "lexfree/ngram_model.h"
#include "lexfree/perplexity.h"
#include "lexfree/token_set.h"
#include "test_util.h"

using namespace lexfree;

namespace {

// Unigram word model with the given probabilities; no unknown marker.
NGramModel toy_word_lm(const std::vector<std::pair<std::string, double>> &ps) {
  NGramModel lm(1, LmLevel::kWord);
  for (const auto &[w, p] : ps)
    lm.set_entry({lm.add_token(w)}, std::log10(p), 0.0);
  return lm;
}

}  // namespace

TEST_CASE("uniform model gives perplexity equal to the choice count") {
  const NGramModel lm =
      toy_word_lm({{"a", 1.0 / 3}, {"b", 1.0 / 3}, {"c", 1.0 / 3}});
  const PerplexityReport r =
      word_ppl_word_lm(lm, {"a b", "c"}, {"a", "b", "c"});
  CHECK(r.n_words == 3);
  CHECK(r.n_excluded == 0);
  CHECK(r.ppl == doctest::Approx(3.0).epsilon(1e-9));

  const NGramModel tenth = toy_word_lm({{"a", 0.1}});
  CHECK(word_ppl_word_lm(tenth, {"a a"}, {"a"}).ppl ==
        doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("word perplexity excludes out-of-vocabulary words but keeps context") {
  const std::vector<std::string> train = {"a b a", "b a b", "a b"};
  const NGramModel lm = testutil::word_lm_from(train, 2);
  const std::vector<std::string> corpus = {"a b", "b a"};

  const PerplexityReport full = word_ppl_word_lm(lm, corpus, {"a", "b"});
  CHECK(full.n_words == 4);
  CHECK(full.n_excluded == 0);

  // Explicit chain over the same sentences; no end-of-sentence term.
  double want = 0.0;
  for (const std::string &line : corpus) {
    LmContextState state = lm.start_state();
    for (const std::string &w : split_words(line)) {
      auto scored = lm.score(state, w);
      state = scored.first;
      want += scored.second;
    }
  }
  CHECK(full.log10_sum == doctest::Approx(want).epsilon(1e-12));
  CHECK(full.ppl ==
        doctest::Approx(std::pow(10.0, -want / 4.0)).epsilon(1e-9));

  // Excluding "b" halves the count; "b" still advances the LM context.
  const PerplexityReport part = word_ppl_word_lm(lm, corpus, {"a"});
  CHECK(part.n_words == 2);
  CHECK(part.n_excluded == 2);
  double want_a = 0.0;
  for (const std::string &line : corpus) {
    LmContextState state = lm.start_state();
    for (const std::string &w : split_words(line)) {
      auto scored = lm.score(state, w);
      state = scored.first;
      if (w == "a") want_a += scored.second;
    }
  }
  CHECK(part.log10_sum == doctest::Approx(want_a).epsilon(1e-12));

  CHECK_THROWS_AS(word_ppl_word_lm(lm, {"c c"}, {"a", "b"}),
                  EmptyCorpusError);
  CHECK_THROWS_AS(word_ppl_word_lm(lm, {}, {"a"}), EmptyCorpusError);
  const TokenSet ts = testutil::tiny_tokens(2);
  const NGramModel char_lm = testutil::char_lm_from(train, 2, ts);
  CHECK_THROWS_AS(word_ppl_word_lm(char_lm, corpus, {"a"}),
                  ModeMismatchError);
}

TEST_CASE("char-LM word scores chain letters and stop with the terminator") {
  const TokenSet ts = testutil::tiny_tokens(2);
  const NGramModel lm =
      testutil::char_lm_from({"ab a", "a ba", "ab ba a"}, 2, ts);
  const LmContextState start = lm.start_state();

  // Silence terminator: letters then the separator, state includes it.
  auto sil = word_logprob_char_lm(lm, ts, start, "ab", Terminator::kSilence);
  LmContextState state = start;
  double want = 0.0;
  for (const char *tok : {"a", "b", "|"}) {
    auto scored = lm.score(state, tok);
    state = scored.first;
    want += scored.second;
  }
  CHECK(sil.second == doctest::Approx(want).epsilon(1e-12));
  CHECK(sil.first.key() == state.key());

  // End-of-sentence terminator: finish joins the sum, the state does not
  // move past the letters.
  auto eos = word_logprob_char_lm(lm, ts, start, "ab", Terminator::kEos);
  LmContextState letters = start;
  double letters_sum = 0.0;
  for (const char *tok : {"a", "b"}) {
    auto scored = lm.score(letters, tok);
    letters = scored.first;
    letters_sum += scored.second;
  }
  CHECK(eos.second ==
        doctest::Approx(letters_sum + lm.finish(letters)).epsilon(1e-12));
  CHECK(eos.first.key() == letters.key());

  CHECK_THROWS_AS(word_logprob_char_lm(testutil::word_lm_from({"a b"}, 1), ts,
                                       start, "a", Terminator::kEos),
                  ModeMismatchError);
}

TEST_CASE("normalizer sums word probabilities and stays a sub-probability") {
  const TokenSet ts = testutil::tiny_tokens(2);
  const NGramModel lm =
      testutil::char_lm_from({"ab a", "a ba", "ab ba a"}, 2, ts);
  const LmContextState start = lm.start_state();
  const std::vector<std::string> words = {"a", "b", "ab", "ba"};

  for (Terminator term : {Terminator::kSilence, Terminator::kEos}) {
    double direct = 0.0;
    for (const std::string &w : words)
      direct +=
          std::pow(10.0, word_logprob_char_lm(lm, ts, start, w, term).second);
    CHECK(normalizer(lm, ts, start, words, term) ==
          doctest::Approx(direct).epsilon(1e-12));
    // Distinct spellings plus a terminator are disjoint events.
    CHECK(direct < 1.0 + 1e-9);
    CHECK(direct > 0.0);
  }
}

TEST_CASE("top-mass subset walks words in descending probability") {
  const NGramModel lm = toy_word_lm(
      {{"the", 0.5}, {"b", 0.2}, {"c", 0.2}, {"a", 0.1}});
  const std::vector<std::string> vocab = {"a", "b", "c", "the"};

  CHECK(top_mass_subset(lm, {}, vocab, 0.45) ==
        std::vector<std::string>{"the"});
  CHECK(top_mass_subset(lm, {}, vocab, 0.8) ==
        std::vector<std::string>{"the", "b", "c"});
  CHECK(top_mass_subset(lm, {}, vocab, 1.0) ==
        std::vector<std::string>{"the", "b", "c", "a"});
  CHECK(top_mass_subset(lm, {}, vocab, 7.0) ==
        std::vector<std::string>{"the", "b", "c", "a"});

  CHECK_THROWS_AS(top_mass_subset(lm, {}, vocab, 0.0), Error);
  CHECK_THROWS_AS(top_mass_subset(lm, {}, vocab, -0.5), Error);

  const TokenSet ts = testutil::tiny_tokens(1);
  const NGramModel char_lm = testutil::char_lm_from({"a a"}, 1, ts);
  CHECK_THROWS_AS(top_mass_subset(char_lm, {}, vocab, 0.9),
                  ModeMismatchError);
}

TEST_CASE("top-mass subset honors the conditioning context") {
  NGramModel lm(2, LmLevel::kWord);
  const int32_t the = lm.add_token("the");
  const int32_t a = lm.add_token("a");
  const int32_t cat = lm.add_token("cat");
  lm.set_entry({the}, std::log10(0.5), 0.0);
  lm.set_entry({a}, std::log10(0.3), 0.0);
  lm.set_entry({cat}, std::log10(0.2), 0.0);
  lm.set_entry({the, cat}, std::log10(0.9), 0.0);
  const std::vector<std::string> vocab = {"a", "cat", "the"};

  CHECK(top_mass_subset(lm, {}, vocab, 0.45) ==
        std::vector<std::string>{"the"});
  // After "the" the boosted bigram dominates.
  CHECK(top_mass_subset(lm, {"the"}, vocab, 0.5) ==
        std::vector<std::string>{"cat"});
}

TEST_CASE("char-LM perplexity bounds bracket and tighten with coverage") {
  const TokenSet ts = testutil::tiny_tokens(2);
  const std::vector<std::string> train = {"ab a", "a ba", "ab ba a", "ba ab"};
  const NGramModel char_lm = testutil::char_lm_from(train, 2, ts);
  const NGramModel word_lm = testutil::word_lm_from(train, 2);
  const std::vector<std::string> vocab = {"a", "ab", "ba"};
  const std::vector<std::string> corpus = {"ab a", "ba"};

  double prev_lower = 0.0;
  double upper = 0.0;
  for (double mass : {0.3, 0.6, 0.95, 1.0}) {
    const PerplexityReport r =
        char_lm_word_ppl_bounds(char_lm, word_lm, ts, corpus, vocab, mass);
    CHECK(r.n_words == 3);
    CHECK(r.n_excluded == 0);
    CHECK(r.coverage_mass == mass);
    CHECK(r.ppl_lower > 0.0);
    CHECK(r.ppl_lower <= r.ppl_upper * (1.0 + 1e-9));
    // The lower bound can only rise as coverage grows; the upper bound
    // ignores coverage entirely.
    CHECK(r.ppl_lower >= prev_lower * (1.0 - 1e-12));
    prev_lower = r.ppl_lower;
    if (upper == 0.0) upper = r.ppl_upper;
    CHECK(r.ppl_upper == doctest::Approx(upper).epsilon(1e-12));
  }

  // Full coverage renormalizes over the whole vocabulary; replicate that
  // denominator by hand.
  const PerplexityReport full =
      char_lm_word_ppl_bounds(char_lm, word_lm, ts, corpus, vocab, 1.0);
  double lower_sum = 0.0;
  int n = 0;
  for (const std::string &line : corpus) {
    const std::vector<std::string> words = split_words(line);
    LmContextState state = char_lm.start_state();
    for (size_t i = 0; i < words.size(); ++i) {
      const Terminator term = i + 1 == words.size() ? Terminator::kEos
                                                    : Terminator::kSilence;
      double denom = 0.0;
      for (const std::string &v : vocab)
        denom += std::pow(
            10.0,
            word_logprob_char_lm(char_lm, ts, state, v, term).second);
      auto scored = word_logprob_char_lm(char_lm, ts, state, words[i], term);
      lower_sum += scored.second - std::log10(denom);
      state = scored.first;
      ++n;
    }
  }
  CHECK(full.ppl_lower ==
        doctest::Approx(std::pow(10.0, -lower_sum / n)).epsilon(1e-9));
}

TEST_CASE("bounds bookkeeping for out-of-vocabulary words") {
  const TokenSet ts = testutil::tiny_tokens(2);
  const std::vector<std::string> train = {"ab a", "a ba", "ab ba a"};
  const NGramModel char_lm = testutil::char_lm_from(train, 2, ts);
  const NGramModel word_lm = testutil::word_lm_from(train, 2);

  // "ba" is spellable but outside the scoring vocabulary.
  const PerplexityReport r = char_lm_word_ppl_bounds(
      char_lm, word_lm, ts, {"ab ba a"}, {"a", "ab"}, 0.95);
  CHECK(r.n_words == 2);
  CHECK(r.n_excluded == 1);

  CHECK_THROWS_AS(char_lm_word_ppl_bounds(char_lm, word_lm, ts, {"ba"},
                                          {"a", "ab"}, 0.95),
                  EmptyCorpusError);
  CHECK_THROWS_AS(
      char_lm_word_ppl_bounds(char_lm, word_lm, ts, {}, {"a"}, 0.95),
      EmptyCorpusError);
  CHECK_THROWS_AS(char_lm_word_ppl_bounds(word_lm, word_lm, ts, {"a"}, {"a"},
                                          0.95),
                  ModeMismatchError);
  CHECK_THROWS_AS(char_lm_word_ppl_bounds(char_lm, char_lm, ts, {"a"}, {"a"},
                                          0.95),
                  ModeMismatchError);
}

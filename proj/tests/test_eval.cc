// tests/test_eval.cc

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

#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "lexfree/errors.h"
#include "lexfree/eval.h"
#include "test_util.h"

using namespace lexfree;

TEST_CASE("edit distance fixtures") {
  const EditAlignment del =
      edit_distance({"the", "cat", "sat"}, {"the", "cat"});
  CHECK(del.distance == 1);
  CHECK(del.subs == 0);
  CHECK(del.ins == 0);
  CHECK(del.dels == 1);
  CHECK(del.ops == std::vector<EditOp>{EditOp::kMatch, EditOp::kMatch,
                                       EditOp::kDel});

  const EditAlignment sub = edit_distance_chars("abc", "axc");
  CHECK(sub.distance == 1);
  CHECK(sub.subs == 1);
  CHECK(sub.ops ==
        std::vector<EditOp>{EditOp::kMatch, EditOp::kSub, EditOp::kMatch});

  const EditAlignment same = edit_distance({"a", "b"}, {"a", "b"});
  CHECK(same.distance == 0);
  CHECK(same.ops == std::vector<EditOp>{EditOp::kMatch, EditOp::kMatch});

  const EditAlignment ins = edit_distance({}, {"x", "y"});
  CHECK(ins.distance == 2);
  CHECK(ins.ins == 2);
  CHECK(edit_distance({"x"}, {}).dels == 1);
}

TEST_CASE("edit distance agrees with the recursive oracle") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> len(0, 5);
  std::uniform_int_distribution<int> sym(0, 2);
  const std::string alphabet = "abc";
  for (int it = 0; it < 200; ++it) {
    std::vector<std::string> ref(len(rng)), hyp(len(rng));
    for (auto &w : ref) w = std::string(1, alphabet[sym(rng)]);
    for (auto &w : hyp) w = std::string(1, alphabet[sym(rng)]);
    const EditAlignment got = edit_distance(ref, hyp);
    std::map<std::pair<size_t, size_t>, long> memo;
    CHECK(got.distance == testutil::edit_oracle(ref, hyp, 0, 0, &memo));
    // The op walk must consume both sequences and account for every edit.
    long takes_ref = 0, takes_hyp = 0, edits = 0;
    for (EditOp op : got.ops) {
      takes_ref += op != EditOp::kIns;
      takes_hyp += op != EditOp::kDel;
      edits += op != EditOp::kMatch;
    }
    CHECK(takes_ref == static_cast<long>(ref.size()));
    CHECK(takes_hyp == static_cast<long>(hyp.size()));
    CHECK(edits == got.distance);
    CHECK(got.distance == got.subs + got.ins + got.dels);
  }
}

TEST_CASE("error rates pool edits over the corpus") {
  const std::vector<EvalPair> pairs = {{"u1", "the cat sat", "the cat"},
                                       {"u2", "a b", "a b"}};
  const CorpusEval eval = evaluate_corpus(pairs);
  CHECK(eval.n_utts == 2);
  CHECK(eval.n_ref_words == 5);
  CHECK(eval.dels == 1);
  CHECK(eval.wer == doctest::Approx(20.0).epsilon(1e-12));
  // Character edits count the separator; 4 characters of " sat" drop.
  CHECK(eval.n_ref_chars == 14);
  CHECK(eval.char_edits == 4);
  CHECK(eval.cer == doctest::Approx(100.0 * 4 / 14).epsilon(1e-12));

  CHECK(wer({"a b c"}, {"a x c"}) == doctest::Approx(100.0 / 3).epsilon(1e-9));
  CHECK(cer({"a b"}, {"ab"}) == doctest::Approx(100.0 / 3).epsilon(1e-9));
  CHECK(wer({"a"}, {"a"}) == 0.0);
  CHECK_THROWS_AS(wer({"a", "b"}, {"a"}), LengthMismatchError);
  CHECK_THROWS_AS(cer({}, {"a"}), LengthMismatchError);
}

TEST_CASE("evaluation normalizes case and whitespace") {
  const CorpusEval eval =
      evaluate_corpus({{"u", "The  CAT", "the cat"}});
  CHECK(eval.wer == 0.0);
  CHECK(eval.cer == 0.0);
  CHECK(eval.utts[0].ref == "the cat");
  CHECK(eval.utts[0].hyp == "the cat");
  CHECK_FALSE(eval.utts[0].is_oov);

  const std::vector<std::string> vocab = {"the", "cat"};
  const CorpusEval flagged = evaluate_corpus(
      {{"a", "the DOG", "the dog"}, {"b", "the cat", "x"}}, &vocab);
  CHECK(flagged.utts[0].is_oov);
  CHECK_FALSE(flagged.utts[1].is_oov);

  CHECK_THROWS_AS(evaluate_corpus({}), EmptyCorpusError);
  CHECK_THROWS_AS(evaluate_corpus({{"u", "", "x"}, {"v", "  ", ""}}),
                  EmptyCorpusError);
}

TEST_CASE("utterances split by reference vocabulary coverage") {
  const std::vector<std::string> vocab = {"the", "cat"};
  const std::vector<EvalPair> pairs = {{"a", "the cat", "the"},
                                       {"b", "The Dog", "the dog"},
                                       {"c", "cat", "cat"}};
  const auto [iv, oov] = split_iv_oov(pairs, vocab);
  REQUIRE(iv.size() == 2);
  REQUIRE(oov.size() == 1);
  CHECK(iv[0].utt_id == "a");
  CHECK(iv[1].utt_id == "c");
  CHECK(oov[0].utt_id == "b");
}

TEST_CASE("recovery counts exact aligned matches of unknown words") {
  const std::vector<std::string> vocab = {"the", "cat"};
  const std::vector<EvalPair> pairs = {
      {"p0", "the cat", "the"},          // in vocabulary, one deletion
      {"p1", "the dog", "the dog"},      // dog recovered
      {"p2", "the wolf", "the cat"},     // wolf substituted
      {"p3", "dog runs", "dog"},         // dog recovered, runs deleted
  };
  const OOVReport r = oov_recovery(pairs, vocab);
  CHECK(r.n_iv_utts == 1);
  CHECK(r.n_oov_utts == 3);
  CHECK(r.iv_eval.wer == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(r.oov_eval.wer == doctest::Approx(100.0 / 3).epsilon(1e-12));
  CHECK(r.n_oov_types == 3);
  CHECK(r.n_recovered_types == 1);
  CHECK(r.n_oov_occurrences == 4);
  CHECK(r.n_recovered_occurrences == 2);
  CHECK(r.oov_occurrence_recovery == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(r.oov_type_recovery == doctest::Approx(100.0 / 3).epsilon(1e-12));

  // Everything unknown and everything matched: full recovery.
  const OOVReport all = oov_recovery({{"q", "zeb ra", "zeb ra"}}, {});
  CHECK(all.n_oov_types == 2);
  CHECK(all.oov_type_recovery == 100.0);
  CHECK(all.oov_occurrence_recovery == 100.0);

  // Substituted everywhere: nothing recovered.
  const OOVReport none = oov_recovery({{"q", "zeb", "cat"}}, {"cat"});
  CHECK(none.n_oov_occurrences == 1);
  CHECK(none.n_recovered_occurrences == 0);
  CHECK(none.oov_occurrence_recovery == 0.0);
}

TEST_CASE("evaluation report lists utterances and summary lines") {
  const std::vector<std::string> vocab = {"the", "cat"};
  const std::vector<EvalPair> pairs = {
      {"p0", "the cat", "the"},
      {"p1", "the dog", "the dog"},
      {"p2", "the wolf", "the cat"},
      {"p3", "dog runs", "dog"},
  };
  const CorpusEval overall = evaluate_corpus(pairs, &vocab);
  const OOVReport oov = oov_recovery(pairs, vocab);
  std::ostringstream out;
  write_eval_report(out, overall, &oov);
  const std::string text = out.str();
  CHECK(text.find("p0\tthe cat\tthe\t0\t0\t1\t0\n") != std::string::npos);
  CHECK(text.find("p2\tthe wolf\tthe cat\t1\t0\t0\t1\n") !=
        std::string::npos);
  CHECK(text.find("# utts 4 ref_words 8") != std::string::npos);
  CHECK(text.find("# overall wer 37.50 cer 43.33") != std::string::npos);
  CHECK(text.find("# oov_types 3 recovered 1 rate 33.33") !=
        std::string::npos);
  CHECK(text.find("# oov_occurrences 4 recovered 2 rate 50.00") !=
        std::string::npos);

  // Without the recovery block the report stops at the overall line.
  std::ostringstream plain;
  write_eval_report(plain, overall, nullptr);
  CHECK(plain.str().find("# oov_types") == std::string::npos);
}

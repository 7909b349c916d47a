// include/lexfree/eval.h

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

#ifndef LEXFREE_EVAL_H_
#define LEXFREE_EVAL_H_

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace lexfree {

enum class EditOp { kMatch, kSub, kIns, kDel };

struct EditAlignment {
  long distance = 0;
  long subs = 0;
  long ins = 0;
  long dels = 0;
  std::vector<EditOp> ops;
};

// Minimal unit-cost edit script; traceback prefers substitution over
// insertion over deletion when costs tie. Insertions consume hypothesis
// items, deletions consume reference items.
EditAlignment edit_distance(const std::vector<std::string> &ref,
                            const std::vector<std::string> &hyp);
EditAlignment edit_distance_chars(const std::string &ref,
                                  const std::string &hyp);

struct EvalPair {
  std::string utt_id;
  std::string ref;
  std::string hyp;
};

struct UttEval {
  std::string utt_id;
  std::string ref;
  std::string hyp;
  long subs = 0;
  long ins = 0;
  long dels = 0;
  long ref_words = 0;
  long char_edits = 0;
  long ref_chars = 0;
  bool is_oov = false;
};

struct CorpusEval {
  double wer = 0.0;  // percent, pooled over the corpus
  double cer = 0.0;  // percent; words joined by one separator character
  long n_utts = 0;
  long n_ref_words = 0;
  long n_ref_chars = 0;
  long subs = 0;
  long ins = 0;
  long dels = 0;
  long char_edits = 0;
  std::vector<UttEval> utts;
};

// Pools edits over all pairs: wer = 100 * (S+I+D) / total reference words.
// When `vocab` is given each record's is_oov flag marks references holding a
// word outside it. Throws EmptyCorpusError when there is nothing to score.
CorpusEval evaluate_corpus(const std::vector<EvalPair> &pairs,
                           const std::vector<std::string> *vocab = nullptr);

double wer(const std::vector<std::string> &refs,
           const std::vector<std::string> &hyps);
double cer(const std::vector<std::string> &refs,
           const std::vector<std::string> &hyps);

// OOV subset: utterances whose reference contains at least one word outside
// the vocabulary; IV is the complement.
std::pair<std::vector<EvalPair>, std::vector<EvalPair>> split_iv_oov(
    const std::vector<EvalPair> &pairs,
    const std::vector<std::string> &vocab);

struct OOVReport {
  long n_iv_utts = 0;
  long n_oov_utts = 0;
  CorpusEval iv_eval;   // Meaningful only when n_iv_utts > 0.
  CorpusEval oov_eval;  // Meaningful only when n_oov_utts > 0.
  long n_oov_types = 0;
  long n_recovered_types = 0;
  long n_oov_occurrences = 0;
  long n_recovered_occurrences = 0;
  double oov_type_recovery = 0.0;        // percent
  double oov_occurrence_recovery = 0.0;  // percent
};

// An OOV occurrence counts as recovered iff the word the edit alignment pairs
// it with is an exact string match. A type is recovered when at least one of
// its occurrences is.
OOVReport oov_recovery(const std::vector<EvalPair> &pairs,
                       const std::vector<std::string> &vocab);

// Per-utterance TSV block (utt_id, ref, hyp, subs, ins, dels, is_oov)
// followed by a '#'-prefixed summary; pass the OOV report when available.
void write_eval_report(std::ostream &out, const CorpusEval &overall,
                       const OOVReport *oov);

}  // namespace lexfree

#endif  // LEXFREE_EVAL_H_

// include/lexfree/decoder.h

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

#ifndef LEXFREE_DECODER_H_
#define LEXFREE_DECODER_H_

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "lexfree/emission.h"
#include "lexfree/lexicon.h"
#include "lexfree/ngram_model.h"
#include "lexfree/token_set.h"

namespace lexfree {

enum class DecodeMode { kWordLmLexicon, kCharLmLexicon, kCharLmFree };
enum class SilenceTerm { kPerSegment, kPerFrame };

struct DecoderOptions {
  // Transcription score: am + alpha * lm + beta * |words| + gamma * silences.
  double alpha = 1.0;
  double beta = 0.0;
  double gamma = 0.0;
  int beam_size = 100;
  // Margin below the frame best at which hypotheses drop; +inf keeps all.
  double beam_threshold = std::numeric_limits<double>::infinity();
  DecodeMode mode = DecodeMode::kCharLmFree;
  // Whether gamma applies once per silence label or at every silence frame.
  SilenceTerm silence_term = SilenceTerm::kPerSegment;
  // Word-LM lexicon mode only: trie lookahead scores during letter
  // extension, retracted at completion. Pruning-only; never changes any
  // completed transcription's score. Needs a smeared trie.
  bool use_smearing = false;
};

// Natural-log language model interface the decoder consumes. Char-level
// scorers advance on token-set indices; word-level scorers on lexicon word
// ids (or word strings, for audits). Implementations must be immutable and
// safe for concurrent use; an n-gram adapter is below, and anything else
// (e.g. an external convolutional LM service) can slot in the same way.
class DecoderScorer {
 public:
  virtual ~DecoderScorer() = default;
  virtual LmLevel level() const = 0;
  virtual LmContextState start() const = 0;
  virtual std::pair<LmContextState, double> score_token(
      const LmContextState &state, int token) const;
  virtual std::pair<LmContextState, double> score_word(
      const LmContextState &state, int32_t word_id) const;
  virtual std::pair<LmContextState, double> score_word_text(
      const LmContextState &state, const std::string &word) const;
  virtual double finish(const LmContextState &state) const = 0;
};

// Char n-gram adapter: token-set indices to LM ids, log10 to natural log.
// Construction fails fast with UnknownToken if any token in ts is missing
// from the model vocabulary. Keeps references; both must outlive it.
class CharNgramScorer : public DecoderScorer {
 public:
  CharNgramScorer(const NGramModel &lm, const TokenSet &ts);
  LmLevel level() const override { return LmLevel::kChar; }
  LmContextState start() const override;
  std::pair<LmContextState, double> score_token(const LmContextState &state,
                                                int token) const override;
  double finish(const LmContextState &state) const override;

 private:
  const NGramModel &lm_;
  std::vector<int32_t> token_to_lm_;
};

// Word n-gram adapter; lexicon words missing from the model vocabulary map
// to the unknown marker. Keeps references; both must outlive it.
class WordNgramScorer : public DecoderScorer {
 public:
  WordNgramScorer(const NGramModel &lm, const Lexicon &lex);
  LmLevel level() const override { return LmLevel::kWord; }
  LmContextState start() const override;
  std::pair<LmContextState, double> score_word(
      const LmContextState &state, int32_t word_id) const override;
  std::pair<LmContextState, double> score_word_text(
      const LmContextState &state, const std::string &word) const override;
  double finish(const LmContextState &state) const override;

 private:
  const NGramModel &lm_;
  std::vector<int32_t> word_to_lm_;
};

struct DecodeResult {
  std::vector<std::string> words;
  // One token index per frame.
  EncodedCharSeq alignment;
  double am_score = 0.0;
  // Natural log, unweighted; alpha applies in total_score.
  double lm_score = 0.0;
  // Weighted: beta * |words| and gamma * silence term.
  double word_penalty = 0.0;
  double silence_penalty = 0.0;
  double total_score = 0.0;
  // 1 + max sorted-beam rank over the winning hypothesis's ancestors; a
  // re-decode at this beam size reproduces the result exactly.
  int effective_beam_size = 0;
};

// Frame-synchronous Viterbi beam search for the best transcription under
// am + alpha * lm + beta * |words| + gamma * silences.
//
// Consecutive identical alignment tokens are repeats of one label. A new
// letter label advances the char LM (char modes) and must follow a trie
// edge (lexicon modes). A new silence label closes the open word: beta
// applies, lexicon modes need a word-bearing trie node (branching one
// hypothesis per homographic word in word-LM mode), char modes advance the
// LM on silence. Silence with nothing open is legal only at the trie root,
// which admits leading silence. Gamma applies per new silence label
// (per_segment) or every silence frame (per_frame). Hypotheses sharing
// (LM state, trie node, last token) merge keeping the max. Per frame,
// hypotheses below best-minus-threshold drop and the top beam_size survive.
// At the last frame open words are force-closed (word-bearing node
// required; lexicon-free closes unconditionally) and the end-of-sentence
// LM score joins with weight alpha.
//
// Ties anywhere break lexicographically on (words, alignment) after score
// equality within 1e-12.
//
// lex is required in lexicon modes and ignored otherwise; tr may be null.
// Throws ModeMismatch on inconsistent configuration, EmptyBeam when
// nothing survives to finalization.
DecodeResult decode(const EmissionMatrix &em, const TransitionMatrix *tr,
                    const DecoderScorer &lm, const LexiconTrie *lex,
                    const DecoderOptions &opt);

// Score components of one explicit alignment + transcription, recomputed
// from scratch by the non-search route. Shared by the total_score audit
// and the exhaustive reference decoder.
struct ScoreBreakdown {
  double am = 0.0;
  double lm = 0.0;
  double word_penalty = 0.0;
  double silence_penalty = 0.0;
  double total = 0.0;
};

ScoreBreakdown score_alignment(const EmissionMatrix &em,
                               const TransitionMatrix *tr,
                               const DecoderScorer &lm,
                               const DecoderOptions &opt,
                               const EncodedCharSeq &alignment,
                               const std::vector<std::string> &words);

// Recomputes the result's total from its alignment and transcription;
// must equal result.total_score within 1e-9. The decoder bookkeeping
// audit. Throws LengthMismatch when the alignment length is not the frame
// count.
double total_score(const DecodeResult &result, const EmissionMatrix &em,
                   const TransitionMatrix *tr, const DecoderScorer &lm,
                   const DecoderOptions &opt);

}  // namespace lexfree

#endif  // LEXFREE_DECODER_H_

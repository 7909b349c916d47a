// src/reference_decoder.cc

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

#include "lexfree/reference_decoder.h"

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "lexfree/errors.h"

namespace lexfree {

namespace {

constexpr double kTieEps = 1e-12;

struct Best {
  bool set = false;
  ScoreBreakdown sb;
  std::vector<std::string> words;
  EncodedCharSeq alignment;
};

void consider(Best &best, const ScoreBreakdown &sb,
              const std::vector<std::string> &words,
              const EncodedCharSeq &align) {
  bool take = false;
  if (!best.set) {
    take = true;
  } else if (sb.total > best.sb.total + kTieEps) {
    take = true;
  } else if (sb.total >= best.sb.total - kTieEps) {
    take = words != best.words ? words < best.words
                               : align < best.alignment;
  }
  if (take) {
    best.set = true;
    best.sb = sb;
    best.words = words;
    best.alignment = align;
  }
}

}  // namespace

DecodeResult brute_force_decode(const EmissionMatrix &em,
                                const TransitionMatrix *tr,
                                const DecoderScorer &lm,
                                const LexiconTrie *lex,
                                const DecoderOptions &opt) {
  const int T = em.frames;
  const int N = em.tokens();
  if (T < 1) throw Error("cannot decode an empty emission matrix");
  if (tr && tr->tokens != N)
    throw LengthMismatchError("transition matrix size " +
                              std::to_string(tr->tokens) + " vs " +
                              std::to_string(N) + " emission tokens");
  const bool lexical = opt.mode != DecodeMode::kCharLmFree;
  if (lexical && !lex)
    throw ModeMismatchError("lexicon mode without a lexicon trie");
  const LmLevel want = opt.mode == DecodeMode::kWordLmLexicon
                           ? LmLevel::kWord
                           : LmLevel::kChar;
  if (lm.level() != want)
    throw ModeMismatchError("scorer level does not match the decode mode");
  double combos = 1.0;
  for (int t = 0; t < T; ++t) combos *= N;
  if (combos > 1e6)
    throw TooLargeError("state space " + std::to_string(combos) +
                        " exceeds the exhaustive decoding limit");

  const TokenSet &ts = em.token_set;
  const int sil = ts.silence_index();
  Best best;

  const auto min_string_word = [&](int32_t node) {
    const auto &ids = lex->node(node).word_ids;
    int32_t win = ids.front();
    for (int32_t id : ids)
      if (lex->words()[id] < lex->words()[win]) win = id;
    return win;
  };

  EncodedCharSeq align(T, 0);
  while (true) {
    const EncodedCharSeq labels = collapse_alignment(align);
    if (opt.mode == DecodeMode::kCharLmFree) {
      bool valid = true;
      std::vector<std::string> words;
      try {
        words = decode_chars(labels, ts);
      } catch (const DanglingRepetitionError &) {
        valid = false;
      }
      if (valid)
        consider(best, score_alignment(em, tr, lm, opt, align, words), words,
                 align);
    } else {
      // Split into silence-delimited segments; empties are legal only at the
      // utterance boundaries (collapse forbids them in the middle).
      std::vector<EncodedCharSeq> segs;
      EncodedCharSeq cur;
      for (int v : labels) {
        if (v == sil) {
          segs.push_back(cur);
          cur.clear();
        } else {
          cur.push_back(v);
        }
      }
      segs.push_back(cur);
      bool valid = true;
      std::vector<int32_t> nodes;
      for (size_t s = 0; s < segs.size() && valid; ++s) {
        if (segs[s].empty()) {
          if (s != 0 && s + 1 != segs.size()) valid = false;
          continue;
        }
        const int32_t node = lex->walk(LexiconTrie::kRoot, segs[s]);
        if (node < 0 || !lex->word_bearing(node)) {
          valid = false;
          continue;
        }
        nodes.push_back(node);
      }
      if (valid) {
        if (opt.mode == DecodeMode::kCharLmLexicon) {
          std::vector<std::string> words;
          words.reserve(nodes.size());
          for (int32_t node : nodes)
            words.push_back(lex->words()[min_string_word(node)]);
          consider(best, score_alignment(em, tr, lm, opt, align, words),
                   words, align);
        } else {
          std::vector<std::string> words(nodes.size());
          std::function<void(size_t)> expand = [&](size_t d) {
            if (d == nodes.size()) {
              consider(best, score_alignment(em, tr, lm, opt, align, words),
                       words, align);
              return;
            }
            for (int32_t wid : lex->node(nodes[d]).word_ids) {
              words[d] = lex->words()[wid];
              expand(d + 1);
            }
          };
          expand(0);
        }
      }
    }
    int pos = T - 1;
    while (pos >= 0 && ++align[pos] == N) {
      align[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  if (!best.set)
    throw EmptyBeamError("no alignment satisfies the lexicon constraint");

  DecodeResult result;
  result.words = std::move(best.words);
  result.alignment = std::move(best.alignment);
  result.am_score = best.sb.am;
  result.lm_score = best.sb.lm;
  result.word_penalty = best.sb.word_penalty;
  result.silence_penalty = best.sb.silence_penalty;
  result.total_score = best.sb.total;
  result.effective_beam_size = 0;
  return result;
}

}  // namespace lexfree

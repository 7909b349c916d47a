// src/decoder.cc

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

#include "lexfree/decoder.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "lexfree/errors.h"

namespace lexfree {

namespace {

constexpr double kLn10 = 2.302585092994045684;
// Scores this close count as tied and fall to the lexicographic rule.
constexpr double kTieEps = 1e-12;

}  // namespace

std::pair<LmContextState, double> DecoderScorer::score_token(
    const LmContextState &, int) const {
  throw ModeMismatchError("this scorer does not score character tokens");
}

std::pair<LmContextState, double> DecoderScorer::score_word(
    const LmContextState &, int32_t) const {
  throw ModeMismatchError("this scorer does not score words");
}

std::pair<LmContextState, double> DecoderScorer::score_word_text(
    const LmContextState &, const std::string &) const {
  throw ModeMismatchError("this scorer does not score words");
}

CharNgramScorer::CharNgramScorer(const NGramModel &lm, const TokenSet &ts)
    : lm_(lm) {
  if (lm.level() != LmLevel::kChar)
    throw ModeMismatchError("char scorer needs a char-level model");
  token_to_lm_.reserve(ts.size());
  for (int i = 0; i < ts.size(); ++i) {
    const int32_t id = lm.token_id(ts.token(i));
    if (id < 0 || !lm.find(Gram{id}))
      throw UnknownTokenError("token \"" + ts.token(i) +
                              "\" missing from the character LM");
    token_to_lm_.push_back(id);
  }
}

LmContextState CharNgramScorer::start() const { return lm_.start_state(); }

std::pair<LmContextState, double> CharNgramScorer::score_token(
    const LmContextState &state, int token) const {
  auto scored = lm_.score_id(state, token_to_lm_.at(token));
  return {std::move(scored.first), kLn10 * scored.second};
}

double CharNgramScorer::finish(const LmContextState &state) const {
  return kLn10 * lm_.finish(state);
}

WordNgramScorer::WordNgramScorer(const NGramModel &lm, const Lexicon &lex)
    : lm_(lm) {
  if (lm.level() != LmLevel::kWord)
    throw ModeMismatchError("word scorer needs a word-level model");
  word_to_lm_.reserve(lex.size());
  for (const std::string &word : lex.words) {
    int32_t id = lm.token_id(word);
    if (id < 0 || !lm.find(Gram{id})) id = lm.unk_id();
    if (id < 0)
      throw UnknownTokenError("word \"" + word +
                              "\" missing and the model has no unknown "
                              "marker");
    word_to_lm_.push_back(id);
  }
}

LmContextState WordNgramScorer::start() const { return lm_.start_state(); }

std::pair<LmContextState, double> WordNgramScorer::score_word(
    const LmContextState &state, int32_t word_id) const {
  auto scored = lm_.score_id(state, word_to_lm_.at(word_id));
  return {std::move(scored.first), kLn10 * scored.second};
}

std::pair<LmContextState, double> WordNgramScorer::score_word_text(
    const LmContextState &state, const std::string &word) const {
  auto scored = lm_.score(state, word);
  return {std::move(scored.first), kLn10 * scored.second};
}

double WordNgramScorer::finish(const LmContextState &state) const {
  return kLn10 * lm_.finish(state);
}

namespace {

struct Hyp {
  // Exact accumulated transcription score: am + alpha*lm + beta*wc +
  // gamma*sc. Pruning adds alpha*pending on top.
  double true_score = 0.0;
  double am = 0.0;
  double lm = 0.0;
  int32_t word_count = 0;
  int32_t silence_count = 0;
  LmContextState lm_state;
  int32_t node = LexiconTrie::kRoot;
  // Smear lookahead currently credited to the open word (raw natural log).
  double pending = 0.0;
  int16_t last_token = -1;
  // Backtrace.
  int32_t parent = -1;
  int16_t token = -1;
  int32_t word_id = -1;
  int32_t rank = 0;

  double prune_score(double alpha) const {
    return true_score + alpha * pending;
  }
};

struct MergeKey {
  Gram lm_key;
  int32_t node;
  int16_t last_token;

  bool operator==(const MergeKey &o) const {
    return node == o.node && last_token == o.last_token && lm_key == o.lm_key;
  }
};

struct MergeKeyHash {
  size_t operator()(const MergeKey &k) const {
    uint64_t h = GramHash()(k.lm_key);
    h ^= static_cast<uint64_t>(static_cast<uint32_t>(k.node)) *
         0x9e3779b97f4a7c15ull;
    h = (h ^ (h >> 29)) * 0xbf58476d1ce4e5b9ull;
    h ^= static_cast<uint16_t>(k.last_token);
    return static_cast<size_t>(h);
  }
};

struct Trace {
  std::vector<std::string> words;
  EncodedCharSeq alignment;
};

struct Final {
  double score = 0.0;
  double am = 0.0;
  double lm = 0.0;
  int32_t word_count = 0;
  int32_t silence_count = 0;
  int32_t beam_index = -1;
  int32_t final_word_id = -1;
  Trace trace;
};

class BeamSearch {
 public:
  BeamSearch(const EmissionMatrix &em, const TransitionMatrix *tr,
             const DecoderScorer &lm, const LexiconTrie *lex,
             const DecoderOptions &opt)
      : em_(em), tr_(tr), lm_(lm), lex_(lex), opt_(opt) {
    if (em.frames < 1) throw Error("cannot decode an empty emission matrix");
    if (tr && tr->tokens != em.tokens())
      throw LengthMismatchError("transition matrix size " +
                                std::to_string(tr->tokens) +
                                " vs " + std::to_string(em.tokens()) +
                                " emission tokens");
    if (opt.beam_size < 1) throw Error("beam_size must be >= 1");
    if (std::isnan(opt.beam_threshold) || opt.beam_threshold < 0)
      throw Error("beam_threshold must be >= 0");
    const bool lexical = opt.mode != DecodeMode::kCharLmFree;
    if (lexical && !lex)
      throw ModeMismatchError("lexicon mode without a lexicon trie");
    const LmLevel want = opt.mode == DecodeMode::kWordLmLexicon
                             ? LmLevel::kWord
                             : LmLevel::kChar;
    if (lm.level() != want)
      throw ModeMismatchError("scorer level does not match the decode mode");
    if (opt.use_smearing) {
      if (opt.mode != DecodeMode::kWordLmLexicon)
        throw ModeMismatchError("smearing applies to word-LM lexicon mode");
      if (!lex->smeared())
        throw ModeMismatchError("smearing enabled but the trie is unsmeared");
    }
  }

  DecodeResult run();

 private:
  // Parent chain of a candidate whose parent index points into
  // beams_[parent_frame].
  Trace trace(const Hyp &h, int parent_frame) const;
  bool trace_less(const Hyp &a, const Hyp &b, int parent_frame) const;
  void emit(std::unordered_map<MergeKey, Hyp, MergeKeyHash> &merged,
            int parent_frame, Hyp &&c) const;
  Hyp extend(const Hyp &h, int32_t parent_idx, int v) const;
  int32_t min_string_word(int32_t node) const;

  const EmissionMatrix &em_;
  const TransitionMatrix *tr_;
  const DecoderScorer &lm_;
  const LexiconTrie *lex_;
  const DecoderOptions &opt_;
  std::vector<std::vector<Hyp>> beams_;
};

Hyp BeamSearch::extend(const Hyp &h, int32_t parent_idx, int v) const {
  Hyp c;
  c.true_score = h.true_score;
  c.am = h.am;
  c.lm = h.lm;
  c.word_count = h.word_count;
  c.silence_count = h.silence_count;
  c.lm_state = h.lm_state;
  c.node = h.node;
  c.pending = h.pending;
  c.last_token = static_cast<int16_t>(v);
  c.parent = parent_idx;
  c.token = static_cast<int16_t>(v);
  return c;
}

Trace BeamSearch::trace(const Hyp &h, int parent_frame) const {
  std::vector<int32_t> word_ids;
  Trace out;
  if (h.word_id >= 0) word_ids.push_back(h.word_id);
  if (h.token >= 0) out.alignment.push_back(h.token);
  int32_t p = h.parent;
  int f = parent_frame;
  while (p >= 0) {
    const Hyp &a = beams_[f][p];
    if (a.word_id >= 0) word_ids.push_back(a.word_id);
    if (a.token >= 0) out.alignment.push_back(a.token);
    p = a.parent;
    --f;
  }
  std::reverse(out.alignment.begin(), out.alignment.end());
  if (opt_.mode == DecodeMode::kCharLmFree) {
    out.words =
        decode_chars(collapse_alignment(out.alignment), em_.token_set);
  } else {
    out.words.reserve(word_ids.size());
    for (auto it = word_ids.rbegin(); it != word_ids.rend(); ++it)
      out.words.push_back(lex_->words()[*it]);
  }
  return out;
}

bool BeamSearch::trace_less(const Hyp &a, const Hyp &b,
                            int parent_frame) const {
  const Trace ta = trace(a, parent_frame);
  const Trace tb = trace(b, parent_frame);
  if (ta.words != tb.words) return ta.words < tb.words;
  return ta.alignment < tb.alignment;
}

void BeamSearch::emit(
    std::unordered_map<MergeKey, Hyp, MergeKeyHash> &merged,
    int parent_frame, Hyp &&c) const {
  MergeKey key{c.lm_state.key(), c.node, c.last_token};
  auto it = merged.find(key);
  if (it == merged.end()) {
    merged.emplace(std::move(key), std::move(c));
    return;
  }
  Hyp &cur = it->second;
  if (c.true_score > cur.true_score + kTieEps) {
    cur = std::move(c);
  } else if (c.true_score >= cur.true_score - kTieEps &&
             trace_less(c, cur, parent_frame)) {
    cur = std::move(c);
  }
}

int32_t BeamSearch::min_string_word(int32_t node) const {
  const auto &ids = lex_->node(node).word_ids;
  int32_t best = ids.front();
  for (int32_t id : ids)
    if (lex_->words()[id] < lex_->words()[best]) best = id;
  return best;
}

DecodeResult BeamSearch::run() {
  const int T = em_.frames;
  const int N = em_.tokens();
  const TokenSet &ts = em_.token_set;
  const int sil = ts.silence_index();
  const double alpha = opt_.alpha;
  const bool per_frame = opt_.silence_term == SilenceTerm::kPerFrame;

  beams_.assign(T + 1, {});
  {
    Hyp seed;
    seed.lm_state = lm_.start();
    beams_[0].push_back(std::move(seed));
  }

  for (int t = 0; t < T; ++t) {
    std::unordered_map<MergeKey, Hyp, MergeKeyHash> merged;
    for (size_t i = 0; i < beams_[t].size(); ++i) {
      const Hyp &hyp = beams_[t][i];
      const bool open = hyp.last_token >= 0 && hyp.last_token != sil;
      for (int v = 0; v < N; ++v) {
        const double am_gain =
            em_.at(t, v) +
            (tr_ && hyp.last_token >= 0 ? tr_->at(hyp.last_token, v) : 0.0);
        if (v == hyp.last_token) {
          // Alignment repeat: no new label.
          Hyp c = extend(hyp, static_cast<int32_t>(i), v);
          c.am += am_gain;
          c.true_score += am_gain;
          if (per_frame && v == sil) {
            ++c.silence_count;
            c.true_score += opt_.gamma;
          }
          emit(merged, t, std::move(c));
          continue;
        }
        if (v == sil) {
          if (!open) {
            // Empty open segment: only the trie root admits silence with
            // nothing pending, which happens exactly at the start.
            Hyp c = extend(hyp, static_cast<int32_t>(i), v);
            c.am += am_gain;
            c.true_score += am_gain;
            if (opt_.mode != DecodeMode::kWordLmLexicon) {
              auto scored = lm_.score_token(c.lm_state, sil);
              c.lm_state = std::move(scored.first);
              c.lm += scored.second;
              c.true_score += alpha * scored.second;
            }
            ++c.silence_count;
            c.true_score += opt_.gamma;
            emit(merged, t, std::move(c));
            continue;
          }
          // Closing a word.
          if (opt_.mode == DecodeMode::kCharLmFree) {
            Hyp c = extend(hyp, static_cast<int32_t>(i), v);
            c.am += am_gain;
            c.true_score += am_gain;
            auto scored = lm_.score_token(c.lm_state, sil);
            c.lm_state = std::move(scored.first);
            c.lm += scored.second;
            c.true_score += alpha * scored.second;
            ++c.word_count;
            c.true_score += opt_.beta;
            ++c.silence_count;
            c.true_score += opt_.gamma;
            emit(merged, t, std::move(c));
          } else if (!lex_->word_bearing(hyp.node)) {
            continue;  // No word ends here; silence is not allowed.
          } else if (opt_.mode == DecodeMode::kCharLmLexicon) {
            Hyp c = extend(hyp, static_cast<int32_t>(i), v);
            c.am += am_gain;
            c.true_score += am_gain;
            auto scored = lm_.score_token(c.lm_state, sil);
            c.lm_state = std::move(scored.first);
            c.lm += scored.second;
            c.true_score += alpha * scored.second;
            ++c.word_count;
            c.true_score += opt_.beta;
            ++c.silence_count;
            c.true_score += opt_.gamma;
            c.word_id = min_string_word(hyp.node);
            c.node = LexiconTrie::kRoot;
            emit(merged, t, std::move(c));
          } else {
            // Word-LM completion, one branch per homograph.
            for (int32_t wid : lex_->node(hyp.node).word_ids) {
              Hyp c = extend(hyp, static_cast<int32_t>(i), v);
              c.am += am_gain;
              c.true_score += am_gain;
              auto scored = lm_.score_word(c.lm_state, wid);
              c.lm_state = std::move(scored.first);
              c.lm += scored.second;
              c.true_score += alpha * scored.second;
              ++c.word_count;
              c.true_score += opt_.beta;
              ++c.silence_count;
              c.true_score += opt_.gamma;
              c.word_id = wid;
              c.node = LexiconTrie::kRoot;
              c.pending = 0.0;
              emit(merged, t, std::move(c));
            }
          }
          continue;
        }
        // New letter or repetition label.
        if (opt_.mode == DecodeMode::kCharLmFree) {
          if (ts.is_rep(v) && !open) continue;  // Dangling repetition.
          Hyp c = extend(hyp, static_cast<int32_t>(i), v);
          c.am += am_gain;
          c.true_score += am_gain;
          auto scored = lm_.score_token(c.lm_state, v);
          c.lm_state = std::move(scored.first);
          c.lm += scored.second;
          c.true_score += alpha * scored.second;
          emit(merged, t, std::move(c));
        } else {
          const int32_t child = lex_->child(hyp.node, v);
          if (child < 0) continue;  // Falls off the trie.
          Hyp c = extend(hyp, static_cast<int32_t>(i), v);
          c.am += am_gain;
          c.true_score += am_gain;
          c.node = child;
          if (opt_.mode == DecodeMode::kCharLmLexicon) {
            auto scored = lm_.score_token(c.lm_state, v);
            c.lm_state = std::move(scored.first);
            c.lm += scored.second;
            c.true_score += alpha * scored.second;
          } else if (opt_.use_smearing) {
            c.pending = lex_->node(child).smear;
          }
          emit(merged, t, std::move(c));
        }
      }
    }
    if (merged.empty())
      throw EmptyBeamError("no hypothesis survived frame " +
                           std::to_string(t));
    std::vector<Hyp> cands;
    cands.reserve(merged.size());
    double best = -std::numeric_limits<double>::infinity();
    for (auto &kv : merged)
      best = std::max(best, kv.second.prune_score(alpha));
    for (auto &kv : merged) {
      if (std::isfinite(opt_.beam_threshold) &&
          kv.second.prune_score(alpha) < best - opt_.beam_threshold)
        continue;
      cands.push_back(std::move(kv.second));
    }
    if (cands.empty())
      throw EmptyBeamError("beam threshold dropped every hypothesis at frame " +
                           std::to_string(t));
    std::sort(cands.begin(), cands.end(), [&](const Hyp &a, const Hyp &b) {
      const double pa = a.prune_score(alpha);
      const double pb = b.prune_score(alpha);
      if (pa != pb) return pa > pb;
      return trace_less(a, b, t);
    });
    if (static_cast<int>(cands.size()) > opt_.beam_size)
      cands.resize(opt_.beam_size);
    for (size_t r = 0; r < cands.size(); ++r)
      cands[r].rank = static_cast<int32_t>(r);
    beams_[t + 1] = std::move(cands);
  }

  // Finalization: force-close open words, add the end-of-sentence LM score.
  std::vector<Final> finals;
  for (size_t i = 0; i < beams_[T].size(); ++i) {
    const Hyp &hyp = beams_[T][i];
    const bool open = hyp.last_token >= 0 && hyp.last_token != sil;
    auto push = [&](double extra_lm, int32_t extra_words, int32_t final_wid) {
      Final f;
      f.score = hyp.true_score + alpha * extra_lm + opt_.beta * extra_words;
      f.am = hyp.am;
      f.lm = hyp.lm + extra_lm;
      f.word_count = hyp.word_count + extra_words;
      f.silence_count = hyp.silence_count;
      f.beam_index = static_cast<int32_t>(i);
      f.final_word_id = final_wid;
      finals.push_back(std::move(f));
    };
    if (!open) {
      push(lm_.finish(hyp.lm_state), 0, -1);
    } else if (opt_.mode == DecodeMode::kCharLmFree) {
      push(lm_.finish(hyp.lm_state), 1, -1);
    } else if (!lex_->word_bearing(hyp.node)) {
      continue;  // Unfinalizable: mid-spelling at the last frame.
    } else if (opt_.mode == DecodeMode::kCharLmLexicon) {
      push(lm_.finish(hyp.lm_state), 1, min_string_word(hyp.node));
    } else {
      for (int32_t wid : lex_->node(hyp.node).word_ids) {
        auto scored = lm_.score_word(hyp.lm_state, wid);
        push(scored.second + lm_.finish(scored.first), 1, wid);
      }
    }
  }
  if (finals.empty())
    throw EmptyBeamError("no hypothesis could be finalized");

  for (Final &f : finals) {
    f.trace = trace(beams_[T][f.beam_index], T - 1);
    if (f.final_word_id >= 0)
      f.trace.words.push_back(lex_->words()[f.final_word_id]);
  }
  size_t best = 0;
  for (size_t i = 1; i < finals.size(); ++i) {
    const Final &a = finals[i];
    const Final &b = finals[best];
    if (a.score > b.score + kTieEps) {
      best = i;
    } else if (a.score >= b.score - kTieEps &&
               (a.trace.words != b.trace.words
                    ? a.trace.words < b.trace.words
                    : a.trace.alignment < b.trace.alignment)) {
      best = i;
    }
  }

  const Final &win = finals[best];
  DecodeResult result;
  result.words = win.trace.words;
  result.alignment = win.trace.alignment;
  result.am_score = win.am;
  result.lm_score = win.lm;
  result.word_penalty = opt_.beta * win.word_count;
  result.silence_penalty = opt_.gamma * win.silence_count;
  result.total_score = win.score;
  int32_t max_rank = 0;
  int32_t p = win.beam_index;
  for (int f = T; p >= 0; --f) {
    max_rank = std::max(max_rank, beams_[f][p].rank);
    p = beams_[f][p].parent;
  }
  result.effective_beam_size = 1 + max_rank;
  return result;
}

}  // namespace

DecodeResult decode(const EmissionMatrix &em, const TransitionMatrix *tr,
                    const DecoderScorer &lm, const LexiconTrie *lex,
                    const DecoderOptions &opt) {
  return BeamSearch(em, tr, lm, lex, opt).run();
}

ScoreBreakdown score_alignment(const EmissionMatrix &em,
                               const TransitionMatrix *tr,
                               const DecoderScorer &lm,
                               const DecoderOptions &opt,
                               const EncodedCharSeq &alignment,
                               const std::vector<std::string> &words) {
  ScoreBreakdown sb;
  for (size_t t = 0; t < alignment.size(); ++t) {
    sb.am += em.at(static_cast<int>(t), alignment[t]);
    if (tr && t > 0) sb.am += tr->at(alignment[t - 1], alignment[t]);
  }
  const EncodedCharSeq labels = collapse_alignment(alignment);
  const int sil = em.token_set.silence_index();
  long silences = 0;
  if (opt.silence_term == SilenceTerm::kPerFrame) {
    for (int v : alignment) silences += v == sil;
  } else {
    for (int v : labels) silences += v == sil;
  }
  sb.silence_penalty = opt.gamma * static_cast<double>(silences);
  sb.word_penalty = opt.beta * static_cast<double>(words.size());
  LmContextState state = lm.start();
  if (opt.mode == DecodeMode::kWordLmLexicon) {
    for (const std::string &w : words) {
      auto scored = lm.score_word_text(state, w);
      state = std::move(scored.first);
      sb.lm += scored.second;
    }
  } else {
    for (int v : labels) {
      auto scored = lm.score_token(state, v);
      state = std::move(scored.first);
      sb.lm += scored.second;
    }
  }
  sb.lm += lm.finish(state);
  sb.total = sb.am + opt.alpha * sb.lm + sb.word_penalty + sb.silence_penalty;
  return sb;
}

double total_score(const DecodeResult &result, const EmissionMatrix &em,
                   const TransitionMatrix *tr, const DecoderScorer &lm,
                   const DecoderOptions &opt) {
  if (static_cast<int>(result.alignment.size()) != em.frames)
    throw LengthMismatchError(
        "alignment length " + std::to_string(result.alignment.size()) +
        " vs " + std::to_string(em.frames) + " frames");
  return score_alignment(em, tr, lm, opt, result.alignment, result.words)
      .total;
}

}  // namespace lexfree

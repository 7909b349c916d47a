// src/eval.cc

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

#include "lexfree/eval.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <ostream>
#include <unordered_set>

#include "lexfree/errors.h"
#include "lexfree/token_set.h"

namespace lexfree {

namespace {

template <typename Seq>
EditAlignment edit_align(const Seq &ref, const Seq &hyp) {
  const size_t nr = ref.size();
  const size_t nh = hyp.size();
  std::vector<std::vector<int32_t>> dp(nr + 1,
                                       std::vector<int32_t>(nh + 1, 0));
  for (size_t i = 0; i <= nr; ++i) dp[i][0] = static_cast<int32_t>(i);
  for (size_t j = 0; j <= nh; ++j) dp[0][j] = static_cast<int32_t>(j);
  for (size_t i = 1; i <= nr; ++i) {
    for (size_t j = 1; j <= nh; ++j) {
      int32_t c = dp[i - 1][j - 1] + (ref[i - 1] == hyp[j - 1] ? 0 : 1);
      c = std::min(c, dp[i][j - 1] + 1);
      c = std::min(c, dp[i - 1][j] + 1);
      dp[i][j] = c;
    }
  }
  EditAlignment out;
  out.distance = dp[nr][nh];
  size_t i = nr;
  size_t j = nh;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && ref[i - 1] == hyp[j - 1] &&
        dp[i][j] == dp[i - 1][j - 1]) {
      out.ops.push_back(EditOp::kMatch);
      --i;
      --j;
    } else if (i > 0 && j > 0 && dp[i][j] == dp[i - 1][j - 1] + 1) {
      out.ops.push_back(EditOp::kSub);
      ++out.subs;
      --i;
      --j;
    } else if (j > 0 && dp[i][j] == dp[i][j - 1] + 1) {
      out.ops.push_back(EditOp::kIns);
      ++out.ins;
      --j;
    } else {
      out.ops.push_back(EditOp::kDel);
      ++out.dels;
      --i;
    }
  }
  std::reverse(out.ops.begin(), out.ops.end());
  return out;
}

std::string normalize(const std::string &text) {
  return join_words(split_words(to_lower(text)));
}

double percent(long num, long den) {
  return 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

EditAlignment edit_distance(const std::vector<std::string> &ref,
                            const std::vector<std::string> &hyp) {
  return edit_align(ref, hyp);
}

EditAlignment edit_distance_chars(const std::string &ref,
                                  const std::string &hyp) {
  return edit_align(ref, hyp);
}

CorpusEval evaluate_corpus(const std::vector<EvalPair> &pairs,
                           const std::vector<std::string> *vocab) {
  if (pairs.empty()) throw EmptyCorpusError("nothing to evaluate");
  std::unordered_set<std::string> in_vocab;
  if (vocab) in_vocab.insert(vocab->begin(), vocab->end());
  CorpusEval eval;
  for (const EvalPair &pair : pairs) {
    const std::vector<std::string> ref_words =
        split_words(to_lower(pair.ref));
    const std::vector<std::string> hyp_words =
        split_words(to_lower(pair.hyp));
    const EditAlignment words = edit_distance(ref_words, hyp_words);
    const std::string ref_chars = join_words(ref_words);
    const std::string hyp_chars = join_words(hyp_words);
    const EditAlignment chars = edit_distance_chars(ref_chars, hyp_chars);
    UttEval utt;
    utt.utt_id = pair.utt_id;
    utt.ref = ref_chars;
    utt.hyp = hyp_chars;
    utt.subs = words.subs;
    utt.ins = words.ins;
    utt.dels = words.dels;
    utt.ref_words = static_cast<long>(ref_words.size());
    utt.char_edits = chars.distance;
    utt.ref_chars = static_cast<long>(ref_chars.size());
    if (vocab) {
      for (const std::string &w : ref_words)
        if (!in_vocab.count(w)) {
          utt.is_oov = true;
          break;
        }
    }
    eval.n_ref_words += utt.ref_words;
    eval.n_ref_chars += utt.ref_chars;
    eval.subs += utt.subs;
    eval.ins += utt.ins;
    eval.dels += utt.dels;
    eval.char_edits += utt.char_edits;
    eval.utts.push_back(std::move(utt));
  }
  eval.n_utts = static_cast<long>(eval.utts.size());
  if (eval.n_ref_words == 0)
    throw EmptyCorpusError("all references are empty");
  eval.wer = percent(eval.subs + eval.ins + eval.dels, eval.n_ref_words);
  eval.cer = percent(eval.char_edits, eval.n_ref_chars);
  return eval;
}

double wer(const std::vector<std::string> &refs,
           const std::vector<std::string> &hyps) {
  if (refs.size() != hyps.size())
    throw LengthMismatchError(std::to_string(refs.size()) +
                              " references vs " + std::to_string(hyps.size()) +
                              " hypotheses");
  std::vector<EvalPair> pairs;
  pairs.reserve(refs.size());
  for (size_t i = 0; i < refs.size(); ++i)
    pairs.push_back({std::to_string(i), refs[i], hyps[i]});
  return evaluate_corpus(pairs).wer;
}

double cer(const std::vector<std::string> &refs,
           const std::vector<std::string> &hyps) {
  if (refs.size() != hyps.size())
    throw LengthMismatchError(std::to_string(refs.size()) +
                              " references vs " + std::to_string(hyps.size()) +
                              " hypotheses");
  std::vector<EvalPair> pairs;
  pairs.reserve(refs.size());
  for (size_t i = 0; i < refs.size(); ++i)
    pairs.push_back({std::to_string(i), refs[i], hyps[i]});
  return evaluate_corpus(pairs).cer;
}

std::pair<std::vector<EvalPair>, std::vector<EvalPair>> split_iv_oov(
    const std::vector<EvalPair> &pairs,
    const std::vector<std::string> &vocab) {
  const std::unordered_set<std::string> in_vocab(vocab.begin(), vocab.end());
  std::pair<std::vector<EvalPair>, std::vector<EvalPair>> out;
  for (const EvalPair &pair : pairs) {
    bool oov = false;
    for (const std::string &w : split_words(to_lower(pair.ref)))
      if (!in_vocab.count(w)) {
        oov = true;
        break;
      }
    (oov ? out.second : out.first).push_back(pair);
  }
  return out;
}

OOVReport oov_recovery(const std::vector<EvalPair> &pairs,
                       const std::vector<std::string> &vocab) {
  const std::unordered_set<std::string> in_vocab(vocab.begin(), vocab.end());
  OOVReport report;
  auto splits = split_iv_oov(pairs, vocab);
  report.n_iv_utts = static_cast<long>(splits.first.size());
  report.n_oov_utts = static_cast<long>(splits.second.size());
  if (!splits.first.empty())
    report.iv_eval = evaluate_corpus(splits.first, &vocab);
  if (!splits.second.empty())
    report.oov_eval = evaluate_corpus(splits.second, &vocab);
  // type -> (occurrences, recovered occurrences)
  std::map<std::string, std::pair<long, long>> types;
  for (const EvalPair &pair : pairs) {
    const std::vector<std::string> ref_words =
        split_words(to_lower(pair.ref));
    const std::vector<std::string> hyp_words =
        split_words(to_lower(pair.hyp));
    const EditAlignment align = edit_distance(ref_words, hyp_words);
    size_t ri = 0;
    size_t hi = 0;
    for (EditOp op : align.ops) {
      const bool takes_ref = op != EditOp::kIns;
      const bool takes_hyp = op != EditOp::kDel;
      if (takes_ref && !in_vocab.count(ref_words[ri])) {
        auto &entry = types[ref_words[ri]];
        ++entry.first;
        ++report.n_oov_occurrences;
        if (op == EditOp::kMatch) {
          ++entry.second;
          ++report.n_recovered_occurrences;
        }
      }
      ri += takes_ref;
      hi += takes_hyp;
    }
  }
  report.n_oov_types = static_cast<long>(types.size());
  for (const auto &kv : types)
    report.n_recovered_types += kv.second.second > 0;
  if (report.n_oov_occurrences > 0)
    report.oov_occurrence_recovery =
        percent(report.n_recovered_occurrences, report.n_oov_occurrences);
  if (report.n_oov_types > 0)
    report.oov_type_recovery =
        percent(report.n_recovered_types, report.n_oov_types);
  return report;
}

void write_eval_report(std::ostream &out, const CorpusEval &overall,
                       const OOVReport *oov) {
  char buf[64];
  const auto pct = [&buf](double v) {
    snprintf(buf, sizeof(buf), "%.2f", v);
    return std::string(buf);
  };
  for (const UttEval &utt : overall.utts) {
    out << utt.utt_id << '\t' << utt.ref << '\t' << utt.hyp << '\t'
        << utt.subs << '\t' << utt.ins << '\t' << utt.dels << '\t'
        << (utt.is_oov ? 1 : 0) << '\n';
  }
  out << "# utts " << overall.n_utts << " ref_words "
      << overall.n_ref_words << " ref_chars " << overall.n_ref_chars << '\n';
  out << "# overall wer " << pct(overall.wer) << " cer " << pct(overall.cer)
      << '\n';
  if (!oov) return;
  out << "# iv_utts " << oov->n_iv_utts << " wer "
      << (oov->n_iv_utts ? pct(oov->iv_eval.wer) : "-") << " cer "
      << (oov->n_iv_utts ? pct(oov->iv_eval.cer) : "-") << '\n';
  out << "# oov_utts " << oov->n_oov_utts << " wer "
      << (oov->n_oov_utts ? pct(oov->oov_eval.wer) : "-") << " cer "
      << (oov->n_oov_utts ? pct(oov->oov_eval.cer) : "-") << '\n';
  out << "# oov_types " << oov->n_oov_types << " recovered "
      << oov->n_recovered_types << " rate " << pct(oov->oov_type_recovery)
      << '\n';
  out << "# oov_occurrences " << oov->n_oov_occurrences << " recovered "
      << oov->n_recovered_occurrences << " rate "
      << pct(oov->oov_occurrence_recovery) << '\n';
}

}  // namespace lexfree

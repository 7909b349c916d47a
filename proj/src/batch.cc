// src/batch.cc

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

#include "lexfree/batch.h"

#include "lexfree/errors.h"

namespace lexfree {

std::vector<Utterance> load_batch(const std::vector<ManifestEntry> &manifest) {
  std::vector<Utterance> utts;
  utts.reserve(manifest.size());
  for (const ManifestEntry &entry : manifest) {
    Utterance utt;
    utt.utt_id = entry.utt_id;
    utt.emission = read_emissions_file(entry.emission_path);
    utt.reference = entry.reference;
    if (!utts.empty() &&
        utt.emission.token_set.tokens() != utts[0].emission.token_set.tokens())
      throw ParseError("utterance " + utt.utt_id +
                       " uses a different token inventory than " +
                       utts[0].utt_id);
    utts.push_back(std::move(utt));
  }
  return utts;
}

std::vector<BatchResult> decode_batch(const std::vector<Utterance> &utts,
                                      const TransitionMatrix *tr,
                                      const DecoderScorer &lm,
                                      const LexiconTrie *lex,
                                      const DecoderOptions &opt,
                                      int threads) {
  std::vector<BatchResult> results(utts.size());
  const auto run_one = [&](size_t i) {
    // Exceptions must not escape a parallel region.
    BatchResult &r = results[i];
    r.utt_id = utts[i].utt_id;
    try {
      r.result = decode(utts[i].emission, tr, lm, lex, opt);
      r.ok = true;
    } catch (const std::exception &e) {
      r.ok = false;
      r.error = e.what();
    }
  };
  const long n = static_cast<long>(utts.size());
#ifdef _OPENMP
  if (threads > 0) {
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long i = 0; i < n; ++i) run_one(static_cast<size_t>(i));
  } else {
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) run_one(static_cast<size_t>(i));
  }
#else
  for (long i = 0; i < n; ++i) run_one(static_cast<size_t>(i));
#endif
  return results;
}

}  // namespace lexfree

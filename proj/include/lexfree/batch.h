// include/lexfree/batch.h

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

#ifndef LEXFREE_BATCH_H_
#define LEXFREE_BATCH_H_

#include <string>
#include <vector>

#include "lexfree/decoder.h"
#include "lexfree/emission.h"

namespace lexfree {

struct Utterance {
  std::string utt_id;
  EmissionMatrix emission;
  std::string reference;
};

// Reads every emission named by the manifest. All utterances must agree on
// the token inventory; the first one sets it.
std::vector<Utterance> load_batch(const std::vector<ManifestEntry> &manifest);

struct BatchResult {
  std::string utt_id;
  bool ok = false;
  std::string error;
  DecodeResult result;
};

// Decodes utterances independently, in parallel when OpenMP is available.
// threads <= 0 keeps the runtime default. A failed utterance is recorded,
// never fatal. Results follow the input order regardless of thread count.
std::vector<BatchResult> decode_batch(const std::vector<Utterance> &utts,
                                      const TransitionMatrix *tr,
                                      const DecoderScorer &lm,
                                      const LexiconTrie *lex,
                                      const DecoderOptions &opt,
                                      int threads = 0);

}  // namespace lexfree

#endif  // LEXFREE_BATCH_H_

// include/lexfree/reference_decoder.h

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

#ifndef LEXFREE_REFERENCE_DECODER_H_
#define LEXFREE_REFERENCE_DECODER_H_

#include "lexfree/decoder.h"

namespace lexfree {

// Serial reference decoder: enumerates every alignment in {0..N-1}^T, filters
// by the mode's structural rules, scores each survivor with score_alignment
// and returns the argmax under the same tie-break the beam search uses.
// Intended for tiny instances only; throws TooLargeError when N^T > 1e6.
// effective_beam_size is left at 0, the exhaustive route has no beam.
DecodeResult brute_force_decode(const EmissionMatrix &em,
                                const TransitionMatrix *tr,
                                const DecoderScorer &lm,
                                const LexiconTrie *lex,
                                const DecoderOptions &opt);

}  // namespace lexfree

#endif  // LEXFREE_REFERENCE_DECODER_H_

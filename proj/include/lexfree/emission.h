// include/lexfree/emission.h

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

#ifndef LEXFREE_EMISSION_H_
#define LEXFREE_EMISSION_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "lexfree/token_set.h"

namespace lexfree {

// Per-frame natural-log acoustic scores, one column per token.
struct EmissionMatrix {
  TokenSet token_set = TokenSet::standard();
  int frames = 0;
  // Row-major, frames x tokens.
  std::vector<double> scores;

  int tokens() const { return token_set.size(); }
  double at(int t, int v) const {
    return scores[static_cast<size_t>(t) * token_set.size() + v];
  }
  double &at(int t, int v) {
    return scores[static_cast<size_t>(t) * token_set.size() + v];
  }
};

// Natural-log token bigram scores in the alignment; at(prev, next).
// Optional in decoding: absent means all-zero.
struct TransitionMatrix {
  int tokens = 0;
  std::vector<double> scores;

  double at(int prev, int next) const {
    return scores[static_cast<size_t>(prev) * tokens + next];
  }
  double &at(int prev, int next) {
    return scores[static_cast<size_t>(prev) * tokens + next];
  }
};

// Text format, bit-exact round trip:
//   W2E1
//   tokens: a b c |
//   frames: T
//   then T lines of N scores.
void write_emissions(std::ostream &out, const EmissionMatrix &em);
void write_emissions_file(const std::string &path, const EmissionMatrix &em);
EmissionMatrix read_emissions(std::istream &in);
EmissionMatrix read_emissions_file(const std::string &path);

// Same layout with a W2T1 header and N rows.
void write_transitions(std::ostream &out, const TransitionMatrix &tr,
                       const TokenSet &ts);
void write_transitions_file(const std::string &path,
                            const TransitionMatrix &tr, const TokenSet &ts);
TransitionMatrix read_transitions(std::istream &in, const TokenSet &expected);
TransitionMatrix read_transitions_file(const std::string &path,
                                       const TokenSet &expected);

// Dataset manifest: utt_id TAB emission_path TAB reference transcript.
struct ManifestEntry {
  std::string utt_id;
  std::string emission_path;
  std::string reference;
};

std::vector<ManifestEntry> read_manifest(std::istream &in);
std::vector<ManifestEntry> read_manifest_file(const std::string &path);

}  // namespace lexfree

#endif  // LEXFREE_EMISSION_H_

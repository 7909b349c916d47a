// include/lexfree/arpa.h

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

#ifndef LEXFREE_ARPA_H_
#define LEXFREE_ARPA_H_

#include <iosfwd>
#include <string>

#include "lexfree/ngram_model.h"

namespace lexfree {

// Standard ARPA text: \data\ header with per-order entry counts, then one
// \k-grams: section per order (log10 prob, tokens, log10 backoff below the
// top order), then \end\. Sections are sorted by token strings, so equal
// models save to identical bytes. -inf is written as -99.
void save_arpa(std::ostream &out, const NGramModel &model);
void save_arpa_file(const std::string &path, const NGramModel &model);

// Accepts output of the standard toolkits: optional backoff column,
// arbitrary blank lines between sections, "-99" (or anything <= -99) as
// -inf. Rejects with ParseError (carrying a line number) anything
// structurally unsound, including k-grams whose context is not stored at
// order k-1, and with OrderMismatch a \data\ count that disagrees with its
// section.
NGramModel load_arpa(std::istream &in, LmLevel level);
NGramModel load_arpa_file(const std::string &path, LmLevel level);

}  // namespace lexfree

#endif  // LEXFREE_ARPA_H_

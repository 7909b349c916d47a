// src/token_set.cc

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

#include "lexfree/token_set.h"

#include <cctype>
#include <sstream>

#include "lexfree/errors.h"

namespace lexfree {

TokenSet TokenSet::standard() {
  std::vector<std::string> toks;
  for (char c = 'a'; c <= 'z'; ++c) toks.emplace_back(1, c);
  toks.emplace_back("'");
  toks.emplace_back(".");
  toks.emplace_back("1");
  toks.emplace_back("2");
  toks.emplace_back("|");
  return from_tokens(toks);
}

TokenSet TokenSet::from_tokens(const std::vector<std::string> &tokens) {
  TokenSet ts;
  ts.tokens_ = tokens;
  for (int i = 0; i < static_cast<int>(tokens.size()); ++i) {
    const std::string &tok = tokens[i];
    if (tok.empty()) throw ParseError("empty token string at index " + std::to_string(i));
    if (tok.size() != 1)
      throw ParseError("token \"" + tok + "\" is not a single character");
    if (!ts.index_.emplace(tok, i).second)
      throw ParseError("duplicate token \"" + tok + "\"");
    if (tok == "|") ts.silence_ = i;
    if (tok == "1") ts.rep1_ = i;
    if (tok == "2") ts.rep2_ = i;
  }
  if (ts.silence_ < 0) throw ParseError("token set has no silence token \"|\"");
  if ((ts.rep1_ >= 0) != (ts.rep2_ >= 0))
    throw ParseError("repetition tokens \"1\" and \"2\" must both be present or both absent");
  return ts;
}

std::string to_lower(const std::string &s) {
  std::string out = s;
  for (char &c : out)
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> split_words(const std::string &line) {
  std::vector<std::string> words;
  std::istringstream in(line);
  std::string w;
  while (in >> w) words.push_back(w);
  return words;
}

std::string join_words(const std::vector<std::string> &words) {
  std::string out;
  for (size_t i = 0; i < words.size(); ++i) {
    if (i) out += ' ';
    out += words[i];
  }
  return out;
}

EncodedCharSeq encode_word(const std::string &word, const TokenSet &ts) {
  if (word.empty()) throw EmptyWordError("cannot encode an empty word");
  const std::string low = to_lower(word);
  EncodedCharSeq out;
  size_t i = 0;
  while (i < low.size()) {
    const std::string ch(1, low[i]);
    const int tok = ts.index_of(ch);
    if (tok < 0 || !ts.is_letter(tok))
      throw UnknownCharacterError("character \"" + ch + "\" in word \"" + word +
                                  "\" has no letter token");
    size_t run = 1;
    while (i + run < low.size() && low[i + run] == low[i]) ++run;
    i += run;
    // Greedy decomposition into chunks of at most three copies.
    while (run > 0) {
      const size_t k = run > 3 ? 3 : run;
      out.push_back(tok);
      if (k == 2) {
        if (ts.rep1_index() < 0)
          throw UnknownCharacterError("doubled letter \"" + ch +
                                      "\" but the token set has no repetition tokens");
        out.push_back(ts.rep1_index());
      } else if (k == 3) {
        if (ts.rep2_index() < 0)
          throw UnknownCharacterError("tripled letter \"" + ch +
                                      "\" but the token set has no repetition tokens");
        out.push_back(ts.rep2_index());
      }
      run -= k;
    }
  }
  return out;
}

std::vector<std::string> decode_chars(const EncodedCharSeq &seq,
                                      const TokenSet &ts) {
  std::vector<std::string> words;
  std::string cur;
  std::string last_letter;
  auto flush = [&]() {
    if (!cur.empty()) words.push_back(cur);
    cur.clear();
    last_letter.clear();
  };
  for (int tok : seq) {
    if (ts.is_silence(tok)) {
      flush();
    } else if (ts.is_rep(tok)) {
      if (last_letter.empty())
        throw DanglingRepetitionError(
            "repetition token \"" + ts.token(tok) +
            "\" with no preceding letter in its word span");
      const int extra = (tok == ts.rep1_index()) ? 1 : 2;
      for (int k = 0; k < extra; ++k) cur += last_letter;
    } else {
      cur += ts.token(tok);
      last_letter = ts.token(tok);
    }
  }
  flush();
  return words;
}

EncodedCharSeq encode_sentence(const std::vector<std::string> &words,
                               const TokenSet &ts, bool eos) {
  EncodedCharSeq out;
  for (size_t i = 0; i < words.size(); ++i) {
    if (i) out.push_back(ts.silence_index());
    const EncodedCharSeq enc = encode_word(words[i], ts);
    out.insert(out.end(), enc.begin(), enc.end());
  }
  if (!eos && !words.empty()) out.push_back(ts.silence_index());
  return out;
}

EncodedCharSeq collapse_alignment(const EncodedCharSeq &alignment) {
  EncodedCharSeq out;
  for (int tok : alignment)
    if (out.empty() || out.back() != tok) out.push_back(tok);
  return out;
}

}  // namespace lexfree

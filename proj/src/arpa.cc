// src/arpa.cc

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

#include "lexfree/arpa.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <vector>

#include "lexfree/errors.h"
#include "lexfree/token_set.h"

namespace lexfree {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::string format_log10(double v) {
  if (v == kNegInf || v <= -99.0) return "-99";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.7f", v);
  return buf;
}

double parse_log10(const std::string &s, long line) {
  char *end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw ParseError("bad log10 value \"" + s + "\"", line);
  return v <= -99.0 ? kNegInf : v;
}

}  // namespace

void save_arpa(std::ostream &out, const NGramModel &model) {
  const int n = model.order();
  out << "\\data\\\n";
  for (int k = 1; k <= n; ++k)
    out << "ngram " << k << "=" << model.entry_count(k) << "\n";
  for (int k = 1; k <= n; ++k) {
    out << "\n\\" << k << "-grams:\n";
    std::vector<std::pair<std::vector<std::string>, const LmEntry *>> rows;
    rows.reserve(model.entry_count(k));
    for (const auto &ge : model.entries(k)) {
      std::vector<std::string> toks;
      toks.reserve(ge.first.size());
      for (int32_t id : ge.first) toks.push_back(model.tokens()[id]);
      rows.emplace_back(std::move(toks), &ge.second);
    }
    std::sort(rows.begin(), rows.end(),
              [](const auto &a, const auto &b) { return a.first < b.first; });
    for (const auto &row : rows) {
      out << format_log10(row.second->log10_prob) << '\t';
      for (size_t i = 0; i < row.first.size(); ++i) {
        if (i) out << ' ';
        out << row.first[i];
      }
      if (k < n) out << '\t' << format_log10(row.second->log10_backoff);
      out << '\n';
    }
  }
  out << "\n\\end\\\n";
}

void save_arpa_file(const std::string &path, const NGramModel &model) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  save_arpa(out, model);
}

NGramModel load_arpa(std::istream &in, LmLevel level) {
  std::string line;
  long line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      return true;
    }
    return false;
  };

  // Preamble: anything before \data\ is a comment.
  bool found_data = false;
  while (next_line()) {
    if (line == "\\data\\") {
      found_data = true;
      break;
    }
  }
  if (!found_data) throw ParseError("no \\data\\ section", line_no);

  std::vector<size_t> declared;  // declared[k-1]
  while (next_line()) {
    if (line.empty()) break;
    std::istringstream ls(line);
    std::string word;
    ls >> word;
    if (word != "ngram") break;
    std::string spec;
    ls >> spec;
    const size_t eq = spec.find('=');
    if (eq == std::string::npos)
      throw ParseError("malformed count line \"" + line + "\"", line_no);
    int k = 0;
    long c = 0;
    try {
      k = std::stoi(spec.substr(0, eq));
      c = std::stol(spec.substr(eq + 1));
    } catch (const std::exception &) {
      throw ParseError("malformed count line \"" + line + "\"", line_no);
    }
    if (k != static_cast<int>(declared.size()) + 1 || c < 0)
      throw ParseError("unexpected order in \"" + line + "\"", line_no);
    declared.push_back(static_cast<size_t>(c));
  }
  if (declared.empty()) throw ParseError("empty \\data\\ section", line_no);
  const int n = static_cast<int>(declared.size());

  NGramModel model(n, level);
  // `line` currently holds either a blank or the first section header.
  bool have_line = !line.empty();
  for (int k = 1; k <= n; ++k) {
    while (!have_line || line.empty()) {
      if (!next_line()) throw ParseError("unexpected end of file", line_no);
      have_line = true;
    }
    const std::string header = "\\" + std::to_string(k) + "-grams:";
    if (line != header)
      throw ParseError("expected \"" + header + "\", got \"" + line + "\"",
                       line_no);
    size_t seen = 0;
    while (true) {
      if (!next_line()) throw ParseError("unexpected end of file", line_no);
      if (line.empty()) continue;
      if (line[0] == '\\') break;
      const std::vector<std::string> fields = split_words(line);
      const size_t want = 1 + static_cast<size_t>(k);
      if (fields.size() != want && fields.size() != want + 1)
        throw ParseError("expected " + std::to_string(want) + " or " +
                             std::to_string(want + 1) + " fields, got " +
                             std::to_string(fields.size()),
                         line_no);
      const double prob = parse_log10(fields[0], line_no);
      Gram gram;
      gram.reserve(k);
      for (int i = 0; i < k; ++i) {
        const std::string &tok = fields[1 + i];
        if (k == 1) {
          gram.push_back(model.add_token(tok));
        } else {
          const int32_t id = model.token_id(tok);
          if (id < 0)
            throw ParseError("token \"" + tok + "\" has no unigram", line_no);
          gram.push_back(id);
        }
      }
      const double backoff = fields.size() == want + 1
                                 ? parse_log10(fields[want], line_no)
                                 : 0.0;
      if (k == static_cast<int>(n) && fields.size() == want + 1)
        throw ParseError("backoff weight at the top order", line_no);
      if (model.find(gram))
        throw ParseError("duplicate " + std::to_string(k) + "-gram", line_no);
      if (k >= 2 && !model.find(Gram(gram.begin(), gram.end() - 1)))
        throw ParseError("context of this " + std::to_string(k) +
                             "-gram is not stored at order " +
                             std::to_string(k - 1),
                         line_no);
      model.set_entry(gram, prob, backoff);
      ++seen;
    }
    if (seen != declared[k - 1])
      throw OrderMismatchError(
          "\\data\\ declares " + std::to_string(declared[k - 1]) + " " +
          std::to_string(k) + "-grams, section contains " +
          std::to_string(seen));
    have_line = true;  // `line` holds the next header or \end\.
  }
  while (line.empty()) {
    if (!next_line()) throw ParseError("missing \\end\\", line_no);
  }
  if (line != "\\end\\") throw ParseError("missing \\end\\", line_no);
  return model;
}

NGramModel load_arpa_file(const std::string &path, LmLevel level) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return load_arpa(in, level);
}

}  // namespace lexfree

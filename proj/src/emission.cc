// src/emission.cc

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

#include "lexfree/emission.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "lexfree/errors.h"

namespace lexfree {

namespace {

// %.17g round-trips IEEE doubles exactly through text.
std::string format_score(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double parse_score(const std::string &s, long line) {
  char *end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw ParseError("bad score \"" + s + "\"", line);
  if (!std::isfinite(v))
    throw ParseError("non-finite score \"" + s + "\"", line);
  return v;
}

std::vector<double> parse_score_row(const std::string &line, int expected,
                                    long line_no) {
  const std::vector<std::string> fields = split_words(line);
  if (static_cast<int>(fields.size()) != expected)
    throw ParseError("expected " + std::to_string(expected) +
                         " scores, got " + std::to_string(fields.size()),
                     line_no);
  std::vector<double> row;
  row.reserve(fields.size());
  for (const std::string &f : fields) row.push_back(parse_score(f, line_no));
  return row;
}

std::string get_line(std::istream &in, long &line_no) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("unexpected end of file", line_no);
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

void write_emissions(std::ostream &out, const EmissionMatrix &em) {
  out << "W2E1\n";
  out << "tokens:";
  for (const std::string &tok : em.token_set.tokens()) out << ' ' << tok;
  out << "\nframes: " << em.frames << "\n";
  for (int t = 0; t < em.frames; ++t) {
    for (int v = 0; v < em.tokens(); ++v) {
      if (v) out << ' ';
      out << format_score(em.at(t, v));
    }
    out << '\n';
  }
}

void write_emissions_file(const std::string &path, const EmissionMatrix &em) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  write_emissions(out, em);
}

EmissionMatrix read_emissions(std::istream &in) {
  long line_no = 0;
  if (get_line(in, line_no) != "W2E1")
    throw ParseError("missing W2E1 header", line_no);
  std::string line = get_line(in, line_no);
  if (line.rfind("tokens:", 0) != 0)
    throw ParseError("missing tokens: line", line_no);
  const std::vector<std::string> toks = split_words(line.substr(7));
  if (toks.empty()) throw ParseError("empty token list", line_no);
  EmissionMatrix em;
  em.token_set = TokenSet::from_tokens(toks);
  line = get_line(in, line_no);
  if (line.rfind("frames:", 0) != 0)
    throw ParseError("missing frames: line", line_no);
  try {
    em.frames = std::stoi(line.substr(7));
  } catch (const std::exception &) {
    throw ParseError("bad frame count", line_no);
  }
  if (em.frames < 0) throw ParseError("negative frame count", line_no);
  em.scores.reserve(static_cast<size_t>(em.frames) * toks.size());
  for (int t = 0; t < em.frames; ++t) {
    const std::vector<double> row = parse_score_row(
        get_line(in, line_no), static_cast<int>(toks.size()), line_no);
    em.scores.insert(em.scores.end(), row.begin(), row.end());
  }
  return em;
}

EmissionMatrix read_emissions_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_emissions(in);
}

void write_transitions(std::ostream &out, const TransitionMatrix &tr,
                       const TokenSet &ts) {
  out << "W2T1\n";
  out << "tokens:";
  for (const std::string &tok : ts.tokens()) out << ' ' << tok;
  out << '\n';
  for (int p = 0; p < tr.tokens; ++p) {
    for (int v = 0; v < tr.tokens; ++v) {
      if (v) out << ' ';
      out << format_score(tr.at(p, v));
    }
    out << '\n';
  }
}

void write_transitions_file(const std::string &path,
                            const TransitionMatrix &tr, const TokenSet &ts) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  write_transitions(out, tr, ts);
}

TransitionMatrix read_transitions(std::istream &in, const TokenSet &expected) {
  long line_no = 0;
  if (get_line(in, line_no) != "W2T1")
    throw ParseError("missing W2T1 header", line_no);
  std::string line = get_line(in, line_no);
  if (line.rfind("tokens:", 0) != 0)
    throw ParseError("missing tokens: line", line_no);
  const std::vector<std::string> toks = split_words(line.substr(7));
  if (toks != expected.tokens())
    throw ParseError("transition tokens disagree with the emission tokens",
                     line_no);
  TransitionMatrix tr;
  tr.tokens = static_cast<int>(toks.size());
  tr.scores.reserve(static_cast<size_t>(tr.tokens) * tr.tokens);
  for (int p = 0; p < tr.tokens; ++p) {
    const std::vector<double> row =
        parse_score_row(get_line(in, line_no), tr.tokens, line_no);
    tr.scores.insert(tr.scores.end(), row.begin(), row.end());
  }
  return tr;
}

TransitionMatrix read_transitions_file(const std::string &path,
                                       const TokenSet &expected) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_transitions(in, expected);
}

std::vector<ManifestEntry> read_manifest(std::istream &in) {
  std::vector<ManifestEntry> entries;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const size_t tab1 = line.find('\t');
    if (tab1 == std::string::npos)
      throw ParseError("manifest line has no TAB", line_no);
    const size_t tab2 = line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos)
      throw ParseError("manifest line has one TAB, needs two", line_no);
    ManifestEntry e;
    e.utt_id = line.substr(0, tab1);
    e.emission_path = line.substr(tab1 + 1, tab2 - tab1 - 1);
    e.reference = line.substr(tab2 + 1);
    if (e.utt_id.empty()) throw ParseError("empty utterance id", line_no);
    if (e.emission_path.empty())
      throw ParseError("empty emission path", line_no);
    entries.push_back(std::move(e));
  }
  return entries;
}

std::vector<ManifestEntry> read_manifest_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_manifest(in);
}

}  // namespace lexfree

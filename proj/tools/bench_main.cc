// tools/bench_main.cc

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

// Batch decoding benchmark: the same synthetic workload through the serial
// path (one worker) and the OpenMP path, with an exact output comparison.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lexfree/batch.h"
#include "lexfree/corpus.h"
#include "lexfree/decoder.h"
#include "lexfree/kneser_ney.h"
#include "lexfree/ngram_counts.h"
#include "lexfree/tune.h"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace lexfree;

const char *kCorpus[] = {
    "the quick brown fox jumps over the lazy dog",
    "she sells sea shells by the sea shore",
    "a stitch in time saves nine",
    "all that glitters is not gold",
    "the early bird catches the worm",
    "practice makes perfect every single day",
    "actions speak louder than words",
    "better late than never but never late is better",
};

NGramModel train_char_lm(int order) {
  const TokenSet ts = TokenSet::standard();
  std::vector<std::string> lines;
  for (const char *line : kCorpus) lines.push_back(line);
  const PreparedCorpus prepared = prepare_lm_corpus(lines, {}, ts);
  std::vector<std::vector<std::string>> sentences;
  for (const std::string &line : prepared.char_lines)
    sentences.push_back(split_words(line));
  return estimate(count_ngrams(sentences, order), {}, LmLevel::kChar);
}

std::vector<Utterance> synthesize(int n_utts, int frames, uint64_t seed) {
  const TokenSet ts = TokenSet::standard();
  std::mt19937_64 rng(seed);
  std::vector<Utterance> utts(n_utts);
  for (int u = 0; u < n_utts; ++u) {
    utts[u].utt_id = "utt" + std::to_string(u);
    EmissionMatrix &em = utts[u].emission;
    em.token_set = ts;
    em.frames = frames;
    em.scores.resize(static_cast<size_t>(frames) * ts.size());
    for (double &s : em.scores) s = -5.0 * uniform_open(rng, 0.0, 1.0);
  }
  return utts;
}

bool same_results(const std::vector<BatchResult> &a,
                  const std::vector<BatchResult> &b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].ok != b[i].ok) return false;
    if (!a[i].ok) continue;
    if (a[i].result.words != b[i].result.words) return false;
    if (a[i].result.alignment != b[i].result.alignment) return false;
    if (a[i].result.total_score != b[i].result.total_score) return false;
    if (a[i].result.effective_beam_size != b[i].result.effective_beam_size)
      return false;
  }
  return true;
}

double run(const std::vector<Utterance> &utts, const DecoderScorer &scorer,
           const DecoderOptions &opt, int threads,
           std::vector<BatchResult> *out) {
  const auto t0 = std::chrono::steady_clock::now();
  *out = decode_batch(utts, nullptr, scorer, nullptr, opt, threads);
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"serial vs parallel batch decoding benchmark"};
  int n_utts = 32;
  int frames = 60;
  int beam = 200;
  int order = 3;
  int threads = 0;
  uint64_t seed = 7;
  app.add_option("--utts", n_utts, "utterance count");
  app.add_option("--frames", frames, "frames per utterance");
  app.add_option("--beam-size", beam, "beam size");
  app.add_option("--order", order, "char LM order");
  app.add_option("--threads", threads, "parallel workers; 0 = default");
  app.add_option("--seed", seed, "emission seed");
  CLI11_PARSE(app, argc, argv);

  const TokenSet ts = TokenSet::standard();
  const NGramModel lm = train_char_lm(order);
  const CharNgramScorer scorer(lm, ts);
  const std::vector<Utterance> utts = synthesize(n_utts, frames, seed);
  DecoderOptions opt;
  opt.mode = DecodeMode::kCharLmFree;
  opt.alpha = 1.2;
  opt.beta = -0.5;
  opt.gamma = -0.3;
  opt.beam_size = beam;

  std::vector<BatchResult> serial, parallel;
  const double t_serial = run(utts, scorer, opt, 1, &serial);
  const double t_parallel = run(utts, scorer, opt, threads, &parallel);
  const bool identical = same_results(serial, parallel);

  int workers = 1;
#ifdef _OPENMP
  workers = threads > 0 ? threads : omp_get_max_threads();
#endif
  printf("utts %d frames %d beam %d order %d\n", n_utts, frames, beam, order);
  printf("serial    %.3f s\n", t_serial);
  printf("parallel  %.3f s (%d workers)\n", t_parallel, workers);
  printf("speedup   %.2fx\n", t_parallel > 0 ? t_serial / t_parallel : 0.0);
  printf("outputs identical: %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}

// tools/lexfree_main.cc

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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lexfree/arpa.h"
#include "lexfree/batch.h"
#include "lexfree/corpus.h"
#include "lexfree/decoder.h"
#include "lexfree/emission.h"
#include "lexfree/errors.h"
#include "lexfree/eval.h"
#include "lexfree/kneser_ney.h"
#include "lexfree/lexicon.h"
#include "lexfree/ngram_counts.h"
#include "lexfree/perplexity.h"
#include "lexfree/tune.h"

namespace {

using namespace lexfree;

struct GlobalArgs {
  int threads = 0;
  uint64_t seed = 0;
  std::string output_dir;
};

std::string out_path(const GlobalArgs &g, const std::string &path) {
  if (g.output_dir.empty() || std::filesystem::path(path).is_absolute())
    return path;
  std::filesystem::create_directories(g.output_dir);
  return (std::filesystem::path(g.output_dir) / path).string();
}

std::ofstream open_out(const std::string &path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  return out;
}

DecodeMode parse_mode(const std::string &mode) {
  if (mode == "word_lm_lexicon") return DecodeMode::kWordLmLexicon;
  if (mode == "char_lm_lexicon") return DecodeMode::kCharLmLexicon;
  if (mode == "char_lm_free") return DecodeMode::kCharLmFree;
  throw Error("unknown mode " + mode);
}

LmLevel parse_level(const std::string &level) {
  if (level == "char") return LmLevel::kChar;
  if (level == "word") return LmLevel::kWord;
  throw Error("unknown level " + level);
}

// Flags shared by decode, tune, and beam-stats.
struct DecodeArgs {
  std::string manifest;
  std::string lm;
  std::string mode = "char_lm_free";
  std::string lexicon;
  std::string transitions;
  std::string silence_term = "per_segment";
  double alpha = 1.0;
  double beta = 0.0;
  double gamma = 0.0;
  int beam_size = 100;
  double beam_threshold = std::numeric_limits<double>::infinity();
  bool smearing = false;
};

void add_decode_flags(CLI::App *cmd, DecodeArgs &args, bool with_penalties) {
  cmd->add_option("--emissions-manifest", args.manifest,
                  "TSV: utt_id, emission path, reference")
      ->required();
  cmd->add_option("--lm", args.lm, "ARPA language model")->required();
  cmd->add_option("--mode", args.mode,
                  "word_lm_lexicon | char_lm_lexicon | char_lm_free")
      ->check(CLI::IsMember(
          {"word_lm_lexicon", "char_lm_lexicon", "char_lm_free"}));
  cmd->add_option("--lexicon", args.lexicon,
                  "lexicon file, required by the lexicon modes");
  cmd->add_option("--transitions", args.transitions,
                  "optional transition matrix file");
  cmd->add_option("--silence-term", args.silence_term,
                  "per_segment | per_frame")
      ->check(CLI::IsMember({"per_segment", "per_frame"}));
  if (with_penalties) {
    cmd->add_option("--alpha", args.alpha, "LM weight");
    cmd->add_option("--beta", args.beta, "word insertion term");
    cmd->add_option("--gamma", args.gamma, "silence term weight");
  }
  cmd->add_option("--beam-size", args.beam_size, "beam size");
  cmd->add_option("--beam-threshold", args.beam_threshold,
                  "score margin below the frame best");
  cmd->add_flag("--smearing", args.smearing,
                "smear word-LM scores over the trie (word_lm_lexicon)");
}

// Everything a batch decode needs, built once from the flags.
struct Pipeline {
  std::vector<Utterance> utts;
  NGramModel lm{1, LmLevel::kChar};
  Lexicon lexicon;
  LexiconTrie trie;
  bool has_trie = false;
  std::optional<TransitionMatrix> tr;
  std::unique_ptr<DecoderScorer> scorer;
  DecoderOptions opt;

  const TransitionMatrix *tr_ptr() const { return tr ? &*tr : nullptr; }
  const LexiconTrie *trie_ptr() const { return has_trie ? &trie : nullptr; }
};

Pipeline build_pipeline(const DecodeArgs &args) {
  Pipeline p;
  p.utts = load_batch(read_manifest_file(args.manifest));
  if (p.utts.empty()) throw Error("empty manifest " + args.manifest);
  const TokenSet &ts = p.utts[0].emission.token_set;

  p.opt.mode = parse_mode(args.mode);
  p.opt.silence_term = args.silence_term == "per_frame"
                           ? SilenceTerm::kPerFrame
                           : SilenceTerm::kPerSegment;
  p.opt.alpha = args.alpha;
  p.opt.beta = args.beta;
  p.opt.gamma = args.gamma;
  p.opt.beam_size = args.beam_size;
  p.opt.beam_threshold = args.beam_threshold;

  const bool word_mode = p.opt.mode == DecodeMode::kWordLmLexicon;
  p.lm = load_arpa_file(args.lm,
                        word_mode ? LmLevel::kWord : LmLevel::kChar);
  if (p.opt.mode != DecodeMode::kCharLmFree) {
    if (args.lexicon.empty())
      throw Error("mode " + args.mode + " requires --lexicon");
    p.lexicon = load_lexicon_file(args.lexicon, ts);
    p.trie = build_trie(p.lexicon, ts);
    p.has_trie = true;
  }
  if (word_mode) {
    p.scorer = std::make_unique<WordNgramScorer>(p.lm, p.lexicon);
    if (args.smearing) {
      smear(p.trie, p.lm);
      p.opt.use_smearing = true;
    }
  } else {
    if (args.smearing)
      throw Error("--smearing needs --mode word_lm_lexicon");
    p.scorer = std::make_unique<CharNgramScorer>(p.lm, ts);
  }
  if (!args.transitions.empty())
    p.tr = read_transitions_file(args.transitions, ts);
  return p;
}

int cmd_lm_train(const GlobalArgs &g, const std::string &corpus_path,
                 const std::string &level_str, int order,
                 const std::string &prune_str, long min_word_count,
                 long max_vocab, const std::string &out,
                 const std::string &vocab_out) {
  const LmLevel level = parse_level(level_str);
  if (order < 1) throw Error("order must be >= 1");
  CorpusPrepConfig cfg;
  cfg.min_word_count = min_word_count;
  cfg.max_vocab = max_vocab;
  const TokenSet ts = TokenSet::standard();
  const PreparedCorpus prepared =
      prepare_lm_corpus(read_lines_file(corpus_path), cfg, ts);
  const std::vector<std::string> &lines =
      level == LmLevel::kWord ? prepared.word_lines : prepared.char_lines;
  std::vector<std::vector<std::string>> sentences;
  sentences.reserve(lines.size());
  for (const std::string &line : lines)
    sentences.push_back(split_words(line));
  const CountTable counts = count_ngrams(sentences, order);
  const PruneSpec prune = prune_str.empty()
                              ? PruneSpec{}
                              : parse_prune_spec(prune_str, order);
  std::vector<std::string> warnings;
  const NGramModel model = estimate(counts, prune, level, &warnings);
  for (const std::string &w : warnings)
    std::cerr << "warning: " << w << "\n";
  save_arpa_file(out_path(g, out), model);
  if (!vocab_out.empty()) {
    std::ofstream vout = open_out(out_path(g, vocab_out));
    write_vocab(vout, prepared);
  }
  std::cout << "level " << level_str << " order " << order << " sentences "
            << sentences.size() << " vocab " << prepared.vocab.size() << "\n";
  for (int k = 1; k <= order; ++k)
    std::cout << "ngram " << k << "=" << model.entry_count(k) << "\n";
  return 0;
}

int cmd_lm_ppl(const std::string &lm_path, const std::string &level_str,
               const std::string &corpus_path, const std::string &vocab_path,
               bool bounds, const std::string &word_lm_path, double coverage) {
  const std::vector<std::string> corpus = read_lines_file(corpus_path);
  const std::vector<std::string> vocab = read_lines_file(vocab_path);
  char buf[256];
  if (!bounds) {
    if (parse_level(level_str) != LmLevel::kWord)
      throw Error("plain perplexity needs --level word; use --bounds for "
                  "character models");
    const NGramModel lm = load_arpa_file(lm_path, LmLevel::kWord);
    const PerplexityReport report = word_ppl_word_lm(lm, corpus, vocab);
    snprintf(buf, sizeof(buf),
             "  scored words    %ld\n  excluded words  %ld\n"
             "  perplexity      %.4f\n",
             report.n_words, report.n_excluded, report.ppl);
    std::cout << buf;
    snprintf(buf, sizeof(buf), "n_words=%ld\nn_excluded=%ld\nppl=%.17g\n",
             report.n_words, report.n_excluded, report.ppl);
    std::cout << buf;
    return 0;
  }
  if (parse_level(level_str) != LmLevel::kChar)
    throw Error("--bounds applies to --level char");
  if (word_lm_path.empty())
    throw Error("--bounds needs --word-lm for the coverage subset");
  const NGramModel char_lm = load_arpa_file(lm_path, LmLevel::kChar);
  const NGramModel word_lm = load_arpa_file(word_lm_path, LmLevel::kWord);
  const PerplexityReport report = char_lm_word_ppl_bounds(
      char_lm, word_lm, TokenSet::standard(), corpus, vocab, coverage);
  snprintf(buf, sizeof(buf),
           "  scored words    %ld\n  excluded words  %ld\n"
           "  ppl lower       %.4f\n  ppl upper       %.4f\n"
           "  coverage mass   %.4f\n",
           report.n_words, report.n_excluded, report.ppl_lower,
           report.ppl_upper, report.coverage_mass);
  std::cout << buf;
  snprintf(buf, sizeof(buf),
           "n_words=%ld\nn_excluded=%ld\nppl_lower=%.17g\nppl_upper=%.17g\n"
           "coverage_mass=%.17g\n",
           report.n_words, report.n_excluded, report.ppl_lower,
           report.ppl_upper, report.coverage_mass);
  std::cout << buf;
  return 0;
}

int cmd_decode(const GlobalArgs &g, const DecodeArgs &args,
               const std::string &hyp_out) {
  const Pipeline p = build_pipeline(args);
  const std::vector<BatchResult> results = decode_batch(
      p.utts, p.tr_ptr(), *p.scorer, p.trie_ptr(), p.opt, g.threads);
  std::ofstream out = open_out(out_path(g, hyp_out));
  char buf[256];
  int failures = 0;
  std::vector<EvalPair> pairs;
  for (size_t i = 0; i < results.size(); ++i) {
    const BatchResult &r = results[i];
    if (!r.ok) {
      ++failures;
      std::cerr << "utterance " << r.utt_id << " failed: " << r.error << "\n";
      continue;
    }
    const std::string hyp = join_words(r.result.words);
    snprintf(buf, sizeof(buf), "\t%.6f\t%.6f\t%.6f\t%.6f\t%.6f\t%d\n",
             r.result.am_score, r.result.lm_score, r.result.word_penalty,
             r.result.silence_penalty, r.result.total_score,
             r.result.effective_beam_size);
    out << r.utt_id << '\t' << hyp << buf;
    if (!p.utts[i].reference.empty())
      pairs.push_back({r.utt_id, p.utts[i].reference, hyp});
  }
  if (!pairs.empty()) {
    const CorpusEval ev = evaluate_corpus(pairs);
    snprintf(buf, sizeof(buf), "wer %.4f\ncer %.4f\n", ev.wer, ev.cer);
    std::cout << buf;
  } else {
    std::cerr << "no references; skipping WER/CER\n";
  }
  return failures ? 1 : 0;
}

int cmd_tune(const GlobalArgs &g, const DecodeArgs &args, int trials,
             double alpha_lo, double alpha_hi, double beta_lo, double beta_hi,
             double gamma_lo, double gamma_hi, const std::string &log_out) {
  const Pipeline p = build_pipeline(args);
  SearchSpace space;
  space.alpha_lo = alpha_lo;
  space.alpha_hi = alpha_hi;
  space.beta_lo = beta_lo;
  space.beta_hi = beta_hi;
  space.gamma_lo = gamma_lo;
  space.gamma_hi = gamma_hi;
  space.n_trials = trials;
  space.seed = g.seed;
  const TuneOutcome outcome = random_search(
      p.utts, p.tr_ptr(), *p.scorer, p.trie_ptr(), p.opt, space, g.threads);
  std::ofstream out = open_out(out_path(g, log_out));
  out << format_trial_log(outcome.trials);
  const TrialResult &best = outcome.trials[outcome.best_trial];
  char buf[256];
  snprintf(buf, sizeof(buf),
           "best_trial %d alpha %.17g beta %.17g gamma %.17g wer %.6f cer "
           "%.6f\n",
           best.trial_id, best.alpha, best.beta, best.gamma, best.wer,
           best.cer);
  std::cout << buf;
  return 0;
}

int cmd_beam_stats(const GlobalArgs &g, const DecodeArgs &args,
                   const std::string &stats_out) {
  const Pipeline p = build_pipeline(args);
  const std::vector<BatchResult> results = decode_batch(
      p.utts, p.tr_ptr(), *p.scorer, p.trie_ptr(), p.opt, g.threads);
  std::ofstream out = open_out(out_path(g, stats_out));
  out << "utt_id\teffective_beam_size\n";
  int failures = 0;
  for (const BatchResult &r : results) {
    if (!r.ok) {
      ++failures;
      std::cerr << "utterance " << r.utt_id << " failed: " << r.error << "\n";
      continue;
    }
    out << r.utt_id << '\t' << r.result.effective_beam_size << '\n';
  }
  return failures ? 1 : 0;
}

int cmd_oov_report(const GlobalArgs &g, const std::string &manifest_path,
                   const std::string &hyp_path, const std::string &vocab_path,
                   const std::string &report_out) {
  const std::vector<ManifestEntry> manifest =
      read_manifest_file(manifest_path);
  const std::vector<std::string> vocab = read_lines_file(vocab_path);
  std::map<std::string, std::string> hyps;
  for (const std::string &line : read_lines_file(hyp_path)) {
    if (line.empty()) continue;
    const size_t tab = line.find('\t');
    if (tab == std::string::npos)
      throw ParseError("hypothesis line without a tab: " + line);
    const size_t end = line.find('\t', tab + 1);
    const std::string hyp =
        end == std::string::npos ? line.substr(tab + 1)
                                 : line.substr(tab + 1, end - tab - 1);
    hyps[line.substr(0, tab)] = hyp;
  }
  std::vector<EvalPair> pairs;
  for (const ManifestEntry &entry : manifest) {
    const auto it = hyps.find(entry.utt_id);
    if (it == hyps.end())
      throw Error("no hypothesis for utterance " + entry.utt_id);
    pairs.push_back({entry.utt_id, entry.reference, it->second});
  }
  const CorpusEval overall = evaluate_corpus(pairs, &vocab);
  const OOVReport report = oov_recovery(pairs, vocab);
  std::ofstream out = open_out(out_path(g, report_out));
  write_eval_report(out, overall, &report);
  char buf[256];
  snprintf(buf, sizeof(buf),
           "iv_utts %ld oov_utts %ld type_recovery %.2f "
           "occurrence_recovery %.2f\n",
           report.n_iv_utts, report.n_oov_utts, report.oov_type_recovery,
           report.oov_occurrence_recovery);
  std::cout << buf;
  return 0;
}

int cmd_lexicon_build(const GlobalArgs &g, const std::string &words_path,
                      const std::string &out) {
  const TokenSet ts = TokenSet::standard();
  std::vector<std::string> words;
  for (const std::string &line : read_lines_file(words_path))
    for (const std::string &w : split_words(to_lower(line)))
      words.push_back(w);
  const Lexicon lex = lexicon_from_words(words, ts);
  std::ofstream fout = open_out(out_path(g, out));
  save_lexicon(fout, lex, ts);
  std::cout << lex.size() << " words\n";
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"lexicon-free beam-search decoding toolkit"};
  app.require_subcommand(1);
  GlobalArgs global;
  app.add_option("--threads", global.threads,
                 "worker threads; 0 keeps the runtime default");
  app.add_option("--seed", global.seed, "random seed");
  app.add_option("--output-dir", global.output_dir,
                 "directory for relative output paths");

  int rc = 0;

  // lm-train
  auto *train = app.add_subcommand("lm-train", "estimate a Kneser-Ney LM");
  std::string train_corpus, train_level = "char", train_prune;
  std::string train_out = "lm.arpa", train_vocab_out;
  int train_order = 2;
  long train_min_count = 0, train_max_vocab = -1;
  train->add_option("--corpus", train_corpus, "text, one sentence per line")
      ->required();
  train->add_option("--level", train_level, "char | word")
      ->check(CLI::IsMember({"char", "word"}));
  train->add_option("--order", train_order, "n-gram order")->required();
  train->add_option("--prune", train_prune,
                    "count thresholds, e.g. 6:1,7:1,8:1,9:2,10+:3");
  train->add_option("--min-word-count", train_min_count,
                    "vocabulary count cutoff");
  train->add_option("--max-vocab", train_max_vocab,
                    "vocabulary size cap; -1 unlimited");
  train->add_option("--out", train_out, "ARPA output path");
  train->add_option("--vocab-out", train_vocab_out,
                    "write the vocabulary, one word per line");
  train->callback([&] {
    rc = cmd_lm_train(global, train_corpus, train_level, train_order,
                      train_prune, train_min_count, train_max_vocab,
                      train_out, train_vocab_out);
  });

  // lm-ppl
  auto *ppl = app.add_subcommand("lm-ppl", "word perplexity of an LM");
  std::string ppl_lm, ppl_level = "word", ppl_corpus, ppl_vocab, ppl_word_lm;
  bool ppl_bounds = false;
  double ppl_coverage = 0.95;
  ppl->add_option("--lm", ppl_lm, "ARPA model to evaluate")->required();
  ppl->add_option("--level", ppl_level, "char | word")
      ->check(CLI::IsMember({"char", "word"}));
  ppl->add_option("--corpus", ppl_corpus, "evaluation text")->required();
  ppl->add_option("--vocab", ppl_vocab, "vocabulary, one word per line")
      ->required();
  ppl->add_flag("--bounds", ppl_bounds,
                "compute char-LM word perplexity bounds");
  ppl->add_option("--word-lm", ppl_word_lm,
                  "word ARPA model for the coverage subset (with --bounds)");
  ppl->add_option("--coverage", ppl_coverage,
                  "coverage mass for the lower bound");
  ppl->callback([&] {
    rc = cmd_lm_ppl(ppl_lm, ppl_level, ppl_corpus, ppl_vocab, ppl_bounds,
                    ppl_word_lm, ppl_coverage);
  });

  // decode
  auto *dec = app.add_subcommand("decode", "beam-search decode a manifest");
  DecodeArgs dec_args;
  std::string dec_out = "hypotheses.tsv";
  add_decode_flags(dec, dec_args, true);
  dec->add_option("--hyp-out", dec_out, "hypothesis TSV output");
  dec->callback([&] { rc = cmd_decode(global, dec_args, dec_out); });

  // tune
  auto *tune = app.add_subcommand("tune", "random-search alpha, beta, gamma");
  DecodeArgs tune_args;
  int tune_trials = 100;
  double a_lo = 0.0, a_hi = 5.0, b_lo = -5.0, b_hi = 5.0;
  double c_lo = -5.0, c_hi = 5.0;
  std::string tune_log = "trials.tsv";
  add_decode_flags(tune, tune_args, false);
  tune->add_option("--trials", tune_trials, "number of random trials");
  tune->add_option("--alpha-min", a_lo, "alpha range lower edge");
  tune->add_option("--alpha-max", a_hi, "alpha range upper edge");
  tune->add_option("--beta-min", b_lo, "beta range lower edge");
  tune->add_option("--beta-max", b_hi, "beta range upper edge");
  tune->add_option("--gamma-min", c_lo, "gamma range lower edge");
  tune->add_option("--gamma-max", c_hi, "gamma range upper edge");
  tune->add_option("--log-out", tune_log, "trial log TSV output");
  tune->callback([&] {
    rc = cmd_tune(global, tune_args, tune_trials, a_lo, a_hi, b_lo, b_hi,
                  c_lo, c_hi, tune_log);
  });

  // beam-stats
  auto *stats = app.add_subcommand("beam-stats",
                                   "effective beam size per utterance");
  DecodeArgs stats_args;
  std::string stats_out = "beam_stats.tsv";
  add_decode_flags(stats, stats_args, true);
  stats->add_option("--out", stats_out, "TSV output");
  stats->callback([&] { rc = cmd_beam_stats(global, stats_args, stats_out); });

  // oov-report
  auto *oov = app.add_subcommand("oov-report",
                                 "IV/OOV splits and recovery rates");
  std::string oov_manifest, oov_hyp, oov_vocab, oov_out = "oov_report.tsv";
  oov->add_option("--manifest", oov_manifest, "manifest with references")
      ->required();
  oov->add_option("--hyp", oov_hyp, "decode output TSV")->required();
  oov->add_option("--vocab", oov_vocab, "lexicon vocabulary")->required();
  oov->add_option("--out", oov_out, "report output");
  oov->callback([&] {
    rc = cmd_oov_report(global, oov_manifest, oov_hyp, oov_vocab, oov_out);
  });

  // lexicon-build
  auto *lexb = app.add_subcommand("lexicon-build",
                                  "spellings for a word list");
  std::string lexb_words, lexb_out = "lexicon.txt";
  lexb->add_option("--words", lexb_words, "word list or corpus")->required();
  lexb->add_option("--out", lexb_out, "lexicon output");
  lexb->callback([&] { rc = cmd_lexicon_build(global, lexb_words, lexb_out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}

// src/kneser_ney.cc

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

#include "lexfree/kneser_ney.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lexfree/errors.h"

namespace lexfree {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Discounts {
  double d1 = 0.5, d2 = 0.5, d3 = 0.5;
  double of(long a) const {
    if (a <= 0) return 0.0;
    if (a == 1) return d1;
    if (a == 2) return d2;
    return d3;
  }
};

bool all_bos(const Gram &g) {
  return std::all_of(g.begin(), g.end(),
                     [](int32_t id) { return id == CountTable::kBosId; });
}

long parse_long(const std::string &s, const std::string &what) {
  size_t pos = 0;
  long v = 0;
  try {
    v = std::stol(s, &pos);
  } catch (const std::exception &) {
    throw ParseError("bad " + what + " \"" + s + "\"");
  }
  if (pos != s.size()) throw ParseError("bad " + what + " \"" + s + "\"");
  return v;
}

}  // namespace

PruneSpec parse_prune_spec(const std::string &text, int order) {
  PruneSpec spec;
  size_t start = 0;
  while (start <= text.size()) {
    size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    std::string item = text.substr(start, comma - start);
    start = comma + 1;
    // Trim surrounding blanks.
    while (!item.empty() && item.front() == ' ') item.erase(item.begin());
    while (!item.empty() && item.back() == ' ') item.pop_back();
    if (item.empty()) {
      if (start > text.size()) break;
      continue;
    }
    const size_t colon = item.find(':');
    if (colon == std::string::npos)
      throw ParseError("prune entry \"" + item + "\" has no ':'");
    std::string key = item.substr(0, colon);
    const long thr = parse_long(item.substr(colon + 1), "prune threshold");
    if (thr < 0) throw ParseError("negative prune threshold in \"" + item + "\"");
    bool open_ended = false;
    if (!key.empty() && key.back() == '+') {
      open_ended = true;
      key.pop_back();
    }
    const long k = parse_long(key, "prune order");
    if (k < 2 || k > order)
      throw ParseError("prune order " + std::to_string(k) +
                       " outside 2.." + std::to_string(order));
    if (open_ended) {
      for (long j = k; j <= order; ++j) spec.thresholds[static_cast<int>(j)] = thr;
    } else {
      spec.thresholds[static_cast<int>(k)] = thr;
    }
  }
  return spec;
}

NGramModel estimate(const CountTable &counts, const PruneSpec &prune,
                    LmLevel level, std::vector<std::string> *warnings) {
  const int n = counts.order();
  if (counts.empty())
    throw EmptyCorpusError("cannot estimate a model from empty counts");
  for (const auto &kv : prune.thresholds) {
    if (kv.first < 1 || kv.first > n)
      throw Error("prune threshold for order " + std::to_string(kv.first) +
                  " outside the model order");
    if (kv.second < 0) throw Error("negative prune threshold");
    if (kv.first == 1 && kv.second > 0)
      throw Error("unigram pruning is not supported");
  }

  // Surviving grams with raw counts.
  std::vector<GramMap<long>> raw(n);
  for (int k = 1; k <= n; ++k) {
    const long thr = prune.threshold(k);
    for (const auto &gc : counts.grams(k))
      if (k == 1 || gc.second > thr) raw[k - 1].insert(gc);
  }

  // Prefix closure: a surviving k-gram whose context was pruned pulls the
  // context back in with its raw count, cascading downward. All-begin
  // contexts are synthesized separately with probability zero.
  for (int k = n; k >= 2; --k) {
    for (const auto &gc : raw[k - 1]) {
      Gram prefix(gc.first.begin(), gc.first.end() - 1);
      if (all_bos(prefix)) continue;
      auto &lower = raw[prefix.size() - 1];
      if (!lower.count(prefix)) {
        const long c = counts.count(prefix);
        lower.emplace(std::move(prefix), c);
      }
    }
  }

  // Deterministic iteration order for every accumulating sum.
  std::vector<std::vector<Gram>> sorted(n);
  for (int k = 1; k <= n; ++k) {
    sorted[k - 1].reserve(raw[k - 1].size());
    for (const auto &gc : raw[k - 1]) sorted[k - 1].push_back(gc.first);
    std::sort(sorted[k - 1].begin(), sorted[k - 1].end());
  }

  // Adjusted counts: top order keeps raw counts; below that a gram's count
  // is the number of distinct surviving extensions to its left, except that
  // begin-marker-initial grams keep raw counts (nothing can precede them).
  std::vector<GramMap<long>> adj(n);
  adj[n - 1] = raw[n - 1];
  for (int k = n - 1; k >= 1; --k) {
    GramMap<long> cont;
    for (const auto &gc : raw[k])
      ++cont[Gram(gc.first.begin() + 1, gc.first.end())];
    for (const auto &g : sorted[k - 1]) {
      long a;
      if (g.front() == CountTable::kBosId) {
        a = raw[k - 1].at(g);
      } else {
        auto it = cont.find(g);
        a = it == cont.end() ? 0 : it->second;
      }
      adj[k - 1][g] = a;
    }
  }

  // Chen-Goodman discounts from the count-of-counts of adjusted counts.
  std::vector<Discounts> disc(n);
  for (int k = 1; k <= n; ++k) {
    long t1 = 0, t2 = 0, t3 = 0, t4 = 0;
    for (const auto &g : sorted[k - 1]) {
      const long a = adj[k - 1].at(g);
      if (a == 1) ++t1;
      else if (a == 2) ++t2;
      else if (a == 3) ++t3;
      else if (a == 4) ++t4;
    }
    bool ok = t1 > 0 && t2 > 0 && t3 > 0 && t4 > 0;
    Discounts d;
    if (ok) {
      const double y = static_cast<double>(t1) / (t1 + 2.0 * t2);
      d.d1 = 1.0 - 2.0 * y * t2 / t1;
      d.d2 = 2.0 - 3.0 * y * t3 / t2;
      d.d3 = 3.0 - 4.0 * y * t4 / t3;
      ok = d.d1 >= 0.0 && d.d1 <= 1.0 && d.d2 >= 0.0 && d.d2 <= 2.0 &&
           d.d3 >= 0.0 && d.d3 <= 3.0;
    }
    if (!ok) {
      d = Discounts();
      if (warnings)
        warnings->push_back("order " + std::to_string(k) +
                            ": degenerate count-of-counts; falling back to "
                            "absolute discount 0.5");
    }
    disc[k - 1] = d;
  }

  NGramModel model(n, level);
  for (const auto &tok : counts.tokens()) model.add_token(tok);
  const int32_t unk_id =
      level == LmLevel::kWord ? model.add_token(NGramModel::kUnkToken) : -1;

  // Begin-marker contexts exist with probability zero; their backoff
  // weights are estimated below like any other context's.
  model.set_entry(Gram{NGramModel::kBosId}, kNegInf, 0.0);
  for (int m = 2; m <= n - 1; ++m)
    model.set_entry(Gram(m, NGramModel::kBosId), kNegInf, 0.0);

  // Unigrams: interpolation bottoms out at the uniform distribution over
  // predicted events.
  {
    const Discounts &d = disc[0];
    double big_a = 0.0;
    long n1 = 0, n2 = 0, n3p = 0;
    for (const auto &g : sorted[0]) {
      const long a = adj[0].at(g);
      big_a += a;
      if (a == 1) ++n1;
      else if (a == 2) ++n2;
      else if (a >= 3) ++n3p;
    }
    const bool add_unk = unk_id >= 0 && !raw[0].count(Gram{unk_id});
    const double vocab_size = static_cast<double>(sorted[0].size() + (add_unk ? 1 : 0));
    const double b = big_a > 0
                         ? (d.d1 * n1 + d.d2 * n2 + d.d3 * n3p) / big_a
                         : 1.0;
    for (const auto &g : sorted[0]) {
      const long a = adj[0].at(g);
      const double u = big_a > 0 ? (a - d.of(a)) / big_a : 0.0;
      model.set_entry(g, std::log10(u + b / vocab_size), 0.0);
    }
    if (add_unk)
      model.set_entry(Gram{unk_id}, std::log10(b / vocab_size), 0.0);
  }

  // Higher orders, grouped by context (contiguous in sorted order).
  for (int k = 2; k <= n; ++k) {
    const Discounts &d = disc[k - 1];
    const auto &grams = sorted[k - 1];
    size_t i = 0;
    while (i < grams.size()) {
      size_t j = i;
      const Gram context(grams[i].begin(), grams[i].end() - 1);
      while (j < grams.size() &&
             std::equal(context.begin(), context.end(), grams[j].begin()) &&
             grams[j].size() == grams[i].size())
        ++j;
      double big_a = 0.0;
      long n1 = 0, n2 = 0, n3p = 0;
      for (size_t r = i; r < j; ++r) {
        const long a = adj[k - 1].at(grams[r]);
        big_a += a;
        if (a == 1) ++n1;
        else if (a == 2) ++n2;
        else if (a >= 3) ++n3p;
      }
      const double b = big_a > 0
                           ? (d.d1 * n1 + d.d2 * n2 + d.d3 * n3p) / big_a
                           : 1.0;
      const LmContextState lower_ctx(Gram(context.begin() + 1, context.end()));
      for (size_t r = i; r < j; ++r) {
        const long a = adj[k - 1].at(grams[r]);
        const double u = big_a > 0 ? (a - d.of(a)) / big_a : 0.0;
        const double p_low =
            std::pow(10.0, model.score_id(lower_ctx, grams[r].back()).second);
        model.set_entry(grams[r], std::log10(u + b * p_low), 0.0);
      }
      model.set_backoff(context, std::log10(b));
      i = j;
    }
  }

  return model;
}

}  // namespace lexfree

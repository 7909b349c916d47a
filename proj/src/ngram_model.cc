// src/ngram_model.cc

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

#include "lexfree/ngram_model.h"

#include <cmath>

#include "lexfree/errors.h"

namespace lexfree {

NGramModel::NGramModel(int order, LmLevel level)
    : order_(order), level_(level) {
  if (order < 1) throw Error("n-gram order must be >= 1");
  add_token(kBosToken);
  add_token(kEosToken);
  by_order_.resize(order);
}

int32_t NGramModel::add_token(const std::string &token) {
  auto it = token_index_.find(token);
  if (it != token_index_.end()) return it->second;
  const int32_t id = static_cast<int32_t>(tokens_.size());
  tokens_.push_back(token);
  token_index_.emplace(token, id);
  if (token == kUnkToken) unk_id_ = id;
  return id;
}

int32_t NGramModel::token_id(const std::string &token) const {
  auto it = token_index_.find(token);
  return it == token_index_.end() ? -1 : it->second;
}

void NGramModel::set_entry(const Gram &gram, double log10_prob,
                           double log10_backoff) {
  if (gram.empty() || static_cast<int>(gram.size()) > order_)
    throw Error("gram length outside 1.." + std::to_string(order_));
  LmEntry &e = by_order_[gram.size() - 1][gram];
  e.log10_prob = log10_prob;
  e.log10_backoff = log10_backoff;
}

void NGramModel::set_backoff(const Gram &gram, double log10_backoff) {
  auto &m = by_order_.at(gram.size() - 1);
  auto it = m.find(gram);
  if (it == m.end())
    throw Error("set_backoff on a context with no stored entry");
  it->second.log10_backoff = log10_backoff;
}

const LmEntry *NGramModel::find(const Gram &gram) const {
  if (gram.empty() || static_cast<int>(gram.size()) > order_) return nullptr;
  const auto &m = by_order_[gram.size() - 1];
  auto it = m.find(gram);
  return it == m.end() ? nullptr : &it->second;
}

Gram NGramModel::canonical(Gram ids) const {
  if (static_cast<int>(ids.size()) > order_ - 1)
    ids.erase(ids.begin(), ids.end() - (order_ - 1));
  // Longest stored suffix: if the context gram itself is absent, no longer
  // gram through it can match and its backoff weight defaults to one, so
  // the shorter state is score-equivalent.
  size_t from = 0;
  while (from < ids.size() && !find(Gram(ids.begin() + from, ids.end())))
    ++from;
  if (from > 0) ids.erase(ids.begin(), ids.begin() + from);
  return ids;
}

LmContextState NGramModel::start_state() const {
  return LmContextState(canonical(Gram(order_ - 1, kBosId)));
}

std::pair<LmContextState, double> NGramModel::score_id(
    const LmContextState &state, int32_t id) const {
  if (id < 0 || id >= static_cast<int32_t>(tokens_.size()))
    throw UnknownTokenError("token id " + std::to_string(id) +
                            " outside the vocabulary");
  if (!find(Gram{id})) {
    if (level_ == LmLevel::kWord && unk_id_ >= 0 && find(Gram{unk_id_})) {
      id = unk_id_;
    } else {
      throw UnknownTokenError("token \"" + tokens_[id] +
                              "\" has no unigram entry");
    }
  }
  const Gram &ctx = state.key();
  double bo = 0.0;
  double log10p = 0.0;
  for (size_t from = 0; from <= ctx.size(); ++from) {
    Gram g(ctx.begin() + from, ctx.end());
    g.push_back(id);
    if (const LmEntry *e = find(g)) {
      log10p = bo + e->log10_prob;
      break;
    }
    if (const LmEntry *c = find(Gram(ctx.begin() + from, ctx.end())))
      bo += c->log10_backoff;
    // The unigram is guaranteed present, so the loop always terminates with
    // a match at from == ctx.size().
  }
  Gram next = ctx;
  next.push_back(id);
  return {LmContextState(canonical(std::move(next))), log10p};
}

std::pair<LmContextState, double> NGramModel::score(
    const LmContextState &state, const std::string &token) const {
  int32_t id = token_id(token);
  if (id < 0) {
    if (level_ == LmLevel::kWord && unk_id_ >= 0) {
      id = unk_id_;
    } else {
      throw UnknownTokenError("token \"" + token + "\" not in vocabulary");
    }
  }
  return score_id(state, id);
}

double NGramModel::finish(const LmContextState &state) const {
  return score_id(state, kEosId).second;
}

double NGramModel::sentence_logprob(
    const std::vector<std::string> &tokens) const {
  LmContextState state = start_state();
  double sum = 0.0;
  for (const std::string &tok : tokens) {
    auto [next, lp] = score(state, tok);
    sum += lp;
    state = std::move(next);
  }
  return sum + finish(state);
}

std::vector<int32_t> NGramModel::predicted_ids() const {
  std::vector<int32_t> ids;
  for (int32_t id = 0; id < static_cast<int32_t>(tokens_.size()); ++id)
    if (id != kBosId && find(Gram{id})) ids.push_back(id);
  return ids;
}

double max_normalization_error(const NGramModel &model) {
  std::vector<Gram> contexts;
  contexts.push_back(Gram{});
  for (int k = 1; k < model.order(); ++k)
    for (const auto &ge : model.entries(k)) contexts.push_back(ge.first);
  double worst = 0.0;
  for (const Gram &ctx : contexts) {
    const LmContextState state(ctx);
    double sum = 0.0;
    for (int32_t id = 0; id < static_cast<int32_t>(model.tokens().size());
         ++id) {
      if (id == NGramModel::kBosId) continue;
      sum += std::pow(10.0, model.score_id(state, id).second);
    }
    const double err = std::fabs(sum - 1.0);
    if (err > worst) worst = err;
  }
  return worst;
}

}  // namespace lexfree

/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <snc/error.hpp>
#include <snc/linalg.hpp>
#include <snc/loss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace snc {

Batch::Batch(std::vector<std::size_t> indices, FeatureMatrix embeddings, std::vector<Label> labels,
             std::vector<std::size_t> pseudo)
  : indices_(std::move(indices)), embeddings_(std::move(embeddings)), labels_(std::move(labels)),
    pseudo_(std::move(pseudo))
{
  const std::size_t n = indices_.size();
  if (n < 2) { throw DataError("a batch needs at least two members"); }
  if (embeddings_.rows() != n || labels_.size() != n || pseudo_.size() != n) {
    throw DataError("batch fields have inconsistent lengths");
  }
  if (!embeddings_.normalized()) { require_unit_rows(embeddings_); }
}

PositiveSets build_positive_sets(const Batch& b)
{
  const std::size_t n = b.size();
  PositiveSets sets;
  sets.truth.resize(n);
  sets.pseudo.resize(n);
  sets.unified.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) { continue; }
      if (b.is_labelled(i) && b.labels()[j] == b.labels()[i]) { sets.truth[i].push_back(j); }
      if (b.pseudo()[j] == b.pseudo()[i]) { sets.pseudo[i].push_back(j); }
    }
    if (b.is_labelled(i)) {
      auto& r = sets.unified[i];
      r       = sets.truth[i];
      for (std::size_t j : sets.pseudo[i]) {
        if (!b.is_labelled(j)) { r.push_back(j); }
      }
      std::sort(r.begin(), r.end());
      r.erase(std::unique(r.begin(), r.end()), r.end());
    } else {
      sets.unified[i] = sets.pseudo[i];
    }
  }
  return sets;
}

LossValue sup_con_loss(const Batch& b, const MemberSets& positives, Scope scope, double tau,
                       bool skip_empty)
{
  if (!(tau > 0.0)) { throw ArgumentError("temperature must be positive"); }
  if (positives.size() != b.size()) {
    throw ArgumentError("positive sets do not match the batch size");
  }
  const auto in_scope = [&](std::size_t j) { return scope == Scope::all || b.is_labelled(j); };
  std::vector<std::size_t> members;
  for (std::size_t j = 0; j < b.size(); ++j) {
    if (in_scope(j)) { members.push_back(j); }
  }
  if (members.size() < 2) {
    LossValue lone;
    for (std::size_t i : members) {
      if (!positives[i].empty() || !skip_empty) {
        throw ArgumentError("contrastive scope needs at least two members");
      }
      ++lone.skipped;
    }
    return lone;
  }

  const auto& z = b.embeddings();
  LossValue out;
  std::vector<double> logits(b.size());
  for (std::size_t i : members) {
    if (positives[i].empty()) {
      if (!skip_empty) {
        throw ArgumentError("member " + std::to_string(i) + " has no positives");
      }
      ++out.skipped;
      continue;
    }
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t n : members) {
      if (n == i) { continue; }
      logits[n] = dot_precise(z.row(i), z.row(n)) / tau;
      peak      = std::max(peak, logits[n]);
    }
    double denom = 0.0;
    for (std::size_t n : members) {
      if (n != i) { denom += std::exp(logits[n] - peak); }
    }
    const double log_denom = peak + std::log(denom);
    double term            = 0.0;
    for (std::size_t q : positives[i]) {
      if (q == i || !in_scope(q)) {
        throw ArgumentError("positive " + std::to_string(q) + " of member " + std::to_string(i) +
                            " is outside the loss scope");
      }
      term += log_denom - logits[q];
    }
    out.sum += term / static_cast<double>(positives[i].size());
    ++out.scored;
  }
  out.mean = out.scored ? out.sum / static_cast<double>(out.scored) : 0.0;
  return out;
}

TotalLoss total_loss(const Batch& b, const PositiveSets& sets, const LossConfig& cfg)
{
  TotalLoss out;
  out.all_data = sup_con_loss(b, sets.pseudo, Scope::all, cfg.tau_a);
  out.labelled = sup_con_loss(b, sets.truth, Scope::labelled_only, cfg.tau_s);
  out.total    = out.all_data.sum + out.labelled.sum;
  return out;
}

LossValue unified_loss(const Batch& b, const PositiveSets& sets, const LossConfig& cfg)
{
  return sup_con_loss(b, sets.unified, Scope::all, cfg.tau_u);
}

std::vector<std::size_t> refresh_pseudo(const GcdDataset& ds, const ChainConfig& chain,
                                        std::size_t level)
{
  if (level == 0) { throw ArgumentError("pseudo labels cannot come from the singleton level"); }
  return pseudo_labels(run_snc(ds, chain), level).assignment;
}

}  // namespace snc

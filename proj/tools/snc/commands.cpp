/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "commands.hpp"

#include <snc/baselines.hpp>
#include <snc/dataset.hpp>
#include <snc/error.hpp>
#include <snc/estimate.hpp>
#include <snc/loss.hpp>
#include <snc/metrics.hpp>
#include <snc/serialize.hpp>
#include <snc/snc.hpp>
#include <snc/synthetic.hpp>

#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

namespace snc::cli {

using nlohmann::json;

namespace {

GcdDataset load_dataset(const InputOptions& in)
{
  FeatureMatrix x = load_features(in.features, format_from_extension(in.features));
  if (in.no_normalize) {
    require_unit_rows(x);
  } else {
    x = l2_normalize(x);
  }
  if (in.labels.empty()) { return GcdDataset(std::move(x)); }
  auto labels = load_labels(in.labels, x.rows()).labels;
  return GcdDataset(std::move(x), std::move(labels));
}

ChainConfig chain_config(const ChainOptions& o)
{
  ChainConfig cfg = parse_chain_rule(o.rule);
  cfg.max_levels  = o.max_levels;
  return cfg;
}

json input_json(const InputOptions& in)
{
  return {{"features", in.features},
          {"labels", in.labels.empty() ? json(nullptr) : json(in.labels)},
          {"normalize", !in.no_normalize}};
}

void emit(const std::string& out, const json& j)
{
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
  } else {
    write_json(out, j);
  }
}

// Truth ids in contiguous form; `seen` holds original ids.
std::set<ClassId> seen_classes(const LabelFile& truth, const std::set<std::int64_t>& seen_original)
{
  std::set<ClassId> out;
  for (std::size_t c = 0; c < truth.original.size(); ++c) {
    if (seen_original.contains(truth.original[c])) { out.insert(static_cast<ClassId>(c)); }
  }
  return out;
}

std::vector<ClassId> dense_truth(const LabelFile& truth, const std::string& path)
{
  std::vector<ClassId> out(truth.labels.size());
  for (std::size_t i = 0; i < truth.labels.size(); ++i) {
    if (!truth.labels[i]) {
      throw DataError(path + ": instance " + std::to_string(i) + " has no ground-truth label");
    }
    out[i] = *truth.labels[i];
  }
  return out;
}

std::vector<double> level_purity(const Hierarchy& h, std::span<const ClassId> truth)
{
  std::vector<double> out;
  for (const auto& level : h.levels) { out.push_back(purity(level.assignment, truth)); }
  return out;
}

std::size_t peak_rss_kb()
{
  std::ifstream status("/proc/self/status");
  std::string line;
  while (std::getline(status, line)) {
    if (line.starts_with("VmHWM:")) { return std::stoul(line.substr(6)); }
  }
  return 0;
}

void reset_peak_rss()
{
  std::ofstream("/proc/self/clear_refs") << "5";
}

}  // namespace

int run_cluster(const ClusterOptions& o)
{
  const GcdDataset ds = load_dataset(o.input);
  const ChainConfig chain = chain_config(o.chain);
  Hierarchy h;
  if (o.algorithm == "snc") {
    h = run_snc(ds, chain);
  } else if (o.algorithm == "finch") {
    h = finch(ds.features());
  } else {
    throw ArgumentError("cluster supports --algorithm snc or finch, got " + o.algorithm);
  }
  std::optional<std::vector<double>> purity_by_level;
  if (!o.truth.empty()) {
    const auto truth = load_labels(o.truth, ds.size());
    purity_by_level  = level_purity(h, dense_truth(truth, o.truth));
  }
  json j = to_json(h, purity_by_level ? &*purity_by_level : nullptr);
  j["config"] = {{"command", "cluster"},
                 {"input", input_json(o.input)},
                 {"algorithm", o.algorithm},
                 {"chain", to_json(chain)},
                 {"truth", o.truth.empty() ? json(nullptr) : json(o.truth)}};
  emit(o.out, j);
  return 0;
}

int run_estimate(const EstimateOptions& o)
{
  const GcdDataset ds = load_dataset(o.input);
  const ChainConfig chain = chain_config(o.chain);
  EstimateConfig cfg;
  cfg.ratio           = o.ratio;
  cfg.seed            = o.seed;
  cfg.silhouette_cap  = o.sil_cap;
  cfg.band_multiplier = o.band;
  const KEstimate k = estimate_k(ds, cfg, chain);
  json j = to_json(k, o.runtime);
  j["config"] = {{"command", "estimate-k"},
                 {"input", input_json(o.input)},
                 {"chain", to_json(chain)},
                 {"ratio", o.ratio},
                 {"seed", o.seed},
                 {"silhouette_cap", o.sil_cap},
                 {"band_multiplier", o.band ? json(*o.band) : json(nullptr)}};
  emit(o.out, j);
  return 0;
}

int run_assign(const AssignOptions& o)
{
  const GcdDataset ds = load_dataset(o.input);
  const ChainConfig chain = chain_config(o.chain);
  std::vector<std::size_t> assignment;
  json extra = json::object();
  if (o.algorithm == "snc") {
    assignment = assign_labels(ds, o.k, chain);
  } else if (o.algorithm == "kmeans" || o.algorithm == "semi-kmeans") {
    KMeansConfig km{.k = o.k, .seed = o.seed, .max_iter = o.max_iter, .n_init = o.n_init};
    const KMeansResult r = o.algorithm == "kmeans" ? kmeans(ds.features(), km) : semi_kmeans(ds, km);
    assignment           = r.assignment;
    extra = {{"inertia", r.inertia}, {"iterations", r.iterations}, {"converged", r.converged}};
  } else {
    throw ArgumentError("assign supports --algorithm snc, kmeans or semi-kmeans, got " + o.algorithm);
  }
  write_assignment_csv(o.out, assignment);
  if (!o.meta.empty()) {
    write_json(o.meta, {{"config",
                         {{"command", "assign"},
                          {"input", input_json(o.input)},
                          {"algorithm", o.algorithm},
                          {"k", o.k},
                          {"chain", to_json(chain)},
                          {"seed", o.seed},
                          {"max_iter", o.max_iter},
                          {"n_init", o.n_init},
                          {"out", o.out}}},
                        {"result", extra}});
  }
  return 0;
}

int run_eval(const EvalOptions& o)
{
  const auto pred  = read_assignment_csv(o.pred);
  const auto truth = load_labels(o.truth, pred.size());
  const auto dense = dense_truth(truth, o.truth);

  std::set<std::int64_t> seen_original;
  std::vector<std::size_t> eval_set;
  if (!o.seen.empty()) {
    const auto observed = load_labels(o.seen, pred.size());
    seen_original.insert(observed.original.begin(), observed.original.end());
    for (std::size_t i = 0; i < pred.size(); ++i) {
      if (o.all_instances || !observed.labels[i]) { eval_set.push_back(i); }
    }
  } else {
    eval_set.resize(pred.size());
    for (std::size_t i = 0; i < pred.size(); ++i) { eval_set[i] = i; }
  }
  const AccReport r = clustering_accuracy(pred, dense, eval_set, seen_classes(truth, seen_original));

  if (o.out.ends_with(".csv")) {
    write_report_csv(o.out, r);
    return 0;
  }
  json j = to_json(r);
  j["config"] = {{"command", "eval"},
                 {"pred", o.pred},
                 {"truth", o.truth},
                 {"seen", o.seen.empty() ? json(nullptr) : json(o.seen)},
                 {"all_instances", o.all_instances}};
  emit(o.out, j);
  return 0;
}

int run_pseudo(const PseudoOptions& o)
{
  const GcdDataset ds = load_dataset(o.input);
  const ChainConfig chain = chain_config(o.chain);
  const Hierarchy h       = run_snc(ds, chain);
  const PseudoLabels p    = pseudo_labels(h, o.level);
  write_assignment_csv(o.out, p.assignment);
  if (!o.meta.empty()) {
    write_json(o.meta, {{"config",
                         {{"command", "pseudo"},
                          {"input", input_json(o.input)},
                          {"chain", to_json(chain)},
                          {"level", o.level},
                          {"out", o.out}}},
                        {"level_used", p.level},
                        {"clusters", h.levels[p.level].size()},
                        {"coarse_warning", p.coarse_warning}});
  }
  if (p.coarse_warning) {
    std::cerr << json{{"warning", "level " + std::to_string(p.level) +
                                      " has fewer than twice the labelled class count"}}.dump()
              << '\n';
  }
  return 0;
}

int run_loss(const LossOptions& o)
{
  const GcdDataset ds = load_dataset(o.input);
  std::ifstream in(o.batch);
  if (!in) { throw DataError("cannot open " + o.batch); }
  json batch_doc;
  try {
    batch_doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw DataError(o.batch + ": " + e.what());
  }
  if (!batch_doc.contains("indices") || !batch_doc.contains("pseudo")) {
    throw DataError(o.batch + ": expected keys `indices` and `pseudo`");
  }
  std::vector<std::size_t> indices, pseudo;
  try {
    indices = batch_doc.at("indices").get<std::vector<std::size_t>>();
    pseudo  = batch_doc.at("pseudo").get<std::vector<std::size_t>>();
  } catch (const json::exception& e) {
    throw DataError(o.batch + ": " + e.what());
  }
  const std::size_t d = ds.features().cols();
  std::vector<float> rows;
  std::vector<Label> labels;
  for (std::size_t i : indices) {
    if (i >= ds.size()) { throw DataError(o.batch + ": index " + std::to_string(i) + " out of range"); }
    const auto r = ds.features().row(i);
    rows.insert(rows.end(), r.begin(), r.end());
    labels.push_back(ds.label(i));
  }
  const Batch batch(indices, FeatureMatrix(indices.size(), d, std::move(rows), true), std::move(labels),
                    std::move(pseudo));
  const LossConfig cfg{.tau_s = o.tau_s, .tau_a = o.tau_a, .tau_u = o.tau_u};
  const PositiveSets sets = build_positive_sets(batch);
  json j = to_json(total_loss(batch, sets, cfg));
  j["unified"] = to_json(unified_loss(batch, sets, cfg));
  j["config"]  = {{"command", "loss"},
                  {"input", input_json(o.input)},
                  {"batch", o.batch},
                  {"tau_s", o.tau_s},
                  {"tau_a", o.tau_a},
                  {"tau_u", o.tau_u}};
  emit(o.out, j);
  return 0;
}

int run_gen_blobs(const BlobsOptions& o)
{
  BlobsConfig cfg;
  cfg.classes              = o.classes;
  cfg.seen                 = o.seen;
  cfg.labelled_per_seen    = o.labelled;
  cfg.unlabelled_per_class = o.per_class;
  cfg.dim                  = o.dim;
  cfg.sigma                = o.sigma;
  cfg.min_center_distance  = o.separation;
  cfg.seed                 = o.seed;
  const Blobs b = make_blobs(cfg);

  write_features(o.out_prefix + "features.bin", b.data.features(), FeatureFormat::binary);
  write_labels(o.out_prefix + "labels.csv", b.data.labels());
  std::vector<Label> truth(b.truth.begin(), b.truth.end());
  write_labels(o.out_prefix + "truth.csv", truth);
  write_json(o.out_prefix + "meta.json",
             {{"config",
               {{"command", "gen-blobs"},
                {"classes", o.classes},
                {"seen", o.seen},
                {"per_class", o.per_class},
                {"labelled_per_seen", o.labelled},
                {"dim", o.dim},
                {"sigma", o.sigma},
                {"min_separation", o.separation},
                {"seed", o.seed}}},
              {"instances", b.data.size()},
              {"seen_classes", b.seen},
              {"files",
               {{"features", o.out_prefix + "features.bin"},
                {"labels", o.out_prefix + "labels.csv"},
                {"truth", o.out_prefix + "truth.csv"}}}});
  return 0;
}

int run_bench(const BenchOptions& o)
{
  using clock = std::chrono::steady_clock;
  const GcdDataset ds = load_dataset(o.input);
  const ChainConfig chain = chain_config(o.chain);

  reset_peak_rss();
  auto t0             = clock::now();
  const auto snc_pred = assign_labels(ds, o.k, chain);
  const double snc_s  = std::chrono::duration<double>(clock::now() - t0).count();
  const auto snc_rss  = peak_rss_kb();

  reset_peak_rss();
  t0 = clock::now();
  KMeansConfig km{.k = o.k, .seed = o.seed, .max_iter = o.max_iter, .n_init = o.n_init};
  const KMeansResult r = semi_kmeans(ds, km);
  const double km_s    = std::chrono::duration<double>(clock::now() - t0).count();
  const auto km_rss    = peak_rss_kb();

  json j{{"snc", {{"seconds", snc_s}, {"peak_rss_kb", snc_rss}, {"clusters", o.k}}},
         {"semi_kmeans",
          {{"seconds", km_s},
           {"peak_rss_kb", km_rss},
           {"iterations", r.iterations},
           {"converged", r.converged}}},
         {"speedup", snc_s > 0.0 ? km_s / snc_s : 0.0},
         {"instances", ds.size()},
         {"dim", ds.features().cols()}};
  j["config"] = {{"command", "bench"},
                 {"input", input_json(o.input)},
                 {"k", o.k},
                 {"chain", to_json(chain)},
                 {"seed", o.seed},
                 {"max_iter", o.max_iter},
                 {"n_init", o.n_init}};
  emit(o.out, j);
  return 0;
}

}  // namespace snc::cli

/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include "commands.hpp"

#include <snc/error.hpp>
#include <snc/parallel.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <functional>
#include <iostream>

namespace {

using namespace snc::cli;

void add_input(CLI::App* app, InputOptions& in, bool labels = true)
{
  app->add_option("--features", in.features, "Feature file (.bin or .csv)")->required();
  if (labels) { app->add_option("--labels", in.labels, "Label CSV `index,label`"); }
  app->add_flag("--no-normalize", in.no_normalize, "Require unit rows instead of normalizing");
}

void add_chain(CLI::App* app, ChainOptions& c)
{
  app->add_option("--chain", c.rule, "Chain length rule: sqrt, cbrt, half or fixed:<len>")
    ->capture_default_str();
  app->add_option("--max-levels", c.max_levels, "Cap on levels above the singletons");
}

int fail(const char* kind, int code, const std::string& message)
{
  std::cerr << nlohmann::json{{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}}.dump()
            << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Semi-supervised hierarchical clustering toolkit"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();

  std::function<int()> action;

  ClusterOptions cluster;
  auto* c = app.add_subcommand("cluster", "Build the clustering hierarchy");
  add_input(c, cluster.input);
  add_chain(c, cluster.chain);
  c->add_option("--algorithm", cluster.algorithm, "snc or finch")
    ->check(CLI::IsMember({"snc", "finch"}))
    ->capture_default_str();
  c->add_option("--truth", cluster.truth, "Ground-truth CSV for per-level purity");
  c->add_option("--out", cluster.out, "Output JSON (stdout if omitted)");
  c->callback([&] { action = [&] { return run_cluster(cluster); }; });

  EstimateOptions est;
  auto* e = app.add_subcommand("estimate-k", "Estimate the number of classes");
  add_input(e, est.input);
  add_chain(e, est.chain);
  e->add_option("--ratio", est.ratio, "Labelled split ratio")->capture_default_str();
  e->add_option("--seed", est.seed, "Split and subsample seed")->capture_default_str();
  e->add_option("--silhouette-cap", est.sil_cap, "Silhouette subsample cap")
    ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()))
    ->capture_default_str();
  e->add_option("--band", est.band, "Cap the scan start at ceil(m * chosen level count)");
  e->add_flag("--runtime", est.runtime, "Include wall-clock runtime in the output");
  e->add_option("--out", est.out, "Output JSON (stdout if omitted)");
  e->callback([&] { action = [&] { return run_estimate(est); }; });

  AssignOptions assign;
  auto* a = app.add_subcommand("assign", "Assign every instance to one of k clusters");
  add_input(a, assign.input);
  add_chain(a, assign.chain);
  a->add_option("--k", assign.k, "Number of clusters")->required();
  a->add_option("--algorithm", assign.algorithm, "snc, kmeans or semi-kmeans")
    ->check(CLI::IsMember({"snc", "kmeans", "semi-kmeans"}))
    ->capture_default_str();
  a->add_option("--seed", assign.seed, "k-means seed")->capture_default_str();
  a->add_option("--max-iter", assign.max_iter, "k-means iteration cap")->capture_default_str();
  a->add_option("--n-init", assign.n_init, "k-means restarts")->capture_default_str();
  a->add_option("--out", assign.out, "Assignment CSV `index,cluster`")->required();
  a->add_option("--meta", assign.meta, "Resolved-config JSON");
  a->callback([&] { action = [&] { return run_assign(assign); }; });

  EvalOptions ev;
  auto* v = app.add_subcommand("eval", "Clustering accuracy against ground truth");
  v->add_option("--pred", ev.pred, "Assignment CSV `index,cluster`")->required();
  v->add_option("--truth", ev.truth, "Ground-truth CSV `index,label`")->required();
  v->add_option("--seen", ev.seen,
                "Observed label CSV; its classes are seen and its instances are skipped");
  v->add_flag("--all", ev.all_instances, "Also score the labelled instances");
  v->add_option("--out", ev.out, "Output JSON, or CSV when the name ends in .csv");
  v->callback([&] { action = [&] { return run_eval(ev); }; });

  PseudoOptions pseudo;
  auto* p = app.add_subcommand("pseudo", "Pseudo labels from one hierarchy level");
  add_input(p, pseudo.input);
  add_chain(p, pseudo.chain);
  p->add_option("--level", pseudo.level, "Hierarchy level (>= 1)")->capture_default_str();
  p->add_option("--out", pseudo.out, "Assignment CSV `index,cluster`")->required();
  p->add_option("--meta", pseudo.meta, "Resolved-config JSON");
  p->callback([&] { action = [&] { return run_pseudo(pseudo); }; });

  LossOptions loss;
  auto* l = app.add_subcommand("loss", "Contrastive loss terms for one batch");
  add_input(l, loss.input);
  l->add_option("--batch", loss.batch, "Batch JSON with `indices` and `pseudo`")->required();
  l->add_option("--tau-s", loss.tau_s)->capture_default_str();
  l->add_option("--tau-a", loss.tau_a)->capture_default_str();
  l->add_option("--tau-u", loss.tau_u)->capture_default_str();
  l->add_option("--out", loss.out, "Output JSON (stdout if omitted)");
  l->callback([&] { action = [&] { return run_loss(loss); }; });

  BlobsOptions blobs;
  auto* g = app.add_subcommand("gen-blobs", "Write a synthetic partially labelled dataset");
  g->add_option("--classes", blobs.classes)->capture_default_str();
  g->add_option("--seen", blobs.seen, "Classes with labelled instances")->capture_default_str();
  g->add_option("--per-class", blobs.per_class, "Unlabelled instances per class")->capture_default_str();
  g->add_option("--labelled-per-seen", blobs.labelled)->capture_default_str();
  g->add_option("--dim", blobs.dim)->capture_default_str();
  g->add_option("--sigma", blobs.sigma, "Per-coordinate noise")->capture_default_str();
  g->add_option("--min-separation", blobs.separation, "Minimum center distance")->capture_default_str();
  g->add_option("--seed", blobs.seed)->capture_default_str();
  g->add_option("--out-prefix", blobs.out_prefix, "Prefix for the written files")->capture_default_str();
  g->callback([&] { action = [&] { return run_gen_blobs(blobs); }; });

  BenchOptions bench;
  auto* b = app.add_subcommand("bench", "Time SNC assignment against semi-supervised k-means");
  add_input(b, bench.input);
  add_chain(b, bench.chain);
  b->add_option("--k", bench.k, "Number of clusters")->required();
  b->add_option("--seed", bench.seed)->capture_default_str();
  b->add_option("--max-iter", bench.max_iter)->capture_default_str();
  b->add_option("--n-init", bench.n_init)->capture_default_str();
  b->add_option("--out", bench.out, "Output JSON (stdout if omitted)");
  b->callback([&] { action = [&] { return run_bench(bench); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& s) {
    return app.exit(s);
  } catch (const CLI::ParseError& err) {
    return fail("usage", 2, err.what());
  }

  try {
    snc::set_thread_count(threads);
    return action();
  } catch (const snc::ArgumentError& err) {
    return fail("usage", 2, err.what());
  } catch (const snc::DataError& err) {
    return fail("data", 3, err.what());
  } catch (const snc::ConstraintError& err) {
    return fail("constraint", 4, err.what());
  } catch (const std::exception& err) {
    return fail("internal", 1, err.what());
  }
}

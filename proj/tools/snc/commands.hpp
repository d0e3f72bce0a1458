/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace snc::cli {

struct InputOptions {
  std::string features;
  std::string labels;
  bool no_normalize = false;
};

struct ChainOptions {
  std::string rule = "sqrt";
  std::optional<std::size_t> max_levels;
};

struct ClusterOptions {
  InputOptions input;
  ChainOptions chain;
  std::string algorithm = "snc";
  std::string truth;
  std::string out;
};

struct EstimateOptions {
  InputOptions input;
  ChainOptions chain;
  double ratio             = 0.8;
  std::uint64_t seed       = 0;
  std::size_t sil_cap      = 5000;
  std::optional<double> band;
  bool runtime             = false;
  std::string out;
};

struct AssignOptions {
  InputOptions input;
  ChainOptions chain;
  std::string algorithm = "snc";
  std::size_t k         = 0;
  std::uint64_t seed    = 0;
  std::size_t max_iter  = 300;
  std::size_t n_init    = 1;
  std::string out;
  std::string meta;
};

struct EvalOptions {
  std::string pred;
  std::string truth;
  std::string seen;
  bool all_instances = false;
  std::string out;
};

struct PseudoOptions {
  InputOptions input;
  ChainOptions chain;
  std::size_t level = 3;
  std::string out;
  std::string meta;
};

struct LossOptions {
  InputOptions input;
  std::string batch;
  double tau_s = 0.07;
  double tau_a = 0.1;
  double tau_u = 0.1;
  std::string out;
};

struct BlobsOptions {
  std::size_t classes    = 10;
  std::size_t seen       = 5;
  std::size_t per_class  = 100;
  std::size_t labelled   = 50;
  std::size_t dim        = 16;
  double sigma           = 0.05;
  double separation      = 0.5;
  std::uint64_t seed     = 0;
  std::string out_prefix = "blobs_";
};

struct BenchOptions {
  InputOptions input;
  ChainOptions chain;
  std::size_t k        = 0;
  std::uint64_t seed   = 0;
  std::size_t max_iter = 300;
  std::size_t n_init   = 1;
  std::string out;
};

int run_cluster(const ClusterOptions& o);
int run_estimate(const EstimateOptions& o);
int run_assign(const AssignOptions& o);
int run_eval(const EvalOptions& o);
int run_pseudo(const PseudoOptions& o);
int run_loss(const LossOptions& o);
int run_gen_blobs(const BlobsOptions& o);
int run_bench(const BenchOptions& o);

}  // namespace snc::cli

/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include <snc/estimate.hpp>
#include <snc/loss.hpp>
#include <snc/merge.hpp>
#include <snc/metrics.hpp>
#include <snc/snc.hpp>

#include <nlohmann/json.hpp>

#include <filesystem>
#include <span>
#include <string>

namespace snc {

std::string to_string(ChainRule rule);
/// Parses "sqrt", "cbrt", "half" or "fixed:<len>". Throws ArgumentError otherwise.
ChainConfig parse_chain_rule(const std::string& text);

nlohmann::json to_json(const ChainConfig& cfg);
nlohmann::json to_json(const Hierarchy& h, const std::vector<double>* level_purity = nullptr);
nlohmann::json to_json(const MergeTrace& trace);
nlohmann::json to_json(const ReferenceScore& s);
nlohmann::json to_json(const KEstimate& k, bool include_runtime = false);
nlohmann::json to_json(const AccReport& r);
nlohmann::json to_json(const LossValue& v);
nlohmann::json to_json(const TotalLoss& t);

/// `index,cluster` rows.
void write_assignment_csv(const std::filesystem::path& path, std::span<const std::size_t> assignment);
std::vector<std::size_t> read_assignment_csv(const std::filesystem::path& path);

/// `metric,value` rows; absent metrics are omitted.
void write_report_csv(const std::filesystem::path& path, const AccReport& r);

/// Pretty-printed, sorted keys, trailing newline.
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace snc

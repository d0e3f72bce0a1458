/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <snc/error.hpp>
#include <snc/serialize.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace snc {

using nlohmann::json;

std::string to_string(ChainRule rule)
{
  switch (rule) {
    case ChainRule::sqrt: return "sqrt";
    case ChainRule::cbrt: return "cbrt";
    case ChainRule::half: return "half";
    case ChainRule::fixed: return "fixed";
  }
  return "unknown";
}

ChainConfig parse_chain_rule(const std::string& text)
{
  ChainConfig cfg;
  if (text == "sqrt") {
    cfg.rule = ChainRule::sqrt;
  } else if (text == "cbrt") {
    cfg.rule = ChainRule::cbrt;
  } else if (text == "half") {
    cfg.rule = ChainRule::half;
  } else if (text.starts_with("fixed:")) {
    cfg.rule             = ChainRule::fixed;
    const auto digits    = std::string_view(text).substr(6);
    std::size_t len      = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), len);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || len < 1) {
      throw ArgumentError("fixed chain length must be a positive integer: " + text);
    }
    cfg.fixed_length = len;
  } else {
    throw ArgumentError("unknown chain rule: " + text);
  }
  return cfg;
}

json to_json(const ChainConfig& cfg)
{
  json j;
  j["rule"] = to_string(cfg.rule);
  if (cfg.rule == ChainRule::fixed) { j["fixed_length"] = cfg.fixed_length; }
  j["max_levels"] = cfg.max_levels ? json(*cfg.max_levels) : json(nullptr);
  return j;
}

json to_json(const Hierarchy& h, const std::vector<double>* level_purity)
{
  json levels = json::array();
  for (std::size_t p = 0; p < h.levels.size(); ++p) {
    const auto& part = h.levels[p];
    json clusters    = json::array();
    for (const auto& c : part.clusters) {
      clusters.push_back({{"members", c.members},
                          {"label", c.label ? json(*c.label) : json(nullptr)}});
    }
    json level{{"level", part.level}, {"count", part.size()}, {"clusters", std::move(clusters)}};
    if (level_purity) { level["purity"] = (*level_purity)[p]; }
    levels.push_back(std::move(level));
  }
  json trace = json::array();
  for (std::size_t p = 0; p < h.lambda_trace.size(); ++p) {
    json entries = json::array();
    for (const auto& e : h.lambda_trace[p]) {
      entries.push_back({{"label", e.label}, {"clusters", e.clusters}, {"chain_limit", e.chain_limit}});
    }
    trace.push_back({{"from_level", p}, {"classes", std::move(entries)}});
  }
  return {{"levels", std::move(levels)},
          {"provenance",
           {{"chain", to_json(h.config)},
            {"num_labelled_classes", h.num_labelled_classes},
            {"seed", nullptr},
            {"lambda_trace", std::move(trace)}}}};
}

json to_json(const MergeTrace& trace)
{
  json steps = json::array();
  for (const auto& s : trace.steps) {
    steps.push_back({{"pair", {s.first, s.second}}, {"similarity", s.similarity}, {"count", s.count}});
  }
  return {{"start", trace.start}, {"target", trace.target}, {"steps", std::move(steps)}};
}

json to_json(const ReferenceScore& s)
{
  return {{"acc_val", s.acc_val},
          {"sil_u", s.sil_u},
          {"s_scaled", s.s_scaled ? json(*s.s_scaled) : json(nullptr)}};
}

json to_json(const KEstimate& k, bool include_runtime)
{
  const auto points = [](const std::vector<ScanPoint>& pts, bool with_level) {
    json arr = json::array();
    for (const auto& p : pts) {
      json e = to_json(p.score);
      e["count"] = p.count;
      if (with_level) { e["level"] = p.level; }
      arr.push_back(std::move(e));
    }
    return arr;
  };
  json j{{"k", k.k},
         {"chosen_level", k.chosen_level},
         {"n_o", k.n_o},
         {"n_e", k.n_e},
         {"start_level", k.start_level},
         {"levels", points(k.levels, true)},
         {"scan", points(k.scan, false)}};
  if (include_runtime) { j["runtime_ms"] = k.runtime_ms; }
  return j;
}

json to_json(const AccReport& r)
{
  json mapping = json::array();
  for (const auto& [cluster, cls] : r.mapping) { mapping.push_back({cluster, cls}); }
  return {{"acc_all", r.acc_all},
          {"acc_seen", r.acc_seen ? json(*r.acc_seen) : json(nullptr)},
          {"acc_unseen", r.acc_unseen ? json(*r.acc_unseen) : json(nullptr)},
          {"evaluated", r.evaluated},
          {"mapping", std::move(mapping)}};
}

json to_json(const LossValue& v)
{
  return {{"sum", v.sum}, {"mean", v.mean}, {"scored", v.scored}, {"skipped", v.skipped}};
}

json to_json(const TotalLoss& t)
{
  return {{"all_data", to_json(t.all_data)}, {"labelled", to_json(t.labelled)}, {"total", t.total}};
}

void write_assignment_csv(const std::filesystem::path& path, std::span<const std::size_t> assignment)
{
  std::ofstream out(path);
  if (!out) { throw DataError("cannot write " + path.string()); }
  out << "index,cluster\n";
  for (std::size_t i = 0; i < assignment.size(); ++i) { out << i << ',' << assignment[i] << '\n'; }
}

std::vector<std::size_t> read_assignment_csv(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) { throw DataError("cannot open " + path.string()); }
  std::vector<std::pair<std::size_t, std::size_t>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') { line.pop_back(); }
    if (line.empty() || (line_no == 1 && line == "index,cluster")) { continue; }
    const auto comma = line.find(',');
    std::size_t index = 0, cluster = 0;
    const auto parse = [](std::string_view s, std::size_t& v) {
      const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      return ec == std::errc{} && ptr == s.data() + s.size() && !s.empty();
    };
    if (comma == std::string::npos || !parse(std::string_view(line).substr(0, comma), index) ||
        !parse(std::string_view(line).substr(comma + 1), cluster)) {
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected `index,cluster`");
    }
    rows.emplace_back(index, cluster);
  }
  std::vector<std::size_t> out(rows.size());
  std::vector<bool> seen(rows.size(), false);
  for (const auto& [i, c] : rows) {
    if (i >= rows.size() || seen[i]) {
      throw DataError(path.string() + ": indices must cover 0..n-1 exactly once");
    }
    seen[i] = true;
    out[i]  = c;
  }
  return out;
}

void write_report_csv(const std::filesystem::path& path, const AccReport& r)
{
  std::ofstream out(path);
  if (!out) { throw DataError("cannot write " + path.string()); }
  out << "metric,value\n";
  out << "acc_all," << json(r.acc_all).dump() << '\n';
  if (r.acc_seen) { out << "acc_seen," << json(*r.acc_seen).dump() << '\n'; }
  if (r.acc_unseen) { out << "acc_unseen," << json(*r.acc_unseen).dump() << '\n'; }
  out << "evaluated," << r.evaluated << '\n';
}

void write_json(const std::filesystem::path& path, const json& j)
{
  std::ofstream out(path);
  if (!out) { throw DataError("cannot write " + path.string()); }
  out << j.dump(2) << '\n';
}

}  // namespace snc

/*
 * SPDX-FileCopyrightText: Copyright (c) 2026, The snc-toolkit Authors.
 * SPDX-License-Identifier: Apache-2.0
 */

#include <snc/error.hpp>
#include <snc/serialize.hpp>

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace snc;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
  fs::path dir = fs::path(SNC_TEST_TMPDIR) / "serialize";
  fs::create_directories(dir);
  return dir / name;
}

std::string slurp(const fs::path& p)
{
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text)
{
  std::ofstream(p) << text;
}

}  // namespace

TEST_SUITE_BEGIN("serialize");

TEST_CASE("chain rule text")
{
  CHECK(parse_chain_rule("sqrt").rule == ChainRule::sqrt);
  CHECK(parse_chain_rule("cbrt").rule == ChainRule::cbrt);
  CHECK(parse_chain_rule("half").rule == ChainRule::half);
  const auto f = parse_chain_rule("fixed:3");
  CHECK(f.rule == ChainRule::fixed);
  CHECK(f.fixed_length == 3);
  CHECK(to_string(ChainRule::cbrt) == "cbrt");
  CHECK_THROWS_AS(parse_chain_rule("fixed:0"), ArgumentError);
  CHECK_THROWS_AS(parse_chain_rule("fixed:"), ArgumentError);
  CHECK_THROWS_AS(parse_chain_rule("log"), ArgumentError);

  const auto j = to_json(f);
  CHECK(j["rule"] == "fixed");
  CHECK(j["fixed_length"] == 3);
  CHECK(j["max_levels"].is_null());
  CHECK_FALSE(to_json(ChainConfig{}).contains("fixed_length"));
}

TEST_CASE("hierarchy json")
{
  const FeatureMatrix x(4, 2, {1, 0, 0.99f, 0.14f, 0, 1, 0.14f, 0.99f});
  const GcdDataset ds(l2_normalize(x), {0, std::nullopt, std::nullopt, 1});
  const auto h = run_snc(ds);
  const std::vector<double> pur(h.levels.size(), 1.0);
  const auto j = to_json(h, &pur);
  REQUIRE(j["levels"].size() == h.levels.size());
  CHECK(j["levels"][0]["count"] == 4);
  CHECK(j["levels"][0]["clusters"][1]["label"].is_null());
  CHECK(j["levels"][0]["clusters"][3]["label"] == 1);
  CHECK(j["levels"][0]["purity"] == 1.0);
  CHECK(j["provenance"]["num_labelled_classes"] == 2);
  CHECK(j["provenance"]["chain"]["rule"] == "sqrt");
  CHECK_FALSE(to_json(h).at("levels")[0].contains("purity"));
}

TEST_CASE("small records")
{
  AccReport r;
  r.acc_all  = 0.75;
  r.acc_seen = 1.0;
  r.mapping  = {{0, 1}, {1, 0}};
  r.evaluated = 4;
  const auto j = to_json(r);
  CHECK(j["acc_unseen"].is_null());
  CHECK(j["mapping"] == nlohmann::json::array({{0, 1}, {1, 0}}));

  const auto t = to_json(TotalLoss{{1.0, 0.5, 2, 1}, {}, 1.0});
  CHECK(t["all_data"]["skipped"] == 1);
  CHECK(t["total"] == 1.0);

  KEstimate k;
  k.runtime_ms = 5.0;
  CHECK_FALSE(to_json(k).contains("runtime_ms"));
  CHECK(to_json(k, true)["runtime_ms"] == 5.0);
}

TEST_CASE("assignment csv round trip")
{
  const auto p = scratch("assign.csv");
  const std::vector<std::size_t> a{2, 0, 1, 1, 0};
  write_assignment_csv(p, a);
  CHECK(slurp(p) == "index,cluster\n0,2\n1,0\n2,1\n3,1\n4,0\n");
  CHECK(read_assignment_csv(p) == a);

  spit(p, "index,cluster\n1,0\n0,3\n");
  CHECK(read_assignment_csv(p) == std::vector<std::size_t>{3, 0});

  spit(p, "index,cluster\n0,0\n0,1\n");
  CHECK_THROWS_AS(read_assignment_csv(p), DataError);
  spit(p, "index,cluster\n0,0\n2,1\n");
  CHECK_THROWS_AS(read_assignment_csv(p), DataError);
  spit(p, "index,cluster\n0,x\n");
  CHECK_THROWS_AS(read_assignment_csv(p), DataError);
  CHECK_THROWS_AS(read_assignment_csv(scratch("missing.csv")), DataError);
}

TEST_CASE("report csv and json files")
{
  AccReport r;
  r.acc_all   = 0.5;
  r.evaluated = 2;
  const auto p = scratch("report.csv");
  write_report_csv(p, r);
  CHECK(slurp(p).rfind("metric,value\nacc_all,0.5", 0) == 0);

  const auto jp = scratch("out.json");
  write_json(jp, nlohmann::json{{"b", 1}, {"a", 2}});
  const auto text = slurp(jp);
  CHECK(text.back() == '\n');
  CHECK(text.find("\"a\"") < text.find("\"b\""));
}

TEST_SUITE_END();

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "ncauth/errors.hpp"
#include "ncauth/scenario.hpp"
#include "ncauth/topology_io.hpp"

using namespace ncauth;
using nlohmann::json;

namespace {

json load(const std::string& name) {
  std::ifstream in(std::string(NCAUTH_SOURCE_DIR) + "/" + name);
  return json::parse(in);
}

json base_doc() {
  return json::parse(R"({"version": 1, "params": {"q": 2, "l": 3, "k": 2, "M": 2, "n": 2}, "seed": 4})");
}

std::string config_field(const json& doc) {
  try {
    run_scenario(parse_scenario(doc));
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

}  // namespace

TEST(ScenarioParse, RoundTripsThroughEcho) {
  const Scenario s = parse_scenario(load("scenarios/butterfly_forge.json"));
  EXPECT_EQ(s.q, 3u);
  EXPECT_EQ(s.attack.kind, AttackKind::kForge);
  EXPECT_EQ(s.attack.coeffs, (std::vector<std::uint32_t>{2, 2}));
  const json echo = scenario_to_json(s);
  EXPECT_EQ(scenario_to_json(parse_scenario(echo)), echo);
}

TEST(ScenarioParse, DiagnosticsNameTheField) {
  json d = base_doc();
  d["params"]["q"] = 4;
  EXPECT_EQ(config_field(d), "params.q");

  d = base_doc();
  d["bogus"] = 1;
  EXPECT_EQ(config_field(d), "bogus");

  d = base_doc();
  d["params"]["n"] = 3;
  EXPECT_EQ(config_field(d), "params.n");
  d["unsafe_n_gt_m"] = true;
  EXPECT_EQ(config_field(d), "");

  d = base_doc();
  d["adversaries"] = {"t1"};
  d["attack"] = {{"kind", "forge"}, {"coeffs", {1, 1}}};
  EXPECT_EQ(config_field(d), "attack.coeffs");

  d["attack"] = {{"kind", "forge"}, {"coeffs", {1, 0, 0}}};
  EXPECT_EQ(config_field(d), "attack.coeffs");

  d["attack"] = {{"kind", "forge"}, {"coeffs", {1, 0}}, {"target", {1, 0, 0}}};
  EXPECT_EQ(config_field(d), "attack");

  d["attack"] = {{"kind", "steal"}};
  EXPECT_EQ(config_field(d), "attack.kind");

  d = base_doc();
  d["attack"] = {{"kind", "pollute"}, {"node", "zz"}, {"edge", "c-d"}, {"coeffs", {1, 0}}};
  EXPECT_EQ(config_field(d), "attack.node");

  d = base_doc();
  d["attack"] = {{"kind", "pollute"}, {"node", "c"}, {"edge", "c-d"}, {"coeffs", {1}}};
  EXPECT_EQ(config_field(d), "attack");

  d = base_doc();
  d["adversaries"] = {"nobody"};
  d["attack"] = {{"kind", "recover"}};
  EXPECT_EQ(config_field(d), "adversaries[0]");

  d = base_doc();
  d["adversaries"] = {"s"};
  d["attack"] = {{"kind", "recover"}};
  EXPECT_EQ(config_field(d), "adversaries[0]");  // the source holds no key

  d = base_doc();
  d["messages"] = {{1, 0, 0}};
  EXPECT_EQ(config_field(d), "messages");

  d = base_doc();
  d["messages"] = {{1, 0, 0}, {1, 2, 0}};
  EXPECT_EQ(config_field(d), "messages[1][1]");

  d = base_doc();
  d["params"]["l"] = 1;  // F_2 has one nonzero point, the butterfly needs six
  EXPECT_EQ(config_field(d), "params.V");

  d = base_doc();
  d["params"]["public_points"] = {{1, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {0, 0, 1}, {1, 0, 1}};
  EXPECT_EQ(config_field(d), "params");

  d = base_doc();
  d["topology"] = "ring";
  EXPECT_EQ(config_field(d), "topology");

  d = base_doc();
  d["topology"] = load("scenarios/custom_topology.json")["topology"];
  d["topology"]["extra"] = true;
  EXPECT_EQ(config_field(d), "topology.extra");

  EXPECT_THROW(parse_scenario(json::array()), ConfigError);
}

TEST(Scenario, HonestButterflyAcceptsAndDecodes) {
  const json r = run_scenario(parse_scenario(load("scenarios/butterfly_honest.json")));
  EXPECT_TRUE(r["honest"]["all_accepted"].get<bool>());
  EXPECT_FALSE(r["honest"]["any_divergent"].get<bool>());
  ASSERT_EQ(r["honest"]["sinks"].size(), 2u);
  for (const auto& s : r["honest"]["sinks"]) {
    EXPECT_EQ(s["status"], "ok");
    EXPECT_EQ(s["payloads"], r["messages"]);
  }
  EXPECT_EQ(r["version"], kReportVersion);
  EXPECT_EQ(r["seed"], 11);
}

TEST(Scenario, PollutedButterflyAcceptedButDivergent) {
  const json r = run_scenario(parse_scenario(load("scenarios/butterfly_pollute.json")));
  const json& a = r["attack"];
  EXPECT_TRUE(a["all_accepted"].get<bool>());
  EXPECT_TRUE(a["substitution_changed_packet"].get<bool>());
  EXPECT_TRUE(a["any_divergent"].get<bool>());
}

TEST(Scenario, ForgeReport) {
  const json r = run_scenario(parse_scenario(load("scenarios/butterfly_forge.json")));
  const json& a = r["attack"];
  EXPECT_TRUE(a["performed"].get<bool>());
  EXPECT_TRUE(a["equals_honest_tag"].get<bool>());
  EXPECT_TRUE(a["all_verifiers_accept"].get<bool>());
  // 2*(1 + 2w) + 2*w = 2 + 6w = (2, 0) over F_3
  EXPECT_EQ(a["forged_payload"], json::array({2, 0}));
  EXPECT_TRUE(a["substituted_run"]["all_accepted"].get<bool>());
  EXPECT_TRUE(a["substituted_run"]["any_divergent"].get<bool>());
}

TEST(Scenario, ForgeByTarget) {
  const json r = run_scenario(parse_scenario(load("scenarios/forge_target.json")));
  const json& a = r["attack"];
  EXPECT_TRUE(a["target_reachable"].get<bool>());
  EXPECT_EQ(a["forged_payload"], json::array({4}));
  EXPECT_TRUE(a["all_verifiers_accept"].get<bool>());
}

TEST(Scenario, ForgeNeedsDecodingCoalition) {
  json d = load("scenarios/butterfly_forge.json");
  d["adversaries"] = {"a"};
  const json r = run_scenario(parse_scenario(d));
  EXPECT_FALSE(r["attack"]["coalition_can_decode"].get<bool>());
  EXPECT_FALSE(r["attack"]["performed"].get<bool>());
}

TEST(Scenario, RecoverReport) {
  const json r = run_scenario(parse_scenario(load("scenarios/recover_small.json")));
  const json& a = r["attack"];
  EXPECT_EQ(a["h_condition"]["h_total"], 2);
  EXPECT_FALSE(a["h_condition"]["condition_held"].get<bool>());
  EXPECT_EQ(a["predicted_count"], a["gauss"]["count"]);
  EXPECT_EQ(a["brute_force"], a["gauss"]["count"]);
  EXPECT_TRUE(a["counts_match"].get<bool>());
  EXPECT_TRUE(a["rank_matches"].get<bool>());
  EXPECT_TRUE(a["true_key_satisfies"].get<bool>());
  EXPECT_TRUE(a["observation_matches_HSn"].get<bool>());
}

TEST(Scenario, RecoverAboveGuardIsResourceError) {
  json d = load("scenarios/recover_small.json");
  d["guard"] = 100;
  EXPECT_THROW(run_scenario(parse_scenario(d)), ResourceError);
}

TEST(Scenario, RecoverOutsideCountingRange) {
  json d = load("scenarios/recover_small.json");
  d["adversaries"] = {"a", "b"};  // K = 2 = k
  const json r = run_scenario(parse_scenario(d));
  EXPECT_FALSE(r["attack"]["count_hypothesis_held"].get<bool>());
  EXPECT_TRUE(r["attack"]["predicted_count"].is_null());
}

TEST(Scenario, CustomTopology) {
  const json r = run_scenario(parse_scenario(load("scenarios/custom_topology.json")));
  EXPECT_TRUE(r["honest"]["all_accepted"].get<bool>());
  EXPECT_EQ(r["honest"]["sinks"][0]["status"], "ok");
  EXPECT_EQ(r["network"]["global_kernels"]["mix-t"], json::array({1, 2}));
}

TEST(Scenario, ReportIsDeterministic) {
  const Scenario s = parse_scenario(load("scenarios/butterfly_pollute.json"));
  EXPECT_EQ(run_scenario(s).dump(2), run_scenario(s).dump(2));
  json d = load("scenarios/butterfly_pollute.json");
  d["seed"] = 12;
  EXPECT_NE(run_scenario(parse_scenario(d)).dump(), run_scenario(s).dump());
  EXPECT_EQ(demo_report(3).dump(), demo_report(3).dump());
}

TEST(Scenario, KeygenReportConsistent) {
  const json r = keygen_report(parse_scenario(load("scenarios/butterfly_honest.json")));
  EXPECT_EQ(r["source_key"].size(), 3u);     // M+1 rows
  EXPECT_EQ(r["source_key"][0].size(), 2u);  // k columns
  EXPECT_EQ(r["verifier_keys"].size(), 6u);
  EXPECT_EQ(r["verifier_keys"][0]["node"], "a");
}

TEST(TopologyIo, RoundTrip) {
  const auto base = make_field(3, 1);
  const Network net = topologies::butterfly(base, 2);
  const json doc = network_to_json(net);
  const Network back = network_from_json(doc, base, 2);
  EXPECT_EQ(network_to_json(back), doc);
  EXPECT_THROW(network_from_json(doc, base, 3), ConfigError);
  json bad = doc;
  bad["kernels"]["c"] = {{1}, {3}};
  try {
    network_from_json(bad, base, 2);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "topology.kernels.c[1][0]");
  }
  bad = doc;
  bad["edges"][0]["head"] = "nowhere";
  EXPECT_THROW(network_from_json(bad, base, 2), ConfigError);
  bad = doc;
  bad["kernels"].erase("d");
  EXPECT_THROW(network_from_json(bad, base, 2), ConfigError);
  EXPECT_NO_THROW(network_from_json(bad, base, 2, true));
}

TEST(Sweep, MinimalAcceptanceRows) {
  const SweepConfig cfg = parse_sweep(load("scenarios/sweep_minimal.json"));
  const SweepResult r = lemma_sweep(cfg);
  ASSERT_EQ(r.rows.size(), 10u);
  for (const auto& row : r.rows) {
    EXPECT_FALSE(row.skipped.has_value());
    EXPECT_TRUE(row.ok());
  }
  EXPECT_EQ(r.mismatches(), 0u);
}

TEST(Sweep, EmptyRange) {
  SweepConfig cfg;
  const SweepResult r = lemma_sweep(cfg);
  EXPECT_TRUE(r.rows.empty());
  EXPECT_NE(sweep_to_table(r).find("0 instances"), std::string::npos);
}

TEST(Sweep, SkipsOutOfRangeRows) {
  SweepConfig cfg;
  cfg.q = {2};
  cfg.l = {1, 3};
  cfg.k = {2};
  cfg.M = {1, 6};
  cfg.K = {1, 2};
  const SweepResult r = lemma_sweep(cfg);
  ASSERT_EQ(r.rows.size(), 8u);
  for (const auto& row : r.rows) {
    const bool should_skip = row.K >= row.k || (row.l == 3 && row.M == 6);  // 2^42 > guard
    if (row.K >= row.k) EXPECT_TRUE(row.skipped.has_value());
    if (!should_skip) EXPECT_FALSE(row.skipped.has_value());
  }
  EXPECT_EQ(r.mismatches(), 0u);
}

TEST(Sweep, IncludesRowsWithExcessHTotal) {
  SweepConfig cfg;
  cfg.q = {2, 3};
  cfg.l = {1, 2};
  cfg.k = {2, 3};
  cfg.M = {1};
  cfg.K = {1, 2};
  cfg.repetitions = 3;
  const SweepResult r = lemma_sweep(cfg);
  std::size_t excess = 0;
  for (const auto& row : r.rows) excess += !row.skipped && !row.condition_held;
  EXPECT_GE(excess, 1u);
  EXPECT_EQ(r.mismatches(), 0u);
}

TEST(Sweep, ParseErrors) {
  EXPECT_THROW(parse_sweep(json::parse(R"({"q": [4]})")), ConfigError);
  EXPECT_THROW(parse_sweep(json::parse(R"({"topologies": ["ring"]})")), ConfigError);
  EXPECT_THROW(parse_sweep(json::parse(R"({"K": [-1]})")), ConfigError);
  EXPECT_THROW(parse_sweep(json::parse(R"({"surprise": 1})")), ConfigError);
}

TEST(Sweep, JsonAndTableAgree) {
  const SweepConfig cfg = parse_sweep(load("scenarios/sweep_minimal.json"));
  const SweepResult r = lemma_sweep(cfg);
  const json j = sweep_to_json(cfg, r);
  EXPECT_EQ(j["summary"]["instances"], 10);
  EXPECT_EQ(j["summary"]["mismatches"], 0);
  EXPECT_NE(sweep_to_table(r).find("summary: 10 instances, 0 skipped, 0 mismatches"), std::string::npos);
  EXPECT_EQ(sweep_to_json(cfg, lemma_sweep(cfg)).dump(), j.dump());
}

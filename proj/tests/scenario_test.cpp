#include "tokenlab/scenario.hpp"

#include <cstdlib>
#include <random>

#include <gtest/gtest.h>

namespace tokenlab::scenario {
namespace {

std::filesystem::path scenarios_dir() {
  if (const char* d = std::getenv("TOKENLAB_SCENARIOS")) return d;
  return "scenarios";
}

std::string key_of(std::string_view text) {
  try {
    parse_scenario_text(text);
  } catch (const ValidationError& e) {
    return e.key();
  }
  return "";
}

class ScenarioTest : public ::testing::Test {
 protected:
  void SetUp() override { unsetenv(kSeedEnv); }
  void TearDown() override { unsetenv(kSeedEnv); }
};

TEST_F(ScenarioTest, EmptyDocumentGivesDefaults) {
  const auto s = parse_scenario_text("{}");
  EXPECT_EQ(s.config.mode, engine::Mode::FullInfo23);
  EXPECT_EQ(s.config.cycles, 100);
  EXPECT_EQ(s.config.trials, 1000);
  EXPECT_EQ(s.config.collapse_rule.theta, 1.0);
  EXPECT_EQ(s.config.collapse_rule.p_r, 0.0);
  EXPECT_EQ(s.config.seed, 0u);
  EXPECT_EQ(s.config.params, analytic::ModelParams{});
  EXPECT_FALSE(s.pool);
}

TEST_F(ScenarioTest, DomainViolationsNameTheKey) {
  EXPECT_EQ(key_of(R"({"params": {"epsilon": 1.2}})"), "epsilon");
  EXPECT_EQ(key_of(R"({"params": {"n": 1}})"), "n");
  EXPECT_EQ(key_of(R"({"collapse_rule": {"theta": -0.1}})"), "theta");
  EXPECT_EQ(key_of(R"({"mode": "Barter"})"), "mode");
  EXPECT_EQ(key_of(R"({"exo": {"u_e": 1, "units": 2, "price": 3}})"), "exo");
  EXPECT_EQ(key_of(R"({"pool": {"reserve_x": 0, "reserve_y": 1, "victim_in": 1}})"), "reserve_x");
}

TEST_F(ScenarioTest, UnknownKeysAreRejected) {
  EXPECT_THROW(parse_scenario_text(R"({"parms": {}})"), ParseError);
  EXPECT_THROW(parse_scenario_text(R"({"params": {"beta": 1}})"), ParseError);
  EXPECT_THROW(parse_scenario_text(R"({"engine": {"speed": 3}})"), ParseError);
  EXPECT_THROW(parse_scenario_text(R"({"params": {"alpha": "high"}})"), ParseError);
  EXPECT_THROW(parse_scenario_text("{not json"), ParseError);
  EXPECT_THROW(parse_scenario(scenarios_dir() / "missing.json"), ParseError);
}

TEST_F(ScenarioTest, ShippedScenariosLoad) {
  const auto dao = parse_scenario(scenarios_dir() / "dao_2016.json");
  EXPECT_EQ(dao.config.mode, engine::Mode::CryptoLedger);
  EXPECT_NEAR(dao.config.exo.u_e, 2'168'640.0, 1e-6);
  EXPECT_EQ(dao.theft.tokens, 3'600'000);
  EXPECT_EQ(dao.theft.fate, analytic::LedgerFate::Rewritten);

  const auto fi = parse_scenario(scenarios_dir() / "full_info_threshold.json");
  EXPECT_EQ(fi.config.cycles, 1000);
  EXPECT_EQ(fi.config.seed, 7u);
}

TEST_F(ScenarioTest, SeedFromEnvironment) {
  setenv(kSeedEnv, "31337", 1);
  EXPECT_EQ(parse_scenario_text("{}").config.seed, 31337u);
  EXPECT_EQ(parse_scenario_text(R"({"seed": 5})").config.seed, 5u);
  setenv(kSeedEnv, "abc", 1);
  EXPECT_THROW(parse_scenario_text("{}"), ValidationError);
}

TEST_F(ScenarioTest, Overrides) {
  auto s = parse_scenario_text("{}");
  apply_override(s, "alpha", 0.25);
  apply_override(s, "theta", 0.5);
  apply_override(s, "n", 4);
  EXPECT_EQ(s.config.params.alpha, 0.25);
  EXPECT_EQ(s.config.collapse_rule.theta, 0.5);
  EXPECT_EQ(s.config.params.n, 4);
  EXPECT_THROW(apply_override(s, "n", 2.5), ValidationError);
  EXPECT_THROW(apply_override(s, "epsilon", 1.0), ValidationError);
  EXPECT_THROW(apply_override(s, "warp", 1.0), ValidationError);
  EXPECT_TRUE(is_standard_column("p_r"));
  EXPECT_FALSE(is_standard_column("participation"));
}

TEST_F(ScenarioTest, TokenProfileSection) {
  const auto s = parse_scenario_text(
      R"({"token_profile": {"security": "exo", "host": "private", "backing": "claim"}})");
  ASSERT_TRUE(s.token_profile);
  EXPECT_EQ(s.token_profile->trust_locus, taxonomy::Locus::Exogenous);
  EXPECT_EQ(s.token_profile->value_backing, taxonomy::ValueBacking::ClaimBased);
  EXPECT_EQ(key_of(R"({"token_profile": {"trust": "exo", "host": "public"}})"), "trust");
}

// Random valid scenarios survive to_json -> from_json unchanged.
TEST_F(ScenarioTest, RoundTripProperty) {
  std::mt19937_64 g(5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const engine::Mode modes[] = {engine::Mode::Bilateral22,        engine::Mode::FullInfo23,
                                engine::Mode::MoneySemianon31,    engine::Mode::MoneyOrBilateral32,
                                engine::Mode::MoneyOrFullInfo33,  engine::Mode::CryptoLedger};
  for (int i = 0; i < 500; ++i) {
    ScenarioFile s;
    auto& c = s.config;
    c.params.alpha = unit(g);
    c.params.epsilon = 0.001 + 0.998 * unit(g);
    c.params.f = 10 * unit(g);
    c.params.u = 10 * unit(g);
    c.params.c = unit(g) - 0.5;
    c.params.s = unit(g);
    c.params.delta = 0.01 + 0.99 * unit(g);
    c.params.n = 2 + static_cast<std::int64_t>(g() % 50);
    c.exo = {unit(g) * 100, unit(g)};
    c.mode = modes[g() % 6];
    c.collapse_rule = {unit(g), unit(g)};
    c.cycles = 1 + static_cast<std::int64_t>(g() % 1000);
    c.trials = 1 + static_cast<std::int64_t>(g() % 1000);
    c.seed = g();
    c.participation = unit(g);
    if (g() % 2) c.money_supply = static_cast<std::int64_t>(g() % c.params.n);
    c.initial_balance = g() % 100;
    if (g() % 2) c.balances.assign(static_cast<std::size_t>(c.params.n), g() % 7);
    if (g() % 2) c.important = {0};
    c.theft_units = 1 + g() % 5;
    s.theft = {1 + static_cast<std::int64_t>(g() % 100),
               static_cast<analytic::LedgerFate>(g() % 3)};
    if (g() % 2)
      s.pool = PoolSpec{{1 + unit(g) * 1e6, 1 + unit(g) * 1e6},
                        {1 + unit(g) * 1e3, unit(g), (g() % 2) ? pool::Side::XtoY : pool::Side::YtoX},
                        unit(g) * 1e4,
                        unit(g),
                        unit(g)};
    if (g() % 2) {
      taxonomy::TokenProfile t;
      t.security_locus = (g() % 2) ? taxonomy::Locus::Endogenous : taxonomy::Locus::Exogenous;
      t.host_ledger = (g() % 2) ? taxonomy::LedgerKind::PublicPermissionless
                                : taxonomy::LedgerKind::PrivateOrConsortium;
      t.trust_locus = taxonomy::trust_locus_of(t.host_ledger);
      t.value_backing = (g() % 2) ? taxonomy::ValueBacking::ObjectBased
                                  : taxonomy::ValueBacking::ClaimBased;
      t.value_timing = taxonomy::value_timing_heuristic(t);
      s.token_profile = t;
    }
    ASSERT_NO_THROW(c.validate());
    const auto text = to_json(s).dump();
    const auto back = parse_scenario_text(text);
    ASSERT_TRUE(back == s) << text;
    EXPECT_EQ(to_json(back).dump(), text);
  }
}

}  // namespace
}  // namespace tokenlab::scenario

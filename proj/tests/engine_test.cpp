#include "tokenlab/engine.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include <gtest/gtest.h>

namespace tokenlab::engine {
namespace {

analytic::ModelParams worked() {
  analytic::ModelParams p;
  p.alpha = 0.2;
  p.epsilon = 0.5;
  p.f = 1.0;
  p.u = 1.0;
  p.c = 0.1;
  p.s = 0.05;
  p.delta = 0.9;
  p.n = 10;
  return p;
}

CycleConfig ledger_config() {
  CycleConfig cfg;
  cfg.params = worked();
  cfg.mode = Mode::CryptoLedger;
  cfg.cycles = 1;
  cfg.trials = 1;
  cfg.participation = 1.0;
  cfg.threads = 1;
  return cfg;
}

TEST(Modes, NamesRoundTrip) {
  for (auto m : {Mode::Bilateral22, Mode::FullInfo23, Mode::MoneySemianon31,
                 Mode::MoneyOrBilateral32, Mode::MoneyOrFullInfo33, Mode::CryptoLedger})
    EXPECT_EQ(parse_mode(to_string(m)), m);
  EXPECT_FALSE(parse_mode("Barter"));
  EXPECT_FALSE(credit_allowed(Mode::MoneySemianon31));
  EXPECT_FALSE(money_allowed(Mode::CryptoLedger));
}

TEST(Policy, Consumer) {
  const auto p = worked();
  AgentState holder;
  holder.money = 1;
  AgentState broke;
  EXPECT_EQ(consumer_policy(Mode::MoneyOrBilateral32, holder, p), Payment::UseMoney);
  EXPECT_EQ(consumer_policy(Mode::MoneyOrBilateral32, broke, p), Payment::UseCredit);
  EXPECT_EQ(consumer_policy(Mode::MoneySemianon31, broke, p), Payment::Abstain);
  EXPECT_EQ(consumer_policy(Mode::FullInfo23, holder, p), Payment::UseCredit);

  auto free_credit = p;
  free_credit.alpha = 0.0;  // tie goes to money
  EXPECT_EQ(consumer_policy(Mode::MoneyOrFullInfo33, holder, free_credit), Payment::UseMoney);

  auto dear = p;
  dear.s = 1.5;
  EXPECT_EQ(consumer_policy(Mode::MoneyOrBilateral32, holder, dear), Payment::Abstain);

  AgentState shunned;
  shunned.autarkic = true;
  EXPECT_EQ(consumer_policy(Mode::FullInfo23, shunned, p), Payment::Abstain);
}

TEST(Policy, Supplier) {
  AgentState a;
  auto p = worked();
  EXPECT_EQ(supplier_policy(Mode::FullInfo23, a, p, 1.0), SupplyDecision::Supply);
  p.s = 0.9;
  EXPECT_EQ(supplier_policy(Mode::FullInfo23, a, p, 1.0), SupplyDecision::Defect);
  p.s = 0.0;
  EXPECT_EQ(supplier_policy(Mode::FullInfo23, a, p, 0.0), SupplyDecision::Supply);
}

TEST(Policy, LedgerRobberTakesLargestBalance) {
  auto cfg = ledger_config();
  cfg.balances = {3, 9, 1, 9, 0, 2, 4, 7, 5, 6};
  Rng rng(1);
  const auto state = initial_state(cfg, rng);
  EXPECT_EQ(robber_policy(state, 0, cfg, rng), AgentId{1});  // tie on 9 -> lower id
  EXPECT_EQ(robber_policy(state, 1, cfg, rng), AgentId{3});
  EXPECT_DOUBLE_EQ(robber_benefit(state, cfg, 1), 0.2 - 0.1);
}

TEST(Policy, LedgerRobberAvoidsRewritableAccounts) {
  auto cfg = ledger_config();
  cfg.balances = {1, 1, 1, 1, 1, 1, 1, 1, 1, 50};
  cfg.important = {9};
  cfg.collapse_rule.p_r = 1.0;
  Rng rng(2);
  const auto state = initial_state(cfg, rng);
  EXPECT_EQ(expected_upsilon(state, cfg, 9), 0.0);
  EXPECT_EQ(expected_upsilon(state, cfg, 1), 1.0);
  const auto target = robber_policy(state, 0, cfg, rng);
  ASSERT_TRUE(target);
  EXPECT_NE(*target, AgentId{9});
}

TEST(Policy, DeterredRobberStaysHome) {
  auto cfg = ledger_config();
  cfg.params.c = 0.2;  // alpha*u - c = 0, not strictly positive
  Rng rng(3);
  const auto state = initial_state(cfg, rng);
  for (AgentId r = 0; r < 10; ++r) EXPECT_FALSE(robber_policy(state, r, cfg, rng));
}

TEST(Simulation, ZeroAlphaNeverSucceeds) {
  auto cfg = ledger_config();
  cfg.params.alpha = 0.0;
  cfg.params.c = -0.5;  // attack anyway
  cfg.cycles = 50;
  cfg.trials = 20;
  const auto stats = run_simulation(cfg);
  EXPECT_GT(stats.theft_attempts, 0);
  EXPECT_EQ(stats.theft_successes, 0);
  EXPECT_DOUBLE_EQ(stats.mean_robber_payoff, 0.5);
}

TEST(Simulation, ZeroThresholdCollapsesOnFirstTheft) {
  auto cfg = ledger_config();
  cfg.params.alpha = 1.0;
  cfg.exo.u_e = 1.0;
  cfg.collapse_rule.theta = 0.0;
  cfg.cycles = 10;
  Rng rng = substream(cfg.seed, 0);
  auto state = initial_state(cfg, rng);
  const auto rec = run_cycle(state, cfg, rng);
  EXPECT_TRUE(rec.collapsed);
  EXPECT_TRUE(state.terminated());
  EXPECT_EQ(state.collapse_cycle, 1);
  ASSERT_TRUE(rec.robber_payoff);
  EXPECT_DOUBLE_EQ(*rec.robber_payoff, 1.0 - 0.1);  // mu = 0

  const auto next = run_cycle(state, cfg, rng);
  EXPECT_EQ(next.trades, 0);
  EXPECT_EQ(next.theft_attempts, 0);

  const auto stats = run_simulation(cfg);
  EXPECT_EQ(stats.collapse_cycle, 1);
  EXPECT_EQ(stats.collapsed_trials, 1);
}

TEST(Simulation, CertainRewriteOfImportantHolder) {
  auto cfg = ledger_config();
  cfg.params.alpha = 1.0;
  cfg.exo.u_e = 1.0;
  cfg.collapse_rule.p_r = 1.0;
  cfg.important = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  Rng rng = substream(5, 0);
  auto state = initial_state(cfg, rng);
  const auto rec = run_cycle(state, cfg, rng);
  ASSERT_EQ(rec.theft_successes, 1);
  EXPECT_TRUE(rec.rewritten);
  EXPECT_FALSE(rec.collapsed);
  EXPECT_EQ(state.stolen_standing, 0u);
  EXPECT_DOUBLE_EQ(*rec.robber_payoff, 1.0 - 0.1);
  EXPECT_EQ(state.ledger->balance_sum(), state.ledger->total_supply());
}

TEST(Simulation, DeterministicAcrossThreadCounts) {
  CycleConfig cfg;
  cfg.params = worked();
  cfg.params.c = 0.05;
  cfg.mode = Mode::MoneyOrFullInfo33;
  cfg.cycles = 40;
  cfg.trials = 64;
  cfg.seed = 99;
  cfg.threads = 1;
  const auto a = run_simulation(cfg);
  cfg.threads = 4;
  const auto b = run_simulation(cfg);
  EXPECT_EQ(a.trades, b.trades);
  EXPECT_EQ(a.theft_attempts, b.theft_attempts);
  EXPECT_EQ(a.theft_successes, b.theft_successes);
  EXPECT_EQ(a.mean_robber_payoff, b.mean_robber_payoff);
  EXPECT_EQ(a.stderr_robber_payoff, b.stderr_robber_payoff);
  cfg.seed = 100;
  const auto c = run_simulation(cfg);
  EXPECT_NE(std::make_tuple(a.trades, a.theft_attempts, a.mean_robber_payoff),
            std::make_tuple(c.trades, c.theft_attempts, c.mean_robber_payoff));
}

TEST(Simulation, MoneyIsConserved) {
  for (auto mode : {Mode::MoneySemianon31, Mode::MoneyOrBilateral32, Mode::MoneyOrFullInfo33}) {
    CycleConfig cfg;
    cfg.params = worked();
    cfg.params.n = 17;
    cfg.mode = mode;
    cfg.cycles = 200;
    cfg.seed = 3;
    const auto m = cfg.resolved_money_supply();
    EXPECT_EQ(m, 8);
    run_trial(cfg, 0, [&](const SimState& s, const CycleRecord&) {
      ASSERT_EQ(s.money_total(), m);
      for (const auto& a : s.agents) ASSERT_TRUE(a.money == 0 || a.money == 1);
    });
  }
}

TEST(Simulation, AutarkyIsAbsorbing) {
  CycleConfig cfg;
  cfg.params = worked();
  cfg.params.s = 0.7;  // continuation value cannot cover defection
  cfg.mode = Mode::FullInfo23;
  cfg.cycles = 100;
  cfg.seed = 11;
  std::vector<bool> shunned(10, false);
  std::int64_t defections = 0;
  run_trial(cfg, 0, [&](const SimState& s, const CycleRecord& rec) {
    for (const auto& t : rec.trade_log)
      if (t.payment == Payment::UseCredit) EXPECT_FALSE(t.completed);
    for (const auto& t : rec.trade_log) EXPECT_FALSE(shunned[t.consumer] && t.payment != Payment::Abstain);
    defections += rec.defections;
    for (const auto& a : s.agents) {
      if (shunned[a.id]) EXPECT_TRUE(a.autarkic);
      shunned[a.id] = a.autarkic;
    }
  });
  // Every supplier defects, so credit never clears and the last honest agent
  // is left without a partner.
  EXPECT_GT(defections, 0);
  EXPECT_GE(std::count(shunned.begin(), shunned.end(), true), 5);
}

TEST(Simulation, BilateralSanctionIsPairwise) {
  CycleConfig cfg;
  cfg.params = worked();
  cfg.params.s = 0.7;
  cfg.mode = Mode::Bilateral22;
  cfg.cycles = 30;
  cfg.seed = 4;
  run_trial(cfg, 0, [&](const SimState& s, const CycleRecord& rec) {
    for (const auto& a : s.agents) EXPECT_FALSE(a.autarkic);
    for (auto d : rec.defectors) EXPECT_FALSE(s.agents[d].revoked_partners.empty());
  });
}

TEST(Simulation, InformedRobberOutperformsRandomTargeting) {
  CycleConfig cfg;
  cfg.params = worked();
  cfg.params.alpha = 0.5;
  cfg.params.c = -1.0;  // both robbers attack every cycle
  cfg.cycles = 50;
  cfg.trials = 200;
  cfg.seed = 8;
  cfg.mode = Mode::FullInfo23;
  const auto informed = run_simulation(cfg);
  cfg.mode = Mode::Bilateral22;
  const auto blind = run_simulation(cfg);
  ASSERT_GT(informed.theft_attempts, 0);
  ASSERT_GT(blind.theft_attempts, 0);
  const double hit_informed =
      static_cast<double>(informed.theft_successes) / static_cast<double>(informed.theft_attempts);
  const double hit_blind =
      static_cast<double>(blind.theft_successes) / static_cast<double>(blind.theft_attempts);
  EXPECT_GT(hit_informed, hit_blind);
  EXPECT_GT(informed.mean_robber_payoff, blind.mean_robber_payoff);
}

TEST(Simulation, DeterrenceSilencesRobbers) {
  CycleConfig cfg;
  cfg.params = worked();
  cfg.params.alpha = 0.5;
  cfg.params.c = 0.3;  // alpha*epsilon*f - c < 0
  cfg.mode = Mode::FullInfo23;
  cfg.cycles = 100;
  cfg.trials = 50;
  EXPECT_EQ(run_simulation(cfg).theft_attempts, 0);
  cfg.mode = Mode::CryptoLedger;
  cfg.params.c = 0.5;  // alpha*u - c = 0
  EXPECT_EQ(run_simulation(cfg).theft_attempts, 0);
}

TEST(Simulation, LedgerPayoffMatchesClosedForm) {
  auto cfg = ledger_config();
  cfg.trials = 20'000;
  cfg.seed = 21;
  cfg.threads = 0;
  const auto est = estimate_theft_benefit(cfg);
  EXPECT_EQ(est.attempts, 20'000);
  const double expected = analytic::crypto_theft_benefit(cfg.params, 1.0);
  EXPECT_NEAR(est.mean, expected, 3.0 * est.stderr_of_mean);
  EXPECT_NEAR(est.stderr_of_mean, 0.4 / std::sqrt(20'000.0), 2e-4);
}

TEST(Summary, MergeMatchesSequential) {
  PayoffSummary all;
  PayoffSummary left;
  PayoffSummary right;
  for (int i = 0; i < 100; ++i) {
    const double x = std::sin(i) * 3.0 + i * 0.01;
    all.add(x);
    (i < 37 ? left : right).add(x);
  }
  left.merge(right);
  EXPECT_EQ(left.count, all.count);
  EXPECT_NEAR(left.mean, all.mean, 1e-12);
  EXPECT_NEAR(left.m2, all.m2, 1e-9);
}

TEST(Config, Validation) {
  CycleConfig cfg;
  cfg.cycles = 0;
  EXPECT_THROW(cfg.validate(), analytic::ValidationError);
  cfg = {};
  cfg.collapse_rule.theta = 1.5;
  EXPECT_THROW(cfg.validate(), analytic::ValidationError);
  cfg = {};
  cfg.mode = Mode::MoneySemianon31;
  cfg.money_supply = 10;
  EXPECT_THROW(cfg.validate(), analytic::ValidationError);
  cfg = {};
  cfg.balances = {1, 2};
  EXPECT_THROW(cfg.validate(), analytic::ValidationError);
}

}  // namespace
}  // namespace tokenlab::engine

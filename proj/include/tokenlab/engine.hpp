// Discrete-cycle agent-based simulator.
//
// Each cycle: agents opt in to trade, participants are paired at random with
// a coin-flip consumer/supplier role, consumers pick money or credit,
// suppliers supply or defect, then one participant acts as the cycle's
// robber. In the ledger mode balances live on a LedgerState, thefts go
// through it, and a successful theft may be rewritten (important victim) or
// collapse the ledger (stolen share reaches the threshold).
//
// Agent policies are one-shot and read straight off the closed forms in
// analytic.hpp, so trajectories can be checked against them.

#ifndef TOKENLAB_ENGINE_HPP
#define TOKENLAB_ENGINE_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string_view>
#include <vector>

#include "tokenlab/analytic.hpp"
#include "tokenlab/ledger.hpp"
#include "tokenlab/rng.hpp"

namespace tokenlab::engine {

enum class Mode {
  Bilateral22,         // supplier learns the consumer's identity only
  FullInfo23,          // every credit receipt is public; defection -> autarky
  MoneySemianon31,     // consumers stay anonymous, trade only with money
  MoneyOrBilateral32,  // money or bilateral credit
  MoneyOrFullInfo33,   // money or public credit; defectors are reduced to money
  CryptoLedger,        // account-based tokens, full balance visibility
};

std::string_view to_string(Mode m);
std::optional<Mode> parse_mode(std::string_view s);

bool money_allowed(Mode m);
bool credit_allowed(Mode m);
/// Robber sees who holds what (as opposed to picking a victim at random).
bool informed_robber(Mode m);

using AgentId = std::uint32_t;

struct CollapseRule {
  double theta = 1.0;  // standing stolen share of supply that collapses the ledger
  double p_r = 0.0;    // probability a theft from an important account is rewritten
};

struct CycleConfig {
  analytic::ModelParams params;
  analytic::ExogenousParams exo;
  Mode mode = Mode::FullInfo23;
  std::int64_t cycles = 100;
  std::int64_t trials = 1000;
  std::uint64_t seed = 0;
  CollapseRule collapse_rule;

  double participation = 0.5;
  std::optional<std::int64_t> money_supply;  // default N/2, money modes only
  std::uint64_t initial_balance = 10;
  std::vector<std::uint64_t> balances;       // per-agent override of initial_balance
  std::vector<AgentId> important;
  std::uint64_t theft_units = 1;
  unsigned threads = 0;  // 0 = hardware concurrency

  /// Throws analytic::ValidationError naming the offending key.
  void validate() const;
  std::int64_t resolved_money_supply() const;
};

struct AgentState {
  AgentId id = 0;
  bool has_good = false;
  int money = 0;  // 0 or 1
  bool revealed = false;  // identity disclosed this cycle; always true on the ledger
  bool autarkic = false;
  std::set<AgentId> revoked_partners;  // bilateral credit withdrawn
  bool reduced_to_money_only = false;
};

enum class Payment { UseMoney, UseCredit, Abstain };
enum class SupplyDecision { Supply, Defect };

struct SimState {
  std::vector<AgentState> agents;
  std::optional<ledger::LedgerState> ledger;
  std::int64_t cycle = 0;
  ledger::Tokens stolen_standing = 0;
  std::optional<std::int64_t> collapse_cycle;

  bool terminated() const { return ledger && ledger->collapsed(); }
  std::int64_t money_total() const;
};

struct TradeRecord {
  AgentId consumer = 0;
  AgentId supplier = 0;
  Payment payment = Payment::Abstain;
  bool completed = false;
};

struct CycleRecord {
  std::int64_t cycle = 0;
  std::int64_t participants = 0;
  std::int64_t trades = 0;
  std::int64_t money_trades = 0;
  std::int64_t credit_trades = 0;
  std::int64_t defections = 0;
  std::int64_t theft_attempts = 0;
  std::int64_t theft_successes = 0;
  std::optional<AgentId> robber;
  std::optional<AgentId> target;
  std::optional<double> robber_payoff;
  bool rewritten = false;
  bool collapsed = false;
  std::vector<TradeRecord> trade_log;
  std::vector<AgentId> defectors;
};

/// Builds the initial state of one trial (money assignment consumes rng).
SimState initial_state(const CycleConfig& config, Rng& rng);

/// Expected per-unit take the robber anticipates from `target` given the
/// collapse rule: u * P[neither rewritten nor collapsed].
double expected_upsilon(const SimState& state, const CycleConfig& config, AgentId target);

/// Upsilon used by suppliers weighing continuation against defection.
double supplier_upsilon(const SimState& state, const CycleConfig& config);

/// Expected benefit the robber assigns to attacking `target`.
double robber_benefit(const SimState& state, const CycleConfig& config, AgentId target);

/// Chooses a victim, or none when the attack does not pay (ties included).
std::optional<AgentId> robber_policy(const SimState& state, AgentId robber,
                                     const CycleConfig& config, Rng& rng);

/// One-shot comparison of money (u - s) against credit (u - s - alpha*f).
/// Ties go to money; nothing positive means Abstain.
Payment consumer_policy(Mode mode, const AgentState& agent, const analytic::ModelParams& params);

/// Supplies when defection gains nothing (s = 0) or the continuation value
/// of staying in good standing covers the one-shot gain from defecting.
SupplyDecision supplier_policy(Mode mode, const AgentState& agent,
                               const analytic::ModelParams& params, double upsilon);

/// Advances one cycle. Ledger errors propagate.
CycleRecord run_cycle(SimState& state, const CycleConfig& config, Rng& rng);

struct PayoffSummary {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;  // sum of squared deviations

  void add(double x);
  void merge(const PayoffSummary& other);
  double stderr_of_mean() const;
};

struct TrialResult {
  std::int64_t trades = 0;
  std::int64_t money_trades = 0;
  std::int64_t theft_attempts = 0;
  std::int64_t theft_successes = 0;
  std::int64_t defections = 0;
  std::optional<std::int64_t> collapse_cycle;
  PayoffSummary payoff;
};

using CycleObserver = std::function<void(const SimState&, const CycleRecord&)>;

/// Runs trial `index` on its own substream of the config seed.
TrialResult run_trial(const CycleConfig& config, std::uint64_t index,
                      const CycleObserver& observer = {});

struct SimStats {
  std::int64_t trades = 0;
  std::int64_t theft_attempts = 0;
  std::int64_t theft_successes = 0;
  std::int64_t defections = 0;
  std::optional<std::int64_t> collapse_cycle;  // earliest across trials
  std::int64_t collapsed_trials = 0;
  double mean_robber_payoff = 0.0;
  double stderr_robber_payoff = 0.0;
  std::int64_t money_trades = 0;
  double money_share = 0.0;
};

/// K independent trials, possibly in parallel; reduced in trial order so the
/// result does not depend on the thread count.
SimStats run_simulation(const CycleConfig& config);

struct TheftEstimate {
  double mean = 0.0;
  double stderr_of_mean = 0.0;
  std::int64_t attempts = 0;
};

/// Empirical mean and standard error of the realized robber payoff per attempt.
TheftEstimate estimate_theft_benefit(const CycleConfig& config);

}  // namespace tokenlab::engine

#endif  // TOKENLAB_ENGINE_HPP

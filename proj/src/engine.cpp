#include "tokenlab/engine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <thread>
#include <utility>

namespace tokenlab::engine {

using analytic::ValidationError;

namespace {

constexpr std::array<std::pair<Mode, std::string_view>, 6> kModeNames{{
    {Mode::Bilateral22, "Bilateral22"},
    {Mode::FullInfo23, "FullInfo23"},
    {Mode::MoneySemianon31, "MoneySemianon31"},
    {Mode::MoneyOrBilateral32, "MoneyOrBilateral32"},
    {Mode::MoneyOrFullInfo33, "MoneyOrFullInfo33"},
    {Mode::CryptoLedger, "CryptoLedger"},
}};

ledger::AccountId account(AgentId id) { return ledger::AccountId{id}; }

void shuffle(std::vector<AgentId>& v, Rng& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_index(rng, i));
    std::swap(v[i - 1], v[j]);
  }
}

bool credit_blocked(Mode mode, const AgentState& consumer, const AgentState& supplier) {
  if (consumer.autarkic || supplier.autarkic) return true;
  if (mode == Mode::MoneyOrFullInfo33 && supplier.reduced_to_money_only) return true;
  return consumer.revoked_partners.contains(supplier.id) ||
         supplier.revoked_partners.contains(consumer.id);
}

void sanction_defector(Mode mode, AgentState& supplier, AgentState& consumer) {
  switch (mode) {
    case Mode::FullInfo23:
    case Mode::CryptoLedger:
      supplier.autarkic = true;
      break;
    case Mode::MoneyOrFullInfo33:
      supplier.reduced_to_money_only = true;
      break;
    case Mode::Bilateral22:
    case Mode::MoneyOrBilateral32:
      consumer.revoked_partners.insert(supplier.id);
      supplier.revoked_partners.insert(consumer.id);
      break;
    case Mode::MoneySemianon31:
      break;
  }
}

}  // namespace

std::string_view to_string(Mode m) {
  for (const auto& [mode, name] : kModeNames)
    if (mode == m) return name;
  return "?";
}

std::optional<Mode> parse_mode(std::string_view s) {
  for (const auto& [mode, name] : kModeNames)
    if (name == s) return mode;
  return std::nullopt;
}

bool money_allowed(Mode m) {
  return m == Mode::MoneySemianon31 || m == Mode::MoneyOrBilateral32 ||
         m == Mode::MoneyOrFullInfo33;
}

bool credit_allowed(Mode m) { return m != Mode::MoneySemianon31; }

bool informed_robber(Mode m) {
  return m == Mode::FullInfo23 || m == Mode::MoneyOrFullInfo33 || m == Mode::CryptoLedger;
}

void CycleConfig::validate() const {
  params.validate();
  exo.validate();
  if (cycles < 1) throw ValidationError("cycles", "T >= 1");
  if (trials < 1) throw ValidationError("trials", "K >= 1");
  if (!(collapse_rule.theta >= 0.0 && collapse_rule.theta <= 1.0))
    throw ValidationError("theta", "0 <= theta <= 1");
  if (!(collapse_rule.p_r >= 0.0 && collapse_rule.p_r <= 1.0))
    throw ValidationError("p_r", "0 <= p_r <= 1");
  if (!(participation >= 0.0 && participation <= 1.0))
    throw ValidationError("participation", "0 <= participation <= 1");
  if (params.n > 1'000'000) throw ValidationError("n", "N <= 1000000");
  if (money_supply && (*money_supply < 0 || *money_supply >= params.n))
    throw ValidationError("money_supply", "0 <= M < N");
  if (!balances.empty() && static_cast<std::int64_t>(balances.size()) != params.n)
    throw ValidationError("balances", "one balance per agent");
  for (AgentId id : important)
    if (static_cast<std::int64_t>(id) >= params.n)
      throw ValidationError("important", "agent ids < N");
  if (theft_units < 1) throw ValidationError("theft_units", "t >= 1");
}

std::int64_t CycleConfig::resolved_money_supply() const {
  if (!money_allowed(mode)) return 0;
  return money_supply.value_or(params.n / 2);
}

std::int64_t SimState::money_total() const {
  std::int64_t total = 0;
  for (const auto& a : agents) total += a.money;
  return total;
}

SimState initial_state(const CycleConfig& config, Rng& rng) {
  SimState state;
  const auto n = static_cast<AgentId>(config.params.n);
  state.agents.resize(n);
  for (AgentId i = 0; i < n; ++i) state.agents[i].id = i;

  if (const auto m = config.resolved_money_supply(); m > 0) {
    std::vector<AgentId> order(n);
    for (AgentId i = 0; i < n; ++i) order[i] = i;
    shuffle(order, rng);
    for (std::int64_t k = 0; k < m; ++k) state.agents[order[k]].money = 1;
  }

  if (config.mode == Mode::CryptoLedger) {
    auto& book = state.ledger.emplace();
    for (AgentId i = 0; i < n; ++i) {
      const auto bal = config.balances.empty() ? config.initial_balance : config.balances[i];
      const bool imp = std::find(config.important.begin(), config.important.end(), i) !=
                       config.important.end();
      book.open_account(account(i), bal, imp);
      state.agents[i].revealed = true;
    }
  }
  return state;
}

double expected_upsilon(const SimState& state, const CycleConfig& config, AgentId target) {
  const double u = config.params.u;
  if (!state.ledger) return u;
  const auto& book = *state.ledger;
  if (book.collapsed()) return 0.0;
  const auto supply = book.total_supply();
  if (supply == 0) return 0.0;
  const double share = static_cast<double>(state.stolen_standing + config.theft_units) /
                       static_cast<double>(supply);
  if (share >= config.collapse_rule.theta) return 0.0;
  const double survive = book.important(account(target)) ? 1.0 - config.collapse_rule.p_r : 1.0;
  return u * survive;
}

double supplier_upsilon(const SimState& state, const CycleConfig& config) {
  if (!state.ledger) return config.params.u;
  // A typical (non-important) holder's exposure.
  const auto& book = *state.ledger;
  if (book.collapsed() || book.total_supply() == 0) return 0.0;
  const double share = static_cast<double>(state.stolen_standing + config.theft_units) /
                       static_cast<double>(book.total_supply());
  return share >= config.collapse_rule.theta ? 0.0 : config.params.u;
}

double robber_benefit(const SimState& state, const CycleConfig& config, AgentId target) {
  const auto& p = config.params;
  switch (config.mode) {
    case Mode::Bilateral22:
    case Mode::MoneySemianon31:
    case Mode::MoneyOrBilateral32:
      return analytic::random_theft_benefit(p);
    case Mode::FullInfo23:
    case Mode::MoneyOrFullInfo33:
      return p.alpha * p.epsilon * p.f - p.c;
    case Mode::CryptoLedger: {
      const double gain =
          static_cast<double>(config.theft_units) * expected_upsilon(state, config, target);
      return analytic::exogenous_theft_benefit(p, config.exo, gain);
    }
  }
  return 0.0;
}

std::optional<AgentId> robber_policy(const SimState& state, AgentId robber,
                                     const CycleConfig& config, Rng& rng) {
  const auto n = static_cast<AgentId>(state.agents.size());
  if (n < 2 || state.terminated()) return std::nullopt;

  if (!informed_robber(config.mode)) {
    if (!(robber_benefit(state, config, robber) > 0.0)) return std::nullopt;
    auto pick = static_cast<AgentId>(uniform_index(rng, n - 1));
    if (pick >= robber) ++pick;
    return pick;
  }

  if (config.mode == Mode::CryptoLedger) {
    const auto balances = state.ledger->visible_balances(account(robber));
    std::optional<AgentId> best;
    double best_benefit = 0.0;
    ledger::Tokens best_balance = 0;
    for (const auto& [id, bal] : balances) {
      if (id.value == robber || bal < config.theft_units) continue;
      const double b = robber_benefit(state, config, id.value);
      if (!best || b > best_benefit || (b == best_benefit && bal > best_balance)) {
        best = id.value;
        best_benefit = b;
        best_balance = bal;
      }
    }
    if (best && best_benefit > 0.0) return best;
    return std::nullopt;
  }

  if (!(robber_benefit(state, config, robber) > 0.0)) return std::nullopt;
  std::vector<AgentId> holders;
  for (const auto& a : state.agents) {
    if (a.id == robber || !a.has_good) continue;
    if (config.mode == Mode::MoneyOrFullInfo33 && !a.revealed) continue;
    holders.push_back(a.id);
  }
  if (holders.empty()) return std::nullopt;
  return holders[uniform_index(rng, holders.size())];
}

Payment consumer_policy(Mode mode, const AgentState& agent, const analytic::ModelParams& params) {
  const double money_value = params.u - params.s;
  const double credit_value = params.u - params.s - params.alpha * params.f;
  const bool money_ok = money_allowed(mode) && agent.money == 1;
  const bool credit_ok = credit_allowed(mode) && !agent.autarkic;
  if (money_ok && money_value > 0.0 && (!credit_ok || money_value >= credit_value))
    return Payment::UseMoney;
  if (credit_ok && credit_value > 0.0) return Payment::UseCredit;
  return Payment::Abstain;
}

SupplyDecision supplier_policy(Mode /*mode*/, const AgentState& /*agent*/,
                               const analytic::ModelParams& params, double upsilon) {
  if (params.s <= 0.0) return SupplyDecision::Supply;
  return analytic::credit_equilibrium_sustainable(params, upsilon).cond_dynamic
             ? SupplyDecision::Supply
             : SupplyDecision::Defect;
}

CycleRecord run_cycle(SimState& state, const CycleConfig& config, Rng& rng) {
  const auto& p = config.params;
  CycleRecord rec;
  rec.cycle = ++state.cycle;
  if (state.ledger) state.ledger->set_cycle(rec.cycle);
  if (state.terminated()) return rec;

  for (auto& a : state.agents) {
    a.has_good = false;
    if (!state.ledger) a.revealed = false;
  }

  std::vector<AgentId> participants;
  for (const auto& a : state.agents)
    if (bernoulli(rng, config.participation)) participants.push_back(a.id);
  shuffle(participants, rng);
  rec.participants = static_cast<std::int64_t>(participants.size());

  const double ups = supplier_upsilon(state, config);
  for (std::size_t i = 0; i + 1 < participants.size(); i += 2) {
    const bool first_consumes = bernoulli(rng, 0.5);
    auto& consumer = state.agents[participants[first_consumes ? i : i + 1]];
    auto& supplier = state.agents[participants[first_consumes ? i + 1 : i]];

    TradeRecord trade{consumer.id, supplier.id, consumer_policy(config.mode, consumer, p), false};
    if (trade.payment == Payment::UseMoney) {
      if (supplier.money == 0) {
        consumer.money = 0;
        supplier.money = 1;
        consumer.has_good = true;
        trade.completed = true;
        ++rec.money_trades;
      }
    } else if (trade.payment == Payment::UseCredit && !credit_blocked(config.mode, consumer, supplier)) {
      consumer.revealed = true;
      if (supplier_policy(config.mode, supplier, p, ups) == SupplyDecision::Supply) {
        if (state.ledger && state.ledger->balance(account(consumer.id)) > 0)
          state.ledger->transfer(account(consumer.id), account(supplier.id), 1);
        consumer.has_good = true;
        trade.completed = true;
        ++rec.credit_trades;
      } else {
        sanction_defector(config.mode, supplier, consumer);
        ++rec.defections;
        rec.defectors.push_back(supplier.id);
      }
    }
    if (trade.completed) ++rec.trades;
    rec.trade_log.push_back(trade);
  }

  if (!participants.empty()) {
    const AgentId robber = participants[uniform_index(rng, participants.size())];
    rec.robber = robber;
    rec.target = robber_policy(state, robber, config, rng);
  }

  if (rec.target) {
    ++rec.theft_attempts;
    const AgentId victim = *rec.target;
    if (state.ledger) {
      const auto t = config.theft_units;
      const double cost = p.c + config.exo.c_e;
      auto seq = state.ledger->steal(account(*rec.robber), account(victim), t, p.alpha, rng);
      if (!seq) {
        rec.robber_payoff = -cost;
      } else {
        ++rec.theft_successes;
        state.stolen_standing += t;
        auto fate = analytic::LedgerFate::Survives;
        if (state.ledger->important(account(victim)) && bernoulli(rng, config.collapse_rule.p_r)) {
          state.ledger->governance_rewrite(*seq);
          state.stolen_standing -= t;
          rec.rewritten = true;
          fate = analytic::LedgerFate::Rewritten;
        } else if (static_cast<double>(state.stolen_standing) /
                       static_cast<double>(state.ledger->total_supply()) >=
                   config.collapse_rule.theta) {
          state.ledger->collapse();
          state.collapse_cycle = rec.cycle;
          rec.collapsed = true;
          fate = analytic::LedgerFate::Collapses;
        }
        rec.robber_payoff = analytic::resolve_mu(static_cast<std::int64_t>(t), p.u, fate) +
                            config.exo.u_e - cost;
      }
    } else {
      auto& target = state.agents[victim];
      const bool hit = bernoulli(rng, p.alpha);
      if (hit && target.has_good) {
        target.has_good = false;
        ++rec.theft_successes;
        rec.robber_payoff = p.epsilon * p.f - p.c;
      } else {
        rec.robber_payoff = -p.c;
      }
    }
  }
  return rec;
}

void PayoffSummary::add(double x) {
  ++count;
  const double d = x - mean;
  mean += d / static_cast<double>(count);
  m2 += d * (x - mean);
}

void PayoffSummary::merge(const PayoffSummary& other) {
  if (other.count == 0) return;
  if (count == 0) {
    *this = other;
    return;
  }
  const double n1 = static_cast<double>(count);
  const double n2 = static_cast<double>(other.count);
  const double d = other.mean - mean;
  const double total = n1 + n2;
  mean += d * n2 / total;
  m2 += other.m2 + d * d * n1 * n2 / total;
  count += other.count;
}

double PayoffSummary::stderr_of_mean() const {
  if (count < 2) return 0.0;
  const double n = static_cast<double>(count);
  return std::sqrt(m2 / (n - 1.0) / n);
}

TrialResult run_trial(const CycleConfig& config, std::uint64_t index,
                      const CycleObserver& observer) {
  Rng rng = substream(config.seed, index);
  SimState state = initial_state(config, rng);
  TrialResult out;
  for (std::int64_t t = 0; t < config.cycles && !state.terminated(); ++t) {
    const CycleRecord rec = run_cycle(state, config, rng);
    out.trades += rec.trades;
    out.money_trades += rec.money_trades;
    out.theft_attempts += rec.theft_attempts;
    out.theft_successes += rec.theft_successes;
    out.defections += rec.defections;
    if (rec.robber_payoff) out.payoff.add(*rec.robber_payoff);
    if (observer) observer(state, rec);
  }
  out.collapse_cycle = state.collapse_cycle;
  return out;
}

SimStats run_simulation(const CycleConfig& config) {
  config.validate();
  const auto k = static_cast<std::size_t>(config.trials);
  std::vector<TrialResult> results(k);

  unsigned workers = config.threads ? config.threads : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(k)));
  if (workers == 1) {
    for (std::size_t i = 0; i < k; ++i) results[i] = run_trial(config, i);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < k; i += workers) results[i] = run_trial(config, i);
      });
  }

  SimStats stats;
  PayoffSummary payoff;
  for (const auto& r : results) {
    stats.trades += r.trades;
    stats.money_trades += r.money_trades;
    stats.theft_attempts += r.theft_attempts;
    stats.theft_successes += r.theft_successes;
    stats.defections += r.defections;
    if (r.collapse_cycle) {
      ++stats.collapsed_trials;
      if (!stats.collapse_cycle || *r.collapse_cycle < *stats.collapse_cycle)
        stats.collapse_cycle = r.collapse_cycle;
    }
    payoff.merge(r.payoff);
  }
  stats.mean_robber_payoff = payoff.mean;
  stats.stderr_robber_payoff = payoff.stderr_of_mean();
  stats.money_share =
      stats.trades > 0 ? static_cast<double>(stats.money_trades) / static_cast<double>(stats.trades)
                       : 0.0;
  return stats;
}

TheftEstimate estimate_theft_benefit(const CycleConfig& config) {
  const SimStats s = run_simulation(config);
  return {s.mean_robber_payoff, s.stderr_robber_payoff, s.theft_attempts};
}

}  // namespace tokenlab::engine

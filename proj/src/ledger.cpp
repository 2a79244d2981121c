#include "tokenlab/ledger.hpp"

#include <ostream>

#include <json.hpp>

namespace tokenlab::ledger {

std::string_view to_string(LedgerErrc code) {
  switch (code) {
    case LedgerErrc::InsufficientBalance: return "InsufficientBalance";
    case LedgerErrc::LedgerCollapsed: return "LedgerCollapsed";
    case LedgerErrc::UnknownAccount: return "UnknownAccount";
    case LedgerErrc::DuplicateAccount: return "DuplicateAccount";
    case LedgerErrc::EventNotFound: return "EventNotFound";
  }
  return "?";
}

std::string_view to_string(EventKind kind) {
  switch (kind) {
    case EventKind::Mint: return "mint";
    case EventKind::Transfer: return "transfer";
    case EventKind::Attempt: return "attempt";
    case EventKind::Theft: return "theft";
    case EventKind::Rewrite: return "rewrite";
    case EventKind::Collapse: return "collapse";
  }
  return "?";
}

void LedgerState::require_open() const {
  if (collapsed_) throw LedgerError(LedgerErrc::LedgerCollapsed, "ledger is frozen");
}

Account& LedgerState::require(AccountId id) {
  auto it = accounts_.find(id);
  if (it == accounts_.end())
    throw LedgerError(LedgerErrc::UnknownAccount, "account " + std::to_string(id.value));
  return it->second;
}

const Account& LedgerState::require(AccountId id) const {
  auto it = accounts_.find(id);
  if (it == accounts_.end())
    throw LedgerError(LedgerErrc::UnknownAccount, "account " + std::to_string(id.value));
  return it->second;
}

std::uint64_t LedgerState::append(EventKind kind, std::optional<AccountId> from,
                                  std::optional<AccountId> to, Tokens amount) {
  Event e;
  e.seq = history_.size();
  e.kind = kind;
  e.from = from;
  e.to = to;
  e.amount = amount;
  e.cycle = cycle_;
  history_.push_back(e);
  return e.seq;
}

void LedgerState::open_account(AccountId id, Tokens balance, bool important) {
  require_open();
  if (accounts_.contains(id))
    throw LedgerError(LedgerErrc::DuplicateAccount, "account " + std::to_string(id.value));
  accounts_.emplace(id, Account{id, balance, important});
  total_supply_ += balance;
  append(EventKind::Mint, std::nullopt, id, balance);
}

void LedgerState::transfer(AccountId from, AccountId to, Tokens amount) {
  require_open();
  Account& src = require(from);
  Account& dst = require(to);
  if (src.balance < amount)
    throw LedgerError(LedgerErrc::InsufficientBalance,
                      "account " + std::to_string(from.value) + " holds " +
                          std::to_string(src.balance) + " < " + std::to_string(amount));
  src.balance -= amount;
  dst.balance += amount;
  append(EventKind::Transfer, from, to, amount);
}

std::optional<std::uint64_t> LedgerState::steal(AccountId robber, AccountId victim, Tokens t,
                                                double alpha, Rng& rng) {
  require_open();
  Account& thief = require(robber);
  Account& target = require(victim);
  const bool hit = bernoulli(rng, alpha);
  if (!hit || target.balance < t || robber == victim) {
    append(EventKind::Attempt, victim, robber, t);
    return std::nullopt;
  }
  target.balance -= t;
  thief.balance += t;
  return append(EventKind::Theft, victim, robber, t);
}

void LedgerState::governance_rewrite(std::uint64_t theft_seq) {
  require_open();
  if (theft_seq >= history_.size() || history_[theft_seq].kind != EventKind::Theft ||
      history_[theft_seq].reverted_by)
    throw LedgerError(LedgerErrc::EventNotFound,
                      "no standing theft with seq " + std::to_string(theft_seq));
  const Event theft = history_[theft_seq];
  Account& victim = require(*theft.from);
  Account& robber = require(*theft.to);
  if (robber.balance < theft.amount)
    throw LedgerError(LedgerErrc::InsufficientBalance,
                      "robber no longer holds the stolen amount");
  robber.balance -= theft.amount;
  victim.balance += theft.amount;
  const auto seq = append(EventKind::Rewrite, theft.to, theft.from, theft.amount);
  history_[seq].reverts = theft_seq;
  history_[theft_seq].reverted_by = seq;
}

void LedgerState::collapse() {
  if (collapsed_) return;
  collapsed_ = true;
  append(EventKind::Collapse, std::nullopt, std::nullopt, 0);
}

std::map<AccountId, Tokens> LedgerState::visible_balances(AccountId /*observer*/) const {
  std::map<AccountId, Tokens> out;
  for (const auto& [id, acct] : accounts_) out.emplace(id, acct.balance);
  return out;
}

Tokens LedgerState::balance(AccountId id) const { return require(id).balance; }

bool LedgerState::important(AccountId id) const { return require(id).important; }

Tokens LedgerState::balance_sum() const {
  Tokens sum = 0;
  for (const auto& [id, acct] : accounts_) sum += acct.balance;
  return sum;
}

const Event* LedgerState::find_event(std::uint64_t seq) const {
  return seq < history_.size() ? &history_[seq] : nullptr;
}

void LedgerState::write_event_log(std::ostream& os) const {
  for (const auto& e : history_) {
    nlohmann::ordered_json j;
    j["seq"] = e.seq;
    j["kind"] = to_string(e.kind);
    j["from"] = e.from ? nlohmann::ordered_json(e.from->value) : nlohmann::ordered_json(nullptr);
    j["to"] = e.to ? nlohmann::ordered_json(e.to->value) : nlohmann::ordered_json(nullptr);
    j["amount"] = e.amount;
    j["cycle"] = e.cycle;
    os << j.dump() << '\n';
  }
}

}  // namespace tokenlab::ledger

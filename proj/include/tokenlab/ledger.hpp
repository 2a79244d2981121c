// Account-based ledger with full balance visibility.
//
// Balances are integer token counts. Mutations go through transfer, steal,
// governance_rewrite and collapse; each appends to an event log that is
// never erased (a rewrite is itself recorded). Once collapsed, the ledger
// rejects every mutation and its balances carry no utility.

#ifndef TOKENLAB_LEDGER_HPP
#define TOKENLAB_LEDGER_HPP

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tokenlab/rng.hpp"

namespace tokenlab::ledger {

struct AccountId {
  std::uint32_t value = 0;
  friend auto operator<=>(const AccountId&, const AccountId&) = default;
};

using Tokens = std::uint64_t;

struct Account {
  AccountId id;
  Tokens balance = 0;
  bool important = false;  // foundation / community-pool style holding
};

enum class LedgerErrc {
  InsufficientBalance,
  LedgerCollapsed,
  UnknownAccount,
  DuplicateAccount,
  EventNotFound,
};

std::string_view to_string(LedgerErrc code);

class LedgerError : public std::runtime_error {
 public:
  LedgerError(LedgerErrc code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}
  LedgerErrc code() const noexcept { return code_; }

 private:
  LedgerErrc code_;
};

enum class EventKind { Mint, Transfer, Attempt, Theft, Rewrite, Collapse };

std::string_view to_string(EventKind kind);

struct Event {
  std::uint64_t seq = 0;
  EventKind kind = EventKind::Transfer;
  std::optional<AccountId> from;
  std::optional<AccountId> to;
  Tokens amount = 0;
  std::int64_t cycle = 0;
  // Theft only: seq of the rewrite that reverted it.
  std::optional<std::uint64_t> reverted_by;
  // Rewrite only: seq of the theft it reverted.
  std::optional<std::uint64_t> reverts;
};

class LedgerState {
 public:
  LedgerState() = default;

  /// Creates an account with an initial balance; adds it to total supply.
  void open_account(AccountId id, Tokens balance, bool important = false);

  void transfer(AccountId from, AccountId to, Tokens amount);

  /// Attempts to move t tokens from victim to robber. One Bernoulli(alpha)
  /// draw is always consumed. Succeeds only if the draw hits and the victim
  /// holds at least t. Returns the seq of the Theft event on success.
  std::optional<std::uint64_t> steal(AccountId robber, AccountId victim, Tokens t, double alpha,
                                     Rng& rng);

  /// Reverses a standing theft. The robber must still hold the stolen
  /// amount; the log keeps both the theft and the rewrite.
  void governance_rewrite(std::uint64_t theft_seq);

  /// Idempotent. Freezes the ledger.
  void collapse();

  /// The full balance map; the same for every observer.
  std::map<AccountId, Tokens> visible_balances(AccountId observer) const;

  Tokens balance(AccountId id) const;
  bool important(AccountId id) const;
  bool has_account(AccountId id) const { return accounts_.contains(id); }
  bool collapsed() const noexcept { return collapsed_; }
  Tokens total_supply() const noexcept { return total_supply_; }
  /// Sum over accounts; equals total_supply() unless something is broken.
  Tokens balance_sum() const;
  const std::map<AccountId, Account>& accounts() const noexcept { return accounts_; }
  const std::vector<Event>& history() const noexcept { return history_; }
  const Event* find_event(std::uint64_t seq) const;

  /// Tag stamped on subsequent events.
  void set_cycle(std::int64_t cycle) noexcept { cycle_ = cycle; }

  /// One JSON object per line: {seq, kind, from, to, amount, cycle}.
  void write_event_log(std::ostream& os) const;

 private:
  std::uint64_t append(EventKind kind, std::optional<AccountId> from, std::optional<AccountId> to,
                       Tokens amount);
  Account& require(AccountId id);
  const Account& require(AccountId id) const;
  void require_open() const;

  std::map<AccountId, Account> accounts_;
  Tokens total_supply_ = 0;
  bool collapsed_ = false;
  std::vector<Event> history_;
  std::int64_t cycle_ = 0;
};

}  // namespace tokenlab::ledger

#endif  // TOKENLAB_LEDGER_HPP

// Constant-product pool and the front-run / victim / back-run sandwich.
//
// Pool amounts are doubles; this part serves the profitability calculus,
// not token accounting. No swap fee is charged.

#ifndef TOKENLAB_POOL_HPP
#define TOKENLAB_POOL_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace tokenlab::pool {

class EmptyPool : public std::runtime_error {
 public:
  explicit EmptyPool(const std::string& what) : std::runtime_error("EmptyPool: " + what) {}
};

enum class Side { XtoY, YtoX };

struct PoolState {
  double reserve_x = 0.0;
  double reserve_y = 0.0;

  double k() const noexcept { return reserve_x * reserve_y; }
  /// Output of an order of `amount_in` without executing it.
  double quote(Side side, double amount_in) const;
};

struct SwapOrder {
  double amount_in = 0.0;
  double min_out = 0.0;  // slippage bound; 0 disables it
  Side side = Side::XtoY;
};

struct SwapResult {
  double out = 0.0;
  bool executed = false;  // false when out < min_out
};

/// Executes the order if its output meets min_out; the pool is left
/// untouched otherwise.
SwapResult swap(PoolState& pool, const SwapOrder& order);

enum class AttackStatus { Executed, VictimCancelled };

std::string_view to_string(AttackStatus s);

struct AttackResult {
  AttackStatus status = AttackStatus::Executed;
  double attacker_profit = 0.0;  // in the victim's input asset, net of gas and bid
  double victim_received = 0.0;
  double frontrun_out = 0.0;
  double backrun_out = 0.0;
  double unattacked_out = 0.0;  // what the victim would have received alone
  PoolState final_pool;
};

/// Front-runs `victim` on the same side with `frontrun_amount`, lets the
/// victim trade, then sells the front-run proceeds back. If the victim's
/// slippage bound cancels its order, the attacker unwinds and is left with
/// at most -(gas + bid).
AttackResult sandwich_attack(PoolState pool, const SwapOrder& victim, double frontrun_amount,
                             double gas, double bid);

/// Front-run size that leaves the victim (min_out ignored) with exactly
/// `target_out`. Bisection over the executed swap path.
double solve_frontrun_for_fill(const PoolState& pool, const SwapOrder& victim, double target_out);

}  // namespace tokenlab::pool

#endif  // TOKENLAB_POOL_HPP

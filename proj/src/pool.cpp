#include "tokenlab/pool.hpp"

#include <algorithm>
#include <cmath>

namespace tokenlab::pool {

namespace {

void check(const PoolState& pool) {
  if (!(pool.reserve_x > 0.0) || !(pool.reserve_y > 0.0))
    throw EmptyPool("reserves must be positive");
}

Side opposite(Side s) { return s == Side::XtoY ? Side::YtoX : Side::XtoY; }

}  // namespace

double PoolState::quote(Side side, double amount_in) const {
  check(*this);
  if (side == Side::XtoY) return reserve_y - k() / (reserve_x + amount_in);
  return reserve_x - k() / (reserve_y + amount_in);
}

SwapResult swap(PoolState& pool, const SwapOrder& order) {
  if (!(order.amount_in >= 0.0)) throw std::invalid_argument("swap amount must be nonnegative");
  const double out = pool.quote(order.side, order.amount_in);
  if (out < order.min_out) return {out, false};
  if (order.side == Side::XtoY) {
    pool.reserve_x += order.amount_in;
    pool.reserve_y -= out;
  } else {
    pool.reserve_y += order.amount_in;
    pool.reserve_x -= out;
  }
  return {out, true};
}

std::string_view to_string(AttackStatus s) {
  return s == AttackStatus::Executed ? "Executed" : "VictimCancelled";
}

AttackResult sandwich_attack(PoolState pool, const SwapOrder& victim, double frontrun_amount,
                             double gas, double bid) {
  check(pool);
  if (!(frontrun_amount >= 0.0)) throw std::invalid_argument("front-run must be nonnegative");
  AttackResult r;
  r.unattacked_out = pool.quote(victim.side, victim.amount_in);
  const double costs = gas + bid;

  const auto front = swap(pool, {frontrun_amount, 0.0, victim.side});
  r.frontrun_out = front.out;

  const auto hit = swap(pool, victim);
  if (!hit.executed) {
    const auto unwind = swap(pool, {r.frontrun_out, 0.0, opposite(victim.side)});
    r.status = AttackStatus::VictimCancelled;
    r.backrun_out = unwind.out;
    // A no-fee round trip returns the stake exactly; only rounding remains.
    r.attacker_profit = std::min(unwind.out - frontrun_amount, 0.0) - costs;
    r.final_pool = pool;
    return r;
  }
  r.victim_received = hit.out;
  const auto back = swap(pool, {r.frontrun_out, 0.0, opposite(victim.side)});
  r.backrun_out = back.out;
  r.attacker_profit = back.out - frontrun_amount - costs;
  r.final_pool = pool;
  return r;
}

double solve_frontrun_for_fill(const PoolState& pool, const SwapOrder& victim, double target_out) {
  check(pool);
  SwapOrder order = victim;
  order.min_out = 0.0;
  auto fill = [&](double frontrun) {
    PoolState p = pool;
    swap(p, {frontrun, 0.0, victim.side});
    return swap(p, order).out;
  };
  if (!(target_out > 0.0) || target_out > fill(0.0))
    throw std::invalid_argument("target fill must lie in (0, unattacked output]");
  double lo = 0.0;
  double hi = victim.side == Side::XtoY ? pool.reserve_x : pool.reserve_y;
  while (fill(hi) > target_out) hi *= 2.0;
  for (int i = 0; i < 200 && hi - lo > 1e-9 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (fill(mid) > target_out ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace tokenlab::pool

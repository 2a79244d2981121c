#include "tokenlab/analytic.hpp"

#include <cmath>

namespace tokenlab::analytic {

void ModelParams::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw ValidationError("alpha", "0 <= alpha <= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ValidationError("epsilon", "0 < epsilon < 1");
  if (!(f >= 0.0)) throw ValidationError("f", "f >= 0");
  if (!(u >= 0.0)) throw ValidationError("u", "u >= 0");
  if (!std::isfinite(c)) throw ValidationError("c", "c finite");
  if (!(s >= 0.0)) throw ValidationError("s", "s >= 0");
  if (!(delta > 0.0 && delta <= 1.0)) throw ValidationError("delta", "0 < delta <= 1");
  if (n < 2) throw ValidationError("n", "N >= 2");
  if (!std::isfinite(f) || !std::isfinite(u) || !std::isfinite(s))
    throw ValidationError("params", "finite values");
}

void ExogenousParams::validate() const {
  if (!(u_e >= 0.0) || !std::isfinite(u_e)) throw ValidationError("u_e", "u_e >= 0");
  if (!(c_e >= 0.0) || !std::isfinite(c_e)) throw ValidationError("c_e", "c_e >= 0");
}

std::string_view to_string(LedgerFate fate) {
  switch (fate) {
    case LedgerFate::Survives: return "survives";
    case LedgerFate::Collapses: return "collapses";
    case LedgerFate::Rewritten: return "rewritten";
  }
  return "?";
}

std::optional<LedgerFate> parse_fate(std::string_view s) {
  if (s == "survives") return LedgerFate::Survives;
  if (s == "collapses") return LedgerFate::Collapses;
  if (s == "rewritten") return LedgerFate::Rewritten;
  return std::nullopt;
}

TheftEvaluation make_evaluation(double benefit, std::vector<std::string> refs) {
  return {benefit, benefit > 0.0, std::move(refs)};
}

double random_theft_benefit(const ModelParams& p) {
  return p.alpha * p.epsilon * p.f / static_cast<double>(p.n - 1) - p.c;
}

bool random_theft_deterred(const ModelParams& p) {
  return p.alpha * p.epsilon * p.f / static_cast<double>(p.n - 1) < p.c;
}

double resolve_upsilon(double u, LedgerFate fate) {
  return fate == LedgerFate::Survives ? u : 0.0;
}

double resolve_mu(std::int64_t t, double u, LedgerFate fate) {
  return fate == LedgerFate::Survives ? static_cast<double>(t) * u : 0.0;
}

bool crypto_theft_condition(const ModelParams& p, double upsilon) {
  return p.alpha * upsilon / static_cast<double>(p.n - 1) > p.c;
}

double crypto_theft_benefit(const ModelParams& p, double upsilon) {
  return p.alpha * upsilon - p.c;
}

bool full_info_sustainable_goods(const ModelParams& p) {
  return p.alpha * p.epsilon * p.f - p.c <= 0.0;
}

bool full_info_sustainable_crypto(const ModelParams& p) { return p.alpha * p.u - p.c <= 0.0; }

CreditEquilibrium credit_equilibrium_sustainable(const ModelParams& p, double upsilon) {
  CreditEquilibrium r;
  const double n = static_cast<double>(p.n);
  r.theft_gain = p.alpha * upsilon - p.c;
  r.surplus = p.u - p.alpha * p.f - p.s + p.alpha * upsilon - p.c;
  r.continuation = r.surplus / (p.delta * n);
  r.defection_gain = p.s - p.alpha * upsilon / (n - 1.0);
  r.cond_theft_tempting = r.theft_gain >= 0.0;
  r.cond_surplus = r.surplus >= 0.0;
  r.cond_dynamic = r.continuation >= r.defection_gain;
  r.all = r.cond_theft_tempting && r.cond_surplus && r.cond_dynamic;
  return r;
}

double expected_value_of_exchange(const ModelParams& p, double upsilon) {
  return (p.u - p.s - p.alpha * upsilon - p.c) / (p.delta * static_cast<double>(p.n));
}

double money_theft_benefit(const ModelParams& p) { return p.alpha * p.u - p.c; }

double exogenous_theft_benefit(const ModelParams& p, const ExogenousParams& exo,
                               double endogenous_gain) {
  return p.alpha * (endogenous_gain + exo.u_e) - (p.c + exo.c_e);
}

bool exogenous_sustainable(const ModelParams& p, const ExogenousParams& exo, double upsilon) {
  return exogenous_theft_benefit(p, exo, upsilon) <= 0.0;
}

ScenarioOutcome scenario_outcome(LedgerFate fate, std::int64_t t, double u,
                                 const ExogenousParams& exo, const ModelParams& p) {
  ScenarioOutcome r;
  r.mu = resolve_mu(t, u, fate);
  r.net = (r.mu + exo.u_e) - (p.c + exo.c_e);
  switch (fate) {
    case LedgerFate::Rewritten: r.scenario_id = 1; break;
    case LedgerFate::Collapses: r.scenario_id = 2; break;
    case LedgerFate::Survives: r.scenario_id = 3; break;
  }
  return r;
}

bool mev_profitable(double expected_extraction, double gas, double bid) {
  return 1.0 * expected_extraction - (gas + bid) > 0.0;
}

}  // namespace tokenlab::analytic

// Closed-form theft, sustainability and extraction conditions.
//
// Every function here is a pure evaluator of one inequality or benefit
// expression. Comparisons are exact (no epsilon): strict where deterrence
// or profitability is asked, inclusive where sustainability is asked.
// The simulator is validated against these.

#ifndef TOKENLAB_ANALYTIC_HPP
#define TOKENLAB_ANALYTIC_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tokenlab::analytic {

/// Thrown when a parameter vector violates its domain. `key` names the
/// offending field, `constraint` the violated relation.
class ValidationError : public std::invalid_argument {
 public:
  ValidationError(std::string key, std::string constraint)
      : std::invalid_argument(key + ": " + constraint),
        key_(std::move(key)),
        constraint_(std::move(constraint)) {}

  const std::string& key() const noexcept { return key_; }
  const std::string& constraint() const noexcept { return constraint_; }

 private:
  std::string key_;
  std::string constraint_;
};

struct ModelParams {
  double alpha = 0.5;    // probability an attempt succeeds
  double epsilon = 0.5;  // fraction of f the robber captures, 0 < epsilon < 1
  double f = 1.0;        // cost of a theft to the victim
  double u = 1.0;        // utility of the good / one token
  double c = 0.1;        // robber's cost per attempt (may be negative)
  double s = 0.05;       // cost of supply (transaction fees)
  double delta = 0.9;    // common discount factor, 0 < delta <= 1
  std::int64_t n = 10;   // agent count

  void validate() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Gains and costs arising outside the attacked ledger.
struct ExogenousParams {
  double u_e = 0.0;
  double c_e = 0.0;

  void validate() const;

  friend bool operator==(const ExogenousParams&, const ExogenousParams&) = default;
};

enum class LedgerFate { Survives, Collapses, Rewritten };

std::string_view to_string(LedgerFate fate);
std::optional<LedgerFate> parse_fate(std::string_view s);

struct TheftEvaluation {
  double benefit = 0.0;
  bool attractive = false;  // benefit > 0
  std::vector<std::string> condition_refs;
};

TheftEvaluation make_evaluation(double benefit, std::vector<std::string> refs);

// Random-target goods theft is deterred: alpha*epsilon*f/(N-1) < c.
bool random_theft_deterred(const ModelParams& p);
double random_theft_benefit(const ModelParams& p);

/// The robber's take from one stolen unit: u if the ledger survives, 0 if it
/// collapses or the theft is rewritten.
double resolve_upsilon(double u, LedgerFate fate);

/// Take from t stolen units: t*u or 0, never partial.
double resolve_mu(std::int64_t t, double u, LedgerFate fate);

// alpha*upsilon/(N-1) > c
bool crypto_theft_condition(const ModelParams& p, double upsilon);

/// alpha*upsilon - c. Balances are visible, so no 1/(N-1) search factor.
double crypto_theft_benefit(const ModelParams& p, double upsilon);

// alpha*epsilon*f - c <= 0
bool full_info_sustainable_goods(const ModelParams& p);

// alpha*u - c <= 0
bool full_info_sustainable_crypto(const ModelParams& p);

struct CreditEquilibrium {
  double theft_gain = 0.0;       // alpha*upsilon - c
  double surplus = 0.0;          // u - alpha*f - s + alpha*upsilon - c
  double continuation = 0.0;     // surplus / (delta*N)
  double defection_gain = 0.0;   // s - alpha*upsilon/(N-1)
  bool cond_theft_tempting = false;
  bool cond_surplus = false;
  bool cond_dynamic = false;
  bool all = false;
};

/// The three conditions for a pure credit equilibrium with theft in which
/// every agent transacts in tokens.
CreditEquilibrium credit_equilibrium_sustainable(const ModelParams& p, double upsilon);

/// (u - s - alpha*upsilon - c)/(delta*N). Note the sign of alpha*upsilon is
/// opposite to the one in the equilibrium surplus; both are kept as stated.
double expected_value_of_exchange(const ModelParams& p, double upsilon);

/// alpha*u - c. Stolen money stays fungible, so the robber keeps full u.
double money_theft_benefit(const ModelParams& p);

/// alpha*(gain + u_e) - (c + c_e), gain being a resolved upsilon or mu.
double exogenous_theft_benefit(const ModelParams& p, const ExogenousParams& exo,
                               double endogenous_gain);

// alpha*(upsilon + u_e) - (c + c_e) <= 0
bool exogenous_sustainable(const ModelParams& p, const ExogenousParams& exo, double upsilon);

struct ScenarioOutcome {
  double mu = 0.0;
  double net = 0.0;
  int scenario_id = 3;  // 1 rewritten, 2 collapsed, 3 survived
};

/// Outcome of a theft that has already happened (success is realized, so
/// alpha does not enter): net = (mu + u_e) - (c + c_e).
ScenarioOutcome scenario_outcome(LedgerFate fate, std::int64_t t, double u,
                                 const ExogenousParams& exo, const ModelParams& p);

/// 1*extraction - (gas + bid) > 0. A winning bid for block space makes
/// success certain and the extraction is known from the public mempool.
bool mev_profitable(double expected_extraction, double gas, double bid);

}  // namespace tokenlab::analytic

#endif  // TOKENLAB_ANALYTIC_HPP

// Scenario files: one JSON document configuring every subcommand.
//
// Sections (all optional except where a command needs them):
//   params         ModelParams fields; defaults alpha=0.5 epsilon=0.5 f=1 u=1
//                  c=0.1 s=0.05 delta=0.9 n=10
//   exo            {u_e, c_e} or {units, price, c_e} with u_e = units*price;
//                  default 0, 0
//   mode           engine mode name; default "FullInfo23"
//   collapse_rule  {theta, p_r}; default 1.0, 0.0
//   cycles         default 100
//   trials         default 1000
//   seed           default $TOKENLAB_SEED, else 0
//   engine         {participation=0.5, money_supply=N/2, initial_balance=10,
//                   balances, important, theft_units=1, threads=0}
//   theft          {tokens=1, fate="survives"} for the closed-form report
//   pool           {reserve_x, reserve_y, victim_in, min_out=0, frontrun,
//                   gas=0, bid=0, side="xy"}
//   token_profile  {security, trust, backing="object", host}
// Unknown keys are rejected at every level.

#ifndef TOKENLAB_SCENARIO_HPP
#define TOKENLAB_SCENARIO_HPP

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "tokenlab/analytic.hpp"
#include "tokenlab/engine.hpp"
#include "tokenlab/pool.hpp"
#include "tokenlab/taxonomy.hpp"

namespace tokenlab::scenario {

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error("ParseError: " + what) {}
};

using analytic::ValidationError;

struct TheftSpec {
  std::int64_t tokens = 1;
  analytic::LedgerFate fate = analytic::LedgerFate::Survives;
  friend bool operator==(const TheftSpec&, const TheftSpec&) = default;
};

struct PoolSpec {
  pool::PoolState reserves;
  pool::SwapOrder victim;
  double frontrun = 0.0;
  double gas = 0.0;
  double bid = 0.0;
};

bool operator==(const PoolSpec& a, const PoolSpec& b);

struct ScenarioFile {
  engine::CycleConfig config;
  TheftSpec theft;
  std::optional<PoolSpec> pool;
  std::optional<taxonomy::TokenProfile> token_profile;
};

bool operator==(const ScenarioFile& a, const ScenarioFile& b);

/// Environment variable holding the default seed.
inline constexpr const char* kSeedEnv = "TOKENLAB_SEED";

ScenarioFile parse_scenario(const std::filesystem::path& path);
ScenarioFile parse_scenario_text(std::string_view text);
ScenarioFile from_json(const nlohmann::json& doc);

/// Resolved configuration, every field explicit. Feeding it back through
/// from_json yields an equal ScenarioFile.
nlohmann::ordered_json to_json(const ScenarioFile& s);

/// Sets a numeric knob by name (alpha, c, theta, participation, ...).
/// Re-validates the configuration.
void apply_override(ScenarioFile& s, std::string_view key, double value);

/// Whether `key` names a ModelParams field, theta or p_r (the fixed CSV
/// columns).
bool is_standard_column(std::string_view key);

}  // namespace tokenlab::scenario

#endif  // TOKENLAB_SCENARIO_HPP

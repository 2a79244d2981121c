// Command dispatch: classify, eval, simulate, sweep, mev.
//
// Exit status: 0 success, 1 usage or validation error, 2 runtime fault.

#ifndef TOKENLAB_CLI_HPP
#define TOKENLAB_CLI_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "tokenlab/engine.hpp"
#include "tokenlab/scenario.hpp"

namespace tokenlab::cli {

inline constexpr std::string_view kVersion = "0.1.0";

/// Fixed CSV columns for simulate/sweep. Extra sweep dimensions are
/// appended after these.
const std::vector<std::string>& csv_columns();

/// `args` excludes the program name.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

nlohmann::ordered_json classify_report(const taxonomy::TokenProfile& profile,
                                       std::optional<taxonomy::LedgerKind> bridge_to);

/// One entry per closed-form evaluator.
nlohmann::ordered_json eval_entries(const scenario::ScenarioFile& s);

nlohmann::ordered_json stats_json(const engine::SimStats& stats);

nlohmann::ordered_json attack_json(const pool::AttackResult& r, double frontrun, double gas,
                                   double bid);

struct SweepAxis {
  std::string key;
  double lo = 0.0;
  double hi = 0.0;
  std::int64_t steps = 1;

  double value(std::int64_t i) const;
};

/// Parses "key=lo:hi:steps".
SweepAxis parse_axis(std::string_view spec);

/// Runs the grid (last axis varies fastest) and returns CSV text.
std::string sweep_csv(const scenario::ScenarioFile& base, const std::vector<SweepAxis>& axes);

/// Shortest decimal form that reads back to the same double.
std::string format_number(double v);

}  // namespace tokenlab::cli

#endif  // TOKENLAB_CLI_HPP

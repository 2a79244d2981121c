#include "tokenlab/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

namespace tokenlab::cli {

using nlohmann::ordered_json;
using scenario::ScenarioFile;
using scenario::ValidationError;

namespace {

std::pair<double, double> parse_pair(const std::string& key, const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ValidationError(key, "expected a,b");
  auto parse_one = [&](std::string_view part) {
    double v = 0.0;
    const auto* end = part.data() + part.size();
    auto [ptr, ec] = std::from_chars(part.data(), end, v);
    if (ec != std::errc() || ptr != end) throw ValidationError(key, "expected numbers a,b");
    return v;
  };
  return {parse_one(std::string_view(text).substr(0, comma)),
          parse_one(std::string_view(text).substr(comma + 1))};
}

void emit(const std::string& text, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + out_path);
  f << text;
}

// Arguments echoed into reports; the output path is left out so a rerun
// into another file reproduces the same bytes.
std::vector<std::string> echo_args(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--out" || args[i] == "--events") {
      ++i;
      continue;
    }
    if (args[i].starts_with("--out=") || args[i].starts_with("--events=")) continue;
    out.push_back(args[i]);
  }
  return out;
}

ordered_json provenance(std::uint64_t seed) {
  ordered_json p;
  p["seed"] = seed;
  p["version"] = kVersion;
  // Reports stay byte-reproducible unless a fixed build/run epoch is supplied.
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"); epoch && *epoch)
    p["timestamp"] = epoch;
  else
    p["timestamp"] = nullptr;
  return p;
}

ordered_json make_report(const std::vector<std::string>& args, const ScenarioFile& s,
                         ordered_json results) {
  ordered_json r;
  r["command"] = echo_args(args);
  r["config"] = scenario::to_json(s);
  r["results"] = std::move(results);
  r["provenance"] = provenance(s.config.seed);
  return r;
}

std::vector<std::string> csv_row(const ScenarioFile& s, const engine::SimStats& st) {
  const auto& c = s.config;
  const auto& p = c.params;
  return {std::string(engine::to_string(c.mode)),
          format_number(p.alpha),
          format_number(p.epsilon),
          format_number(p.f),
          format_number(p.u),
          format_number(p.c),
          format_number(p.s),
          format_number(p.delta),
          std::to_string(p.n),
          format_number(c.collapse_rule.theta),
          format_number(c.collapse_rule.p_r),
          std::to_string(st.trades),
          std::to_string(st.theft_attempts),
          std::to_string(st.theft_successes),
          std::to_string(st.defections),
          st.collapse_cycle ? std::to_string(*st.collapse_cycle) : std::string(),
          format_number(st.mean_robber_payoff),
          format_number(st.stderr_robber_payoff),
          format_number(st.money_share)};
}

std::string join(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  return line + '\n';
}

std::string override_value(const ScenarioFile& s, const std::string& key) {
  const auto& c = s.config;
  if (key == "u_e") return format_number(c.exo.u_e);
  if (key == "c_e") return format_number(c.exo.c_e);
  if (key == "participation") return format_number(c.participation);
  if (key == "cycles") return std::to_string(c.cycles);
  if (key == "trials") return std::to_string(c.trials);
  if (key == "money_supply") return std::to_string(c.resolved_money_supply());
  if (key == "initial_balance") return std::to_string(c.initial_balance);
  if (key == "theft_units") return std::to_string(c.theft_units);
  if (key == "tokens") return std::to_string(s.theft.tokens);
  return {};
}

ordered_json entry(std::string name, std::string anchor, ordered_json inputs, ordered_json value,
                   ordered_json condition) {
  ordered_json e;
  e["name"] = std::move(name);
  e["anchor"] = std::move(anchor);
  e["inputs"] = std::move(inputs);
  e["value"] = std::move(value);
  e["condition"] = std::move(condition);
  return e;
}

struct Options {
  // shared
  std::string config_path;
  std::string out_path;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> sets;
  // classify
  std::string security, trust, backing = "object", host, bridge_to;
  // eval
  std::string fate;
  std::string exo;
  // simulate
  std::string format = "csv";
  std::string mode;
  std::string events_path;
  std::optional<unsigned> threads;
  // sweep
  std::vector<std::string> vary;
  // mev
  std::string pool, victim, side = "xy";
  std::optional<double> frontrun, fill_target;
  double gas = 0.0, bid = 0.0;
};

ScenarioFile load_with_overrides(const Options& o) {
  ScenarioFile s = scenario::parse_scenario(o.config_path);
  if (o.seed) s.config.seed = *o.seed;
  if (!o.mode.empty()) {
    auto m = engine::parse_mode(o.mode);
    if (!m) throw ValidationError("mode", "unknown mode name");
    s.config.mode = *m;
  }
  if (o.threads) s.config.threads = *o.threads;
  for (const auto& kv : o.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ValidationError(kv, "expected key=value");
    double v = 0.0;
    const std::string_view num = std::string_view(kv).substr(eq + 1);
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), v);
    if (ec != std::errc() || ptr != num.data() + num.size())
      throw ValidationError(kv.substr(0, eq), "numeric value");
    scenario::apply_override(s, kv.substr(0, eq), v);
  }
  s.config.validate();
  return s;
}

int run_classify(const Options& o, std::ostream& out) {
  taxonomy::TokenProfile prof;
  auto sec = taxonomy::parse_locus(o.security);
  if (!sec) throw ValidationError("security", "one of endo|exo");
  prof.security_locus = *sec;
  std::optional<taxonomy::LedgerKind> host;
  if (!o.host.empty()) {
    host = taxonomy::parse_ledger_kind(o.host);
    if (!host) throw ValidationError("host", "one of public|private");
  }
  if (!o.trust.empty()) {
    auto tr = taxonomy::parse_locus(o.trust);
    if (!tr) throw ValidationError("trust", "one of endo|exo");
    prof.trust_locus = *tr;
    if (host && taxonomy::trust_locus_of(*host) != *tr)
      throw ValidationError("trust", "must match the host ledger's governance");
  } else if (host) {
    prof.trust_locus = taxonomy::trust_locus_of(*host);
  } else {
    throw ValidationError("trust", "give --trust or --host");
  }
  prof.host_ledger = host.value_or(prof.trust_locus == taxonomy::Locus::Endogenous
                                       ? taxonomy::LedgerKind::PublicPermissionless
                                       : taxonomy::LedgerKind::PrivateOrConsortium);
  auto backing = taxonomy::parse_backing(o.backing);
  if (!backing) throw ValidationError("backing", "one of object|claim");
  prof.value_backing = *backing;
  prof.value_timing = taxonomy::value_timing_heuristic(prof);

  std::optional<taxonomy::LedgerKind> dest;
  if (!o.bridge_to.empty()) {
    dest = taxonomy::parse_ledger_kind(o.bridge_to);
    if (!dest) throw ValidationError("bridge", "one of public|private");
  }
  emit(classify_report(prof, dest).dump(2) + "\n", o.out_path, out);
  return 0;
}

int run_eval(const std::vector<std::string>& args, const Options& o, std::ostream& out) {
  ScenarioFile s = load_with_overrides(o);
  if (!o.fate.empty()) {
    auto f = analytic::parse_fate(o.fate);
    if (!f) throw ValidationError("upsilon-fate", "one of survives|collapses|rewritten");
    s.theft.fate = *f;
  }
  if (!o.exo.empty()) {
    auto [ue, ce] = parse_pair("exo", o.exo);
    s.config.exo = {ue, ce};
    s.config.exo.validate();
  }
  ordered_json results;
  results["entries"] = eval_entries(s);
  emit(make_report(args, s, std::move(results)).dump(2) + "\n", o.out_path, out);
  return 0;
}

int run_simulate(const std::vector<std::string>& args, const Options& o, std::ostream& out) {
  ScenarioFile s = load_with_overrides(o);
  if (o.format != "csv" && o.format != "json") throw ValidationError("format", "one of csv|json");
  const engine::SimStats stats = engine::run_simulation(s.config);

  if (!o.events_path.empty()) {
    if (s.config.mode != engine::Mode::CryptoLedger)
      throw ValidationError("events", "event log requires mode CryptoLedger");
    std::optional<ledger::LedgerState> last;
    engine::run_trial(s.config, 0, [&](const engine::SimState& st, const engine::CycleRecord& rec) {
      if (rec.cycle == s.config.cycles || st.terminated()) last = st.ledger;
    });
    std::ostringstream log;
    if (last) last->write_event_log(log);
    emit(log.str(), o.events_path, out);
  }

  if (o.format == "csv") {
    emit(join(csv_columns()) + join(csv_row(s, stats)), o.out_path, out);
  } else {
    ordered_json results;
    results["stats"] = stats_json(stats);
    emit(make_report(args, s, std::move(results)).dump(2) + "\n", o.out_path, out);
  }
  return 0;
}

int run_sweep(const Options& o, std::ostream& out) {
  ScenarioFile s = load_with_overrides(o);
  std::vector<SweepAxis> axes;
  for (const auto& v : o.vary) axes.push_back(parse_axis(v));
  emit(sweep_csv(s, axes), o.out_path, out);
  return 0;
}

int run_mev(const Options& o, std::ostream& out) {
  auto [rx, ry] = parse_pair("pool", o.pool);
  auto [amount, min_out] = parse_pair("victim", o.victim);
  pool::PoolState reserves{rx, ry};
  if (!(rx > 0.0) || !(ry > 0.0)) throw pool::EmptyPool("reserves must be positive");
  if (!(amount > 0.0)) throw ValidationError("victim", "amount_in > 0");
  if (!(min_out >= 0.0)) throw ValidationError("victim", "min_out >= 0");
  if (o.gas < 0.0) throw ValidationError("gas", "gas >= 0");
  if (o.bid < 0.0) throw ValidationError("bid", "bid >= 0");
  pool::SwapOrder victim{amount, min_out, pool::Side::XtoY};
  if (o.side == "yx")
    victim.side = pool::Side::YtoX;
  else if (o.side != "xy")
    throw ValidationError("side", "one of xy|yx");

  double frontrun = 0.0;
  if (o.fill_target)
    frontrun = pool::solve_frontrun_for_fill(reserves, victim, *o.fill_target);
  else if (o.frontrun)
    frontrun = *o.frontrun;
  else
    throw ValidationError("frontrun", "give --frontrun or --fill-target");
  if (!(frontrun >= 0.0)) throw ValidationError("frontrun", "frontrun >= 0");

  const auto result = pool::sandwich_attack(reserves, victim, frontrun, o.gas, o.bid);
  emit(attack_json(result, frontrun, o.gas, o.bid).dump(2) + "\n", o.out_path, out);
  return 0;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{
      "mode",   "alpha",          "epsilon",         "f",          "u",
      "c",      "s",              "delta",           "n",          "theta",
      "p_r",    "trades",         "theft_attempts",  "theft_successes",
      "defections", "collapse_cycle", "mean_robber_payoff", "stderr", "money_share"};
  return cols;
}

ordered_json classify_report(const taxonomy::TokenProfile& profile,
                             std::optional<taxonomy::LedgerKind> bridge_to) {
  auto describe = [](const taxonomy::TokenProfile& p) {
    const auto q = taxonomy::classify(p.security_locus, p.trust_locus);
    ordered_json j;
    j["quadrant"] = q.position;
    j["exemplar"] = q.exemplar;
    j["attack_effect"] = q.attack_effect;
    j["security_locus"] = taxonomy::to_string(p.security_locus);
    j["trust_locus"] = taxonomy::to_string(p.trust_locus);
    j["backing"] = taxonomy::to_string(p.value_backing);
    j["host"] = taxonomy::to_string(p.host_ledger);
    j["value_timing"] = taxonomy::to_string(taxonomy::value_timing_heuristic(p));
    j["lacks_exemplar"] = taxonomy::lacks_exemplar(p);
    return j;
  };
  ordered_json j = describe(profile);
  if (bridge_to) j["bridged"] = describe(taxonomy::bridge(profile, *bridge_to));
  return j;
}

ordered_json eval_entries(const ScenarioFile& s) {
  namespace a = analytic;
  const auto& p = s.config.params;
  const auto& exo = s.config.exo;
  const auto fate = s.theft.fate;
  const auto t = s.theft.tokens;
  const double n1 = static_cast<double>(p.n - 1);
  const double ups = a::resolve_upsilon(p.u, fate);
  const double mu = a::resolve_mu(t, p.u, fate);
  const std::string fate_name(a::to_string(fate));

  ordered_json e = ordered_json::array();
  e.push_back(entry("random_theft_deterred", "random-target-deterrence",
                    {{"alpha", p.alpha}, {"epsilon", p.epsilon}, {"f", p.f}, {"n", p.n}, {"c", p.c}},
                    p.alpha * p.epsilon * p.f / n1, a::random_theft_deterred(p)));
  e.push_back(entry("resolve_upsilon", "ledger-fate-upsilon", {{"u", p.u}, {"fate", fate_name}},
                    ups, nullptr));
  e.push_back(entry("resolve_mu", "ledger-fate-mu", {{"t", t}, {"u", p.u}, {"fate", fate_name}}, mu,
                    nullptr));
  e.push_back(entry("crypto_theft_condition", "single-unit-theft",
                    {{"alpha", p.alpha}, {"upsilon", ups}, {"n", p.n}, {"c", p.c}},
                    p.alpha * ups / n1, a::crypto_theft_condition(p, ups)));
  {
    const auto ev = a::make_evaluation(a::crypto_theft_benefit(p, ups), {"informed-theft-benefit"});
    e.push_back(entry("crypto_theft_benefit", "informed-theft-benefit",
                      {{"alpha", p.alpha}, {"upsilon", ups}, {"c", p.c}}, ev.benefit,
                      ev.attractive));
  }
  e.push_back(entry("full_info_sustainable_goods", "full-info-goods-sustainable",
                    {{"alpha", p.alpha}, {"epsilon", p.epsilon}, {"f", p.f}, {"c", p.c}},
                    p.alpha * p.epsilon * p.f - p.c, a::full_info_sustainable_goods(p)));
  e.push_back(entry("full_info_sustainable_crypto", "full-info-crypto-sustainable",
                    {{"alpha", p.alpha}, {"u", p.u}, {"c", p.c}}, p.alpha * p.u - p.c,
                    a::full_info_sustainable_crypto(p)));
  {
    const auto ce = a::credit_equilibrium_sustainable(p, ups);
    e.push_back(entry("credit_equilibrium_sustainable", "credit-equilibrium",
                      {{"u", p.u},
                       {"f", p.f},
                       {"upsilon", ups},
                       {"alpha", p.alpha},
                       {"c", p.c},
                       {"s", p.s},
                       {"delta", p.delta},
                       {"n", p.n}},
                      {{"theft_gain", ce.theft_gain},
                       {"surplus", ce.surplus},
                       {"continuation", ce.continuation},
                       {"defection_gain", ce.defection_gain}},
                      {{"cond_theft_tempting", ce.cond_theft_tempting},
                       {"cond_surplus", ce.cond_surplus},
                       {"cond_dynamic", ce.cond_dynamic},
                       {"all", ce.all}}));
  }
  e.push_back(entry("expected_value_of_exchange", "value-of-exchange",
                    {{"u", p.u}, {"s", p.s}, {"alpha", p.alpha}, {"upsilon", ups}, {"c", p.c},
                     {"delta", p.delta}, {"n", p.n}},
                    a::expected_value_of_exchange(p, ups), nullptr));
  {
    const auto ev = a::make_evaluation(a::money_theft_benefit(p), {"money-theft-benefit"});
    e.push_back(entry("money_theft_benefit", "money-theft-benefit",
                      {{"alpha", p.alpha}, {"u", p.u}, {"c", p.c}}, ev.benefit, ev.attractive));
  }
  {
    const auto ev =
        a::make_evaluation(a::exogenous_theft_benefit(p, exo, mu), {"exogenous-theft-benefit"});
    e.push_back(entry("exogenous_theft_benefit", "exogenous-theft-benefit",
                      {{"alpha", p.alpha}, {"gain", mu}, {"u_e", exo.u_e}, {"c", p.c},
                       {"c_e", exo.c_e}},
                      ev.benefit, ev.attractive));
  }
  e.push_back(entry("exogenous_sustainable", "exogenous-sustainable",
                    {{"alpha", p.alpha}, {"upsilon", ups}, {"u_e", exo.u_e}, {"c", p.c},
                     {"c_e", exo.c_e}},
                    a::exogenous_theft_benefit(p, exo, ups), a::exogenous_sustainable(p, exo, ups)));
  {
    const auto so = a::scenario_outcome(fate, t, p.u, exo, p);
    e.push_back(entry("scenario_outcome", "attack-scenarios",
                      {{"fate", fate_name}, {"t", t}, {"u", p.u}, {"u_e", exo.u_e}, {"c", p.c},
                       {"c_e", exo.c_e}},
                      {{"mu", so.mu}, {"net", so.net}, {"scenario_id", so.scenario_id}}, nullptr));
  }
  if (s.pool) {
    const auto& ps = *s.pool;
    const auto r = pool::sandwich_attack(ps.reserves, ps.victim, ps.frontrun, 0.0, 0.0);
    const double extraction = r.attacker_profit;
    e.push_back(entry("mev_profitable", "mev-profitability",
                      {{"expected_extraction", extraction}, {"gas", ps.gas}, {"bid", ps.bid}},
                      extraction - (ps.gas + ps.bid),
                      a::mev_profitable(extraction, ps.gas, ps.bid)));
  }
  return e;
}

ordered_json stats_json(const engine::SimStats& st) {
  ordered_json j;
  j["trades"] = st.trades;
  j["theft_attempts"] = st.theft_attempts;
  j["theft_successes"] = st.theft_successes;
  j["defections"] = st.defections;
  j["collapse_cycle"] = st.collapse_cycle ? ordered_json(*st.collapse_cycle) : ordered_json(nullptr);
  j["collapsed_trials"] = st.collapsed_trials;
  j["mean_robber_payoff"] = st.mean_robber_payoff;
  j["stderr_robber_payoff"] = st.stderr_robber_payoff;
  j["money_trades"] = st.money_trades;
  j["money_share"] = st.money_share;
  return j;
}

ordered_json attack_json(const pool::AttackResult& r, double frontrun, double gas, double bid) {
  ordered_json j;
  j["status"] = pool::to_string(r.status);
  j["attacker_profit"] = r.attacker_profit;
  j["victim_received"] = r.victim_received;
  j["unattacked_out"] = r.unattacked_out;
  j["frontrun"] = frontrun;
  j["frontrun_out"] = r.frontrun_out;
  j["backrun_out"] = r.backrun_out;
  const double extraction = r.attacker_profit + gas + bid;
  j["extraction"] = extraction;
  j["gas"] = gas;
  j["bid"] = bid;
  j["profitable"] = analytic::mev_profitable(extraction, gas, bid);
  j["final_pool"] = {{"reserve_x", r.final_pool.reserve_x}, {"reserve_y", r.final_pool.reserve_y}};
  return j;
}

double SweepAxis::value(std::int64_t i) const {
  if (steps <= 1) return lo;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

SweepAxis parse_axis(std::string_view spec) {
  const auto eq = spec.find('=');
  if (eq == std::string_view::npos) throw ValidationError(std::string(spec), "key=lo:hi:steps");
  SweepAxis axis;
  axis.key = std::string(spec.substr(0, eq));
  std::string_view rest = spec.substr(eq + 1);
  const auto c1 = rest.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : rest.find(':', c1 + 1);
  if (c2 == std::string_view::npos) throw ValidationError(axis.key, "key=lo:hi:steps");
  auto num = [&](std::string_view part, auto& out) {
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
    if (ec != std::errc() || ptr != part.data() + part.size())
      throw ValidationError(axis.key, "key=lo:hi:steps with numeric bounds");
  };
  num(rest.substr(0, c1), axis.lo);
  num(rest.substr(c1 + 1, c2 - c1 - 1), axis.hi);
  num(rest.substr(c2 + 1), axis.steps);
  if (axis.steps < 1) throw ValidationError(axis.key, "steps >= 1");
  return axis;
}

std::string sweep_csv(const ScenarioFile& base, const std::vector<SweepAxis>& axes) {
  std::vector<std::string> header = csv_columns();
  std::vector<std::string> extra;
  for (const auto& a : axes) {
    scenario::ScenarioFile probe = base;
    scenario::apply_override(probe, a.key, a.value(0));
    if (!scenario::is_standard_column(a.key) &&
        std::find(extra.begin(), extra.end(), a.key) == extra.end())
      extra.push_back(a.key);
  }
  header.insert(header.end(), extra.begin(), extra.end());
  std::string csv = join(header);

  std::vector<std::int64_t> idx(axes.size(), 0);
  std::function<void(std::size_t, ScenarioFile)> walk = [&](std::size_t d, ScenarioFile s) {
    if (d == axes.size()) {
      const auto stats = engine::run_simulation(s.config);
      auto row = csv_row(s, stats);
      for (const auto& k : extra) row.push_back(override_value(s, k));
      csv += join(row);
      return;
    }
    for (std::int64_t i = 0; i < axes[d].steps; ++i) {
      ScenarioFile next = s;
      scenario::apply_override(next, axes[d].key, axes[d].value(i));
      walk(d + 1, std::move(next));
    }
  };
  walk(0, base);
  return csv;
}

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Token-economy equilibrium laboratory", "tokenlab"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));
  Options o;

  auto* classify = app.add_subcommand("classify", "Place a token in the trust/security matrix");
  classify->add_option("--security", o.security, "endo|exo")->required();
  classify->add_option("--trust", o.trust, "endo|exo");
  classify->add_option("--backing", o.backing, "object|claim");
  classify->add_option("--host", o.host, "public|private");
  classify->add_option("--bridge", o.bridge_to, "also report the profile bridged to public|private");
  classify->add_option("--out", o.out_path);

  auto* eval = app.add_subcommand("eval", "Evaluate every closed-form condition for a scenario");
  eval->add_option("--params", o.config_path, "scenario file")->required();
  eval->add_option("--upsilon-fate", o.fate, "survives|collapses|rewritten");
  eval->add_option("--exo", o.exo, "u_e,c_e");
  eval->add_option("--set", o.sets, "key=value override");
  eval->add_option("--out", o.out_path);

  auto* simulate = app.add_subcommand("simulate", "Run the agent simulation");
  simulate->add_option("--config", o.config_path, "scenario file")->required();
  simulate->add_option("--seed", o.seed);
  simulate->add_option("--mode", o.mode);
  simulate->add_option("--threads", o.threads);
  simulate->add_option("--set", o.sets, "key=value override");
  simulate->add_option("--format", o.format, "csv|json");
  simulate->add_option("--events", o.events_path, "JSON-lines ledger log of trial 0");
  simulate->add_option("--out", o.out_path);

  auto* sweep = app.add_subcommand("sweep", "Simulate over a parameter grid");
  sweep->add_option("--config", o.config_path, "scenario file")->required();
  sweep->add_option("--vary", o.vary, "param=lo:hi:steps")->required();
  sweep->add_option("--seed", o.seed);
  sweep->add_option("--mode", o.mode);
  sweep->add_option("--threads", o.threads);
  sweep->add_option("--set", o.sets, "key=value override");
  sweep->add_option("--out", o.out_path);

  auto* mev = app.add_subcommand("mev", "Sandwich attack against a constant-product pool");
  mev->add_option("--pool", o.pool, "reserve_x,reserve_y")->required();
  mev->add_option("--victim", o.victim, "amount_in,min_out")->required();
  mev->add_option("--frontrun", o.frontrun);
  mev->add_option("--fill-target", o.fill_target, "solve the front-run for this victim fill");
  mev->add_option("--gas", o.gas);
  mev->add_option("--bid", o.bid);
  mev->add_option("--side", o.side, "xy|yx");
  mev->add_option("--out", o.out_path);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion& e) {
    out << kVersion << '\n';
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (classify->parsed()) return run_classify(o, out);
    if (eval->parsed()) return run_eval(args, o, out);
    if (simulate->parsed()) return run_simulate(args, o, out);
    if (sweep->parsed()) return run_sweep(o, out);
    if (mev->parsed()) return run_mev(o, out);
    err << "error: UnknownCommand\n";
    return 1;
  } catch (const ValidationError& e) {
    err << "ValidationError(" << e.key() << ", " << e.constraint() << ")\n";
    return 1;
  } catch (const scenario::ParseError& e) {
    err << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "fault: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace tokenlab::cli

#include "tokenlab/scenario.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace tokenlab::scenario {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

// Reads the members of one JSON object, remembering which keys were used so
// leftovers can be rejected.
class Section {
 public:
  Section(const json& obj, std::string path) : obj_(obj), path_(std::move(path)) {
    if (!obj_.is_object()) throw ParseError(path_ + ": expected an object");
  }

  bool has(const std::string& key) const { return obj_.contains(key); }

  const json* get(const std::string& key) {
    seen_.insert(key);
    auto it = obj_.find(key);
    return it == obj_.end() ? nullptr : &*it;
  }

  double number(const std::string& key, double fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_number()) throw ParseError(where(key) + ": expected a number");
    return v->get<double>();
  }

  std::int64_t integer(const std::string& key, std::int64_t fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_number_integer()) throw ParseError(where(key) + ": expected an integer");
    return v->get<std::int64_t>();
  }

  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) {
    const json* v = get(key);
    if (!v) return fallback;
    if (!v->is_number_unsigned()) throw ParseError(where(key) + ": expected a nonnegative integer");
    return v->get<std::uint64_t>();
  }

  std::optional<std::string> string(const std::string& key) {
    const json* v = get(key);
    if (!v) return std::nullopt;
    if (!v->is_string()) throw ParseError(where(key) + ": expected a string");
    return v->get<std::string>();
  }

  void finish() const {
    for (const auto& [key, value] : obj_.items())
      if (!seen_.contains(key)) throw ParseError(where(key) + ": unknown key");
  }

  std::string where(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

 private:
  const json& obj_;
  std::string path_;
  std::set<std::string> seen_;
};

std::uint64_t default_seed() {
  if (const char* env = std::getenv(kSeedEnv); env && *env) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw ValidationError(kSeedEnv, "unsigned integer");
    return v;
  }
  return 0;
}

taxonomy::Locus locus_or_throw(const std::string& key, const std::string& s) {
  auto v = taxonomy::parse_locus(s);
  if (!v) throw ValidationError(key, "one of endo|exo");
  return *v;
}

}  // namespace

bool operator==(const PoolSpec& a, const PoolSpec& b) {
  return a.reserves.reserve_x == b.reserves.reserve_x &&
         a.reserves.reserve_y == b.reserves.reserve_y &&
         a.victim.amount_in == b.victim.amount_in && a.victim.min_out == b.victim.min_out &&
         a.victim.side == b.victim.side && a.frontrun == b.frontrun && a.gas == b.gas &&
         a.bid == b.bid;
}

bool operator==(const ScenarioFile& a, const ScenarioFile& b) {
  const auto& x = a.config;
  const auto& y = b.config;
  return x.params == y.params && x.exo == y.exo && x.mode == y.mode && x.cycles == y.cycles &&
         x.trials == y.trials && x.seed == y.seed && x.collapse_rule.theta == y.collapse_rule.theta &&
         x.collapse_rule.p_r == y.collapse_rule.p_r && x.participation == y.participation &&
         x.resolved_money_supply() == y.resolved_money_supply() &&
         x.initial_balance == y.initial_balance && x.balances == y.balances &&
         x.important == y.important && x.theft_units == y.theft_units && x.threads == y.threads &&
         a.theft == b.theft && a.pool == b.pool && a.token_profile == b.token_profile;
}

ScenarioFile from_json(const json& doc) {
  ScenarioFile out;
  auto& cfg = out.config;
  Section root(doc, "");

  if (const json* p = root.get("params")) {
    Section s(*p, "params");
    auto& m = cfg.params;
    m.alpha = s.number("alpha", m.alpha);
    m.epsilon = s.number("epsilon", m.epsilon);
    m.f = s.number("f", m.f);
    m.u = s.number("u", m.u);
    m.c = s.number("c", m.c);
    m.s = s.number("s", m.s);
    m.delta = s.number("delta", m.delta);
    m.n = s.integer("n", m.n);
    s.finish();
  }

  if (const json* e = root.get("exo")) {
    Section s(*e, "exo");
    if (s.has("u_e") && (s.has("units") || s.has("price")))
      throw ValidationError("exo", "give either u_e or units*price, not both");
    if (s.has("units") != s.has("price"))
      throw ValidationError("exo", "units and price go together");
    if (s.has("units"))
      cfg.exo.u_e = s.number("units", 0.0) * s.number("price", 0.0);
    else
      cfg.exo.u_e = s.number("u_e", 0.0);
    cfg.exo.c_e = s.number("c_e", 0.0);
    s.finish();
  }

  if (auto mode = root.string("mode")) {
    auto m = engine::parse_mode(*mode);
    if (!m)
      throw ValidationError("mode",
                            "one of Bilateral22|FullInfo23|MoneySemianon31|MoneyOrBilateral32|"
                            "MoneyOrFullInfo33|CryptoLedger");
    cfg.mode = *m;
  }

  if (const json* c = root.get("collapse_rule")) {
    Section s(*c, "collapse_rule");
    cfg.collapse_rule.theta = s.number("theta", cfg.collapse_rule.theta);
    cfg.collapse_rule.p_r = s.number("p_r", cfg.collapse_rule.p_r);
    s.finish();
  }

  cfg.cycles = root.integer("cycles", cfg.cycles);
  cfg.trials = root.integer("trials", cfg.trials);
  cfg.seed = root.has("seed") ? root.unsigned_integer("seed", 0) : default_seed();

  if (const json* e = root.get("engine")) {
    Section s(*e, "engine");
    cfg.participation = s.number("participation", cfg.participation);
    if (s.has("money_supply")) cfg.money_supply = s.integer("money_supply", 0);
    cfg.initial_balance = s.unsigned_integer("initial_balance", cfg.initial_balance);
    if (const json* b = s.get("balances")) {
      if (!b->is_array()) throw ParseError("engine.balances: expected an array");
      for (const auto& v : *b) {
        if (!v.is_number_unsigned())
          throw ParseError("engine.balances: expected nonnegative integers");
        cfg.balances.push_back(v.get<std::uint64_t>());
      }
    }
    if (const json* imp = s.get("important")) {
      if (!imp->is_array()) throw ParseError("engine.important: expected an array");
      for (const auto& v : *imp) {
        if (!v.is_number_unsigned()) throw ParseError("engine.important: expected agent ids");
        cfg.important.push_back(v.get<engine::AgentId>());
      }
    }
    cfg.theft_units = s.unsigned_integer("theft_units", cfg.theft_units);
    cfg.threads = static_cast<unsigned>(s.unsigned_integer("threads", cfg.threads));
    s.finish();
  }

  if (const json* t = root.get("theft")) {
    Section s(*t, "theft");
    out.theft.tokens = s.integer("tokens", out.theft.tokens);
    if (out.theft.tokens < 1) throw ValidationError("tokens", "t >= 1");
    if (auto fate = s.string("fate")) {
      auto f = analytic::parse_fate(*fate);
      if (!f) throw ValidationError("fate", "one of survives|collapses|rewritten");
      out.theft.fate = *f;
    }
    s.finish();
  }

  if (const json* p = root.get("pool")) {
    Section s(*p, "pool");
    PoolSpec spec;
    spec.reserves.reserve_x = s.number("reserve_x", 0.0);
    spec.reserves.reserve_y = s.number("reserve_y", 0.0);
    spec.victim.amount_in = s.number("victim_in", 0.0);
    spec.victim.min_out = s.number("min_out", 0.0);
    spec.frontrun = s.number("frontrun", 0.0);
    spec.gas = s.number("gas", 0.0);
    spec.bid = s.number("bid", 0.0);
    if (auto side = s.string("side")) {
      if (*side == "xy")
        spec.victim.side = pool::Side::XtoY;
      else if (*side == "yx")
        spec.victim.side = pool::Side::YtoX;
      else
        throw ValidationError("side", "one of xy|yx");
    }
    s.finish();
    if (!(spec.reserves.reserve_x > 0.0)) throw ValidationError("reserve_x", "reserve_x > 0");
    if (!(spec.reserves.reserve_y > 0.0)) throw ValidationError("reserve_y", "reserve_y > 0");
    if (!(spec.victim.amount_in > 0.0)) throw ValidationError("victim_in", "amount_in > 0");
    if (!(spec.victim.min_out >= 0.0)) throw ValidationError("min_out", "min_out >= 0");
    if (!(spec.frontrun >= 0.0)) throw ValidationError("frontrun", "frontrun >= 0");
    if (!(spec.gas >= 0.0)) throw ValidationError("gas", "gas >= 0");
    if (!(spec.bid >= 0.0)) throw ValidationError("bid", "bid >= 0");
    out.pool = spec;
  }

  if (const json* tp = root.get("token_profile")) {
    Section s(*tp, "token_profile");
    taxonomy::TokenProfile prof;
    const auto host = s.string("host");
    if (host) {
      auto h = taxonomy::parse_ledger_kind(*host);
      if (!h) throw ValidationError("host", "one of public|private");
      prof.host_ledger = *h;
    }
    prof.security_locus = locus_or_throw("security", s.string("security").value_or("endo"));
    const auto trust = s.string("trust");
    prof.trust_locus = trust ? locus_or_throw("trust", *trust)
                             : taxonomy::trust_locus_of(prof.host_ledger);
    if (host && prof.trust_locus != taxonomy::trust_locus_of(prof.host_ledger))
      throw ValidationError("trust", "must match the host ledger's governance");
    if (!host) prof.host_ledger = prof.trust_locus == taxonomy::Locus::Endogenous
                                      ? taxonomy::LedgerKind::PublicPermissionless
                                      : taxonomy::LedgerKind::PrivateOrConsortium;
    if (auto b = s.string("backing")) {
      auto v = taxonomy::parse_backing(*b);
      if (!v) throw ValidationError("backing", "one of object|claim");
      prof.value_backing = *v;
    }
    prof.value_timing = taxonomy::value_timing_heuristic(prof);
    s.finish();
    out.token_profile = prof;
  }

  root.finish();
  cfg.validate();
  return out;
}

ScenarioFile parse_scenario_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
  return from_json(doc);
}

ScenarioFile parse_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

ordered_json to_json(const ScenarioFile& s) {
  const auto& cfg = s.config;
  ordered_json j;
  j["params"] = {{"alpha", cfg.params.alpha}, {"epsilon", cfg.params.epsilon},
                 {"f", cfg.params.f},         {"u", cfg.params.u},
                 {"c", cfg.params.c},         {"s", cfg.params.s},
                 {"delta", cfg.params.delta}, {"n", cfg.params.n}};
  j["exo"] = {{"u_e", cfg.exo.u_e}, {"c_e", cfg.exo.c_e}};
  j["mode"] = engine::to_string(cfg.mode);
  j["collapse_rule"] = {{"theta", cfg.collapse_rule.theta}, {"p_r", cfg.collapse_rule.p_r}};
  j["cycles"] = cfg.cycles;
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  ordered_json eng;
  eng["participation"] = cfg.participation;
  if (cfg.money_supply) eng["money_supply"] = *cfg.money_supply;
  eng["initial_balance"] = cfg.initial_balance;
  if (!cfg.balances.empty()) eng["balances"] = cfg.balances;
  eng["important"] = cfg.important;
  eng["theft_units"] = cfg.theft_units;
  eng["threads"] = cfg.threads;
  j["engine"] = eng;
  j["theft"] = {{"tokens", s.theft.tokens}, {"fate", analytic::to_string(s.theft.fate)}};
  if (s.pool) {
    const auto& p = *s.pool;
    j["pool"] = {{"reserve_x", p.reserves.reserve_x},
                 {"reserve_y", p.reserves.reserve_y},
                 {"victim_in", p.victim.amount_in},
                 {"min_out", p.victim.min_out},
                 {"frontrun", p.frontrun},
                 {"gas", p.gas},
                 {"bid", p.bid},
                 {"side", p.victim.side == pool::Side::XtoY ? "xy" : "yx"}};
  }
  if (s.token_profile) {
    const auto& t = *s.token_profile;
    j["token_profile"] = {{"security", t.security_locus == taxonomy::Locus::Endogenous ? "endo" : "exo"},
                          {"trust", t.trust_locus == taxonomy::Locus::Endogenous ? "endo" : "exo"},
                          {"backing", taxonomy::to_string(t.value_backing)},
                          {"host", taxonomy::to_string(t.host_ledger)}};
  }
  return j;
}

bool is_standard_column(std::string_view key) {
  static const std::set<std::string_view> kStandard{"alpha", "epsilon", "f",     "u",    "c",
                                                    "s",     "delta",   "n",     "theta", "p_r"};
  return kStandard.contains(key);
}

void apply_override(ScenarioFile& s, std::string_view key, double value) {
  auto& cfg = s.config;
  auto& p = cfg.params;
  auto as_int = [&](std::string_view k) {
    const double r = std::round(value);
    if (r != value) throw ValidationError(std::string(k), "integer value");
    return static_cast<std::int64_t>(r);
  };
  auto as_count = [&](std::string_view k) {
    const auto v = as_int(k);
    if (v < 0) throw ValidationError(std::string(k), "nonnegative");
    return static_cast<std::uint64_t>(v);
  };
  if (key == "alpha") p.alpha = value;
  else if (key == "epsilon") p.epsilon = value;
  else if (key == "f") p.f = value;
  else if (key == "u") p.u = value;
  else if (key == "c") p.c = value;
  else if (key == "s") p.s = value;
  else if (key == "delta") p.delta = value;
  else if (key == "n") p.n = as_int(key);
  else if (key == "u_e") cfg.exo.u_e = value;
  else if (key == "c_e") cfg.exo.c_e = value;
  else if (key == "theta") cfg.collapse_rule.theta = value;
  else if (key == "p_r") cfg.collapse_rule.p_r = value;
  else if (key == "participation") cfg.participation = value;
  else if (key == "cycles") cfg.cycles = as_int(key);
  else if (key == "trials") cfg.trials = as_int(key);
  else if (key == "money_supply") cfg.money_supply = as_int(key);
  else if (key == "initial_balance") cfg.initial_balance = as_count(key);
  else if (key == "theft_units") cfg.theft_units = as_count(key);
  else if (key == "tokens") s.theft.tokens = as_int(key);
  else throw ValidationError(std::string(key), "not an overridable numeric key");
  cfg.validate();
}

}  // namespace tokenlab::scenario

#include "tokenlab/taxonomy.hpp"

#include <array>
#include <cctype>

namespace tokenlab::taxonomy {

namespace {

constexpr std::array<Quadrant, 4> kMatrix{{
    {Locus::Endogenous, Locus::Endogenous, "top-left",
     "Typical Proof-of-Stake chain (e.g. Cosmos chain) with \"object based\" value backing",
     kRewriteCausesCollapse},
    {Locus::Endogenous, Locus::Exogenous, "top-right",
     "Privately operated stablecoin with \"claim-based\" value backing, operated on private or "
     "consortium ledger.",
     "Operator or consortium retain control of finality subject to enforcement (e.g. regulation)"},
    {Locus::Exogenous, Locus::Endogenous, "bottom-left", "Typical Proof-of-Work chain (e.g. Bitcoin)",
     kRewriteCausesCollapse},
    {Locus::Exogenous, Locus::Exogenous, "bottom-right", "Cash-like CBDC",
     "Individual notes are hard to target, meaning they are fungible even if stolen (in the case "
     "of digital cash) and there is a system-level cost in switching off the system. Thus any "
     "attack is likely causally reversed, i.e. an attack on the currency exogenously results in "
     "effects on the CBDC."},
}};

}  // namespace

Quadrant classify(Locus security, Locus trust) {
  const auto row = security == Locus::Endogenous ? 0 : 2;
  const auto col = trust == Locus::Endogenous ? 0 : 1;
  return kMatrix[row + col];
}

Locus trust_locus_of(LedgerKind host) {
  return host == LedgerKind::PublicPermissionless ? Locus::Endogenous : Locus::Exogenous;
}

TokenProfile bridge(const TokenProfile& profile, LedgerKind destination) {
  TokenProfile out = profile;
  out.host_ledger = destination;
  out.trust_locus = trust_locus_of(destination);
  return out;
}

ValueTiming value_timing_heuristic(const TokenProfile& profile) {
  if (profile.value_backing == ValueBacking::ClaimBased) return ValueTiming::AtRedemption;
  return profile.security_locus == Locus::Exogenous ? ValueTiming::ExPost : ValueTiming::ExAnte;
}

bool lacks_exemplar(const TokenProfile& profile) {
  return profile.security_locus == Locus::Exogenous && profile.trust_locus == Locus::Endogenous &&
         profile.value_backing == ValueBacking::ClaimBased;
}

std::string canonicalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char ch : text) {
    if (std::isspace(static_cast<unsigned char>(ch))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(ch);
  }
  return out;
}

std::string_view to_string(Locus v) { return v == Locus::Endogenous ? "endogenous" : "exogenous"; }

std::string_view to_string(ValueBacking v) {
  return v == ValueBacking::ObjectBased ? "object" : "claim";
}

std::string_view to_string(ValueTiming v) {
  switch (v) {
    case ValueTiming::ExAnte: return "ex-ante";
    case ValueTiming::ExPost: return "ex-post";
    case ValueTiming::AtRedemption: return "at-redemption";
  }
  return "?";
}

std::string_view to_string(LedgerKind v) {
  return v == LedgerKind::PublicPermissionless ? "public" : "private";
}

std::optional<Locus> parse_locus(std::string_view s) {
  if (s == "endo" || s == "endogenous") return Locus::Endogenous;
  if (s == "exo" || s == "exogenous") return Locus::Exogenous;
  return std::nullopt;
}

std::optional<ValueBacking> parse_backing(std::string_view s) {
  if (s == "object") return ValueBacking::ObjectBased;
  if (s == "claim") return ValueBacking::ClaimBased;
  return std::nullopt;
}

std::optional<LedgerKind> parse_ledger_kind(std::string_view s) {
  if (s == "public") return LedgerKind::PublicPermissionless;
  if (s == "private") return LedgerKind::PrivateOrConsortium;
  return std::nullopt;
}

}  // namespace tokenlab::taxonomy

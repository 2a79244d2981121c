// Token trust/security classification.
//
// A token is placed in a 2x2 matrix by where its security comes from (does
// its value rest on consuming something outside the ledger?) and where its
// trust comes from (does anything outside the ledger guarantee finality?).
// The trust locus follows the ledger the token currently lives on, so
// bridging a token can move it between quadrants.

#ifndef TOKENLAB_TAXONOMY_HPP
#define TOKENLAB_TAXONOMY_HPP

#include <optional>
#include <string>
#include <string_view>

namespace tokenlab::taxonomy {

enum class Locus { Endogenous, Exogenous };

enum class ValueBacking { ObjectBased, ClaimBased };

enum class ValueTiming { ExAnte, ExPost, AtRedemption };

enum class LedgerKind { PublicPermissionless, PrivateOrConsortium };

struct TokenProfile {
  Locus security_locus = Locus::Endogenous;
  Locus trust_locus = Locus::Endogenous;
  ValueBacking value_backing = ValueBacking::ObjectBased;
  ValueTiming value_timing = ValueTiming::ExAnte;
  LedgerKind host_ledger = LedgerKind::PublicPermissionless;

  friend bool operator==(const TokenProfile&, const TokenProfile&) = default;
};

/// One cell of the classification matrix. Rows are security locus
/// (endogenous on top), columns are trust locus (endogenous on the left).
struct Quadrant {
  Locus security_locus;
  Locus trust_locus;
  std::string_view position;  // "top-left", "top-right", ...
  std::string_view exemplar;
  std::string_view attack_effect;

  friend bool operator==(const Quadrant&, const Quadrant&) = default;
};

inline constexpr std::string_view kRewriteCausesCollapse = "Rewrite causes collapse";

Quadrant classify(Locus security, Locus trust);

/// Trust locus implied by a ledger's governance.
Locus trust_locus_of(LedgerKind host);

/// Moves a token to another ledger. Only the host and the trust locus
/// change; the trust locus is re-derived from the destination.
TokenProfile bridge(const TokenProfile& profile, LedgerKind destination);

/// When the token's value is established: claim-based tokens at redemption,
/// object-based tokens ex post if minting consumed an outside resource
/// (exogenous security, e.g. proof-of-work) and ex ante otherwise.
ValueTiming value_timing_heuristic(const TokenProfile& profile);

/// True for profiles the matrix places in a cell whose exemplar does not
/// describe them: a claim-based, exogenously secured token (CBDC-like)
/// hosted on a public ledger lands in the proof-of-work cell.
bool lacks_exemplar(const TokenProfile& profile);

/// Collapses runs of whitespace to a single space and trims both ends.
std::string canonicalize(std::string_view text);

std::string_view to_string(Locus v);
std::string_view to_string(ValueBacking v);
std::string_view to_string(ValueTiming v);
std::string_view to_string(LedgerKind v);

std::optional<Locus> parse_locus(std::string_view s);
std::optional<ValueBacking> parse_backing(std::string_view s);
std::optional<LedgerKind> parse_ledger_kind(std::string_view s);

}  // namespace tokenlab::taxonomy

#endif  // TOKENLAB_TAXONOMY_HPP

#include "tokenlab/taxonomy.hpp"

#include <set>
#include <string>

#include <gtest/gtest.h>

namespace tokenlab::taxonomy {
namespace {

constexpr Locus kBoth[] = {Locus::Endogenous, Locus::Exogenous};

bool contains(std::string_view hay, std::string_view needle) {
  return canonicalize(hay).find(canonicalize(needle)) != std::string::npos;
}

TEST(Classify, ProofOfStakeCell) {
  const auto q = classify(Locus::Endogenous, Locus::Endogenous);
  EXPECT_EQ(q.position, "top-left");
  EXPECT_TRUE(contains(q.exemplar, "Typical Proof-of-Stake chain"));
  EXPECT_EQ(canonicalize(q.attack_effect), "Rewrite causes collapse");
}

TEST(Classify, CbdcCell) {
  const auto q = classify(Locus::Exogenous, Locus::Exogenous);
  EXPECT_EQ(q.position, "bottom-right");
  EXPECT_EQ(canonicalize(q.exemplar), "Cash-like CBDC");
  EXPECT_TRUE(contains(q.attack_effect, "fungible even if stolen"));
}

TEST(Classify, PrivateStablecoinCell) {
  const auto q = classify(Locus::Endogenous, Locus::Exogenous);
  EXPECT_EQ(q.position, "top-right");
  EXPECT_TRUE(contains(q.exemplar, "Privately operated stablecoin"));
  EXPECT_TRUE(contains(q.attack_effect, "retain control of finality"));
}

TEST(Classify, ProofOfWorkCellAlsoCollapses) {
  const auto q = classify(Locus::Exogenous, Locus::Endogenous);
  EXPECT_TRUE(contains(q.exemplar, "Typical Proof-of-Work chain"));
  EXPECT_EQ(q.attack_effect, kRewriteCausesCollapse);
}

TEST(Classify, InjectiveOverDomain) {
  std::set<std::string_view> positions;
  std::set<std::string_view> exemplars;
  for (auto s : kBoth)
    for (auto t : kBoth) {
      const auto q = classify(s, t);
      EXPECT_EQ(q.security_locus, s);
      EXPECT_EQ(q.trust_locus, t);
      positions.insert(q.position);
      exemplars.insert(q.exemplar);
    }
  EXPECT_EQ(positions.size(), 4u);
  EXPECT_EQ(exemplars.size(), 4u);
}

TEST(Classify, EndogenousTrustAlwaysCollapses) {
  for (auto s : kBoth) EXPECT_EQ(classify(s, Locus::Endogenous).attack_effect, kRewriteCausesCollapse);
  for (auto s : kBoth) EXPECT_NE(classify(s, Locus::Exogenous).attack_effect, kRewriteCausesCollapse);
}

TokenProfile stablecoin() {
  return {Locus::Endogenous, Locus::Exogenous, ValueBacking::ClaimBased, ValueTiming::AtRedemption,
          LedgerKind::PrivateOrConsortium};
}

TEST(Bridge, StablecoinToPublicMovesTopRightToTopLeft) {
  const auto before = stablecoin();
  EXPECT_EQ(classify(before.security_locus, before.trust_locus).position, "top-right");
  const auto after = bridge(before, LedgerKind::PublicPermissionless);
  EXPECT_EQ(after.trust_locus, Locus::Endogenous);
  EXPECT_EQ(classify(after.security_locus, after.trust_locus).position, "top-left");
}

TEST(Bridge, ToCurrentHostIsIdentity) {
  const auto p = stablecoin();
  EXPECT_EQ(bridge(p, p.host_ledger), p);
}

TEST(Bridge, CbdcOntoPublicLedgerLacksExemplar) {
  const TokenProfile cbdc{Locus::Exogenous, Locus::Exogenous, ValueBacking::ClaimBased,
                          ValueTiming::AtRedemption, LedgerKind::PrivateOrConsortium};
  EXPECT_FALSE(lacks_exemplar(cbdc));
  const auto moved = bridge(cbdc, LedgerKind::PublicPermissionless);
  EXPECT_EQ(moved.security_locus, Locus::Exogenous);
  EXPECT_EQ(moved.trust_locus, Locus::Endogenous);
  EXPECT_EQ(classify(moved.security_locus, moved.trust_locus).position, "bottom-left");
  EXPECT_TRUE(lacks_exemplar(moved));
}

TEST(Bridge, PropertiesOverAllProfiles) {
  for (auto s : kBoth)
    for (auto t : kBoth)
      for (auto b : {ValueBacking::ObjectBased, ValueBacking::ClaimBased})
        for (auto h : {LedgerKind::PublicPermissionless, LedgerKind::PrivateOrConsortium})
          for (auto d : {LedgerKind::PublicPermissionless, LedgerKind::PrivateOrConsortium}) {
            const TokenProfile p{s, t, b, ValueTiming::ExPost, h};
            const auto once = bridge(p, d);
            EXPECT_EQ(bridge(once, d), once);
            EXPECT_EQ(once.security_locus, p.security_locus);
            EXPECT_EQ(once.value_backing, p.value_backing);
            EXPECT_EQ(once.value_timing, p.value_timing);
            EXPECT_EQ(once.trust_locus, trust_locus_of(d));
          }
}

TEST(ValueTiming, Heuristic) {
  TokenProfile pow{Locus::Exogenous, Locus::Endogenous, ValueBacking::ObjectBased,
                   ValueTiming::ExAnte, LedgerKind::PublicPermissionless};
  EXPECT_EQ(value_timing_heuristic(pow), ValueTiming::ExPost);
  TokenProfile pos{Locus::Endogenous, Locus::Endogenous, ValueBacking::ObjectBased,
                   ValueTiming::ExPost, LedgerKind::PublicPermissionless};
  EXPECT_EQ(value_timing_heuristic(pos), ValueTiming::ExAnte);
  EXPECT_EQ(value_timing_heuristic(stablecoin()), ValueTiming::AtRedemption);
}

TEST(Canonicalize, CollapsesWhitespace) {
  EXPECT_EQ(canonicalize("  Rewrite \n causes\tcollapse  "), "Rewrite causes collapse");
  EXPECT_EQ(canonicalize(""), "");
}

TEST(Parse, RoundTripsNames) {
  EXPECT_EQ(parse_locus("endo"), Locus::Endogenous);
  EXPECT_EQ(parse_locus("exogenous"), Locus::Exogenous);
  EXPECT_FALSE(parse_locus("middle"));
  EXPECT_EQ(parse_ledger_kind(to_string(LedgerKind::PrivateOrConsortium)),
            LedgerKind::PrivateOrConsortium);
  EXPECT_EQ(parse_backing(to_string(ValueBacking::ClaimBased)), ValueBacking::ClaimBased);
}

}  // namespace
}  // namespace tokenlab::taxonomy

#include <mobcoin/ledger.hpp>
#include <mobcoin/rng.hpp>

#include <gtest/gtest.h>

#include <vector>

using namespace mobcoin;

namespace {

const AccountId kP3 = AccountId::person(3);

Ledger funded(Cents amount) {
  Ledger l;
  l.post(0, EventKind::Allocation, AccountId::agency(), kP3, amount);
  return l;
}

}  // namespace

TEST(AccountId, RoundTripsThroughText) {
  for (auto id : {AccountId::agency(), AccountId::person(12), AccountId::employer(0), AccountId::merchant(7)}) {
    const auto back = AccountId::parse(id.to_string());
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, id);
  }
  EXPECT_EQ(AccountId::person(3).to_string(), "Person:3");
  EXPECT_FALSE(AccountId::parse("Person:").has_value());
  EXPECT_FALSE(AccountId::parse("Robot:1").has_value());
  EXPECT_FALSE(AccountId::parse("Person:1x").has_value());
}

TEST(EventKind, NamesRoundTrip) {
  for (std::size_t k = 0; k < kEventKindNames.size(); ++k) {
    const auto kind = static_cast<EventKind>(k);
    EXPECT_EQ(parse_event_kind(to_string(kind)), kind);
  }
  EXPECT_FALSE(parse_event_kind("Gift").has_value());
}

TEST(Append, AllocationCreditsPerson) {
  Ledger l = funded(Cents::coins(1000));
  EXPECT_EQ(l.balance(kP3), Cents::coins(1000));
  EXPECT_EQ(l.balance(AccountId::agency()), Cents::coins(-1000));
  EXPECT_TRUE(conservation_check(l.balances()));
}

TEST(Append, ChargeDownToZero) {
  Ledger l = funded(Cents::coins(15));
  l.post(0, EventKind::TripCharge, kP3, AccountId::agency(), Cents::coins(15));
  EXPECT_EQ(l.balance(kP3), Cents{});
}

TEST(Append, OverdraftIsRejectedAndLeavesStateAlone) {
  Ledger l = funded(Cents::coins(15));
  EXPECT_THROW(l.post(0, EventKind::TripCharge, kP3, AccountId::agency(), Cents::coins(20)), InsufficientBalance);
  EXPECT_EQ(l.balance(kP3), Cents::coins(15));
  EXPECT_EQ(l.next_seq(), 1u);
}

TEST(Append, ShapeErrors) {
  Ledger l = funded(Cents::coins(5));
  EXPECT_THROW(l.post(0, EventKind::TripCharge, kP3, AccountId::agency(), Cents{}), InvalidEvent);
  EXPECT_THROW(l.post(0, EventKind::TripCharge, kP3, AccountId::agency(), Cents{-1}), InvalidEvent);
  EXPECT_THROW(l.post(0, EventKind::Trade, kP3, kP3, Cents{1}), InvalidEvent);
  LedgerEvent e{5, 0, EventKind::TripCharge, kP3, AccountId::agency(), Cents{1}, ""};
  EXPECT_THROW(l.append(e), SequenceGap);
}

TEST(Append, AgencyMayGoNegative) {
  Ledger l;
  l.post(0, EventKind::TripEarn, AccountId::agency(), kP3, Cents{1});
  EXPECT_EQ(l.balance(AccountId::agency()).value, -1);
}

TEST(Commit, BatchIsAtomic) {
  Ledger l = funded(Cents::coins(10));
  const std::vector<Transfer> legs{
      {EventKind::TripCharge, kP3, AccountId::agency(), Cents::coins(6), ""},
      {EventKind::TripCharge, kP3, AccountId::agency(), Cents::coins(6), ""},
  };
  EXPECT_THROW(l.commit(1, legs), InsufficientBalance);
  EXPECT_EQ(l.balance(kP3), Cents::coins(10));
  EXPECT_EQ(l.next_seq(), 1u);
}

TEST(Commit, CreditEarlierInBatchCoversLaterDebit) {
  Ledger l;
  l.open_account(AccountId::employer(0));
  l.commit(0, {{EventKind::ForcedPurchase, AccountId::agency(), AccountId::employer(0), Cents{800}, ""},
               {EventKind::Reimbursement, AccountId::employer(0), kP3, Cents{800}, ""},
               {EventKind::TripCharge, kP3, AccountId::agency(), Cents{800}, ""}});
  EXPECT_EQ(l.balance(kP3), Cents{});
  EXPECT_EQ(l.balance(AccountId::employer(0)), Cents{});
  EXPECT_EQ(l.next_seq(), 3u);
}

TEST(Commit, LargeBatchesUseTheSameRules) {
  Ledger l = funded(Cents{100});
  std::vector<Transfer> legs;
  for (int i = 0; i < 20; ++i) legs.push_back({EventKind::TripCharge, kP3, AccountId::agency(), Cents{5}, ""});
  l.commit(0, legs);
  EXPECT_EQ(l.balance(kP3), Cents{});
  legs.push_back({EventKind::TripCharge, kP3, AccountId::agency(), Cents{5}, ""});
  Ledger m = funded(Cents{100});
  EXPECT_THROW(m.commit(0, legs), InsufficientBalance);
  EXPECT_EQ(m.balance(kP3), Cents{100});
}

TEST(Conservation, AllocationToTenPersons) {
  Ledger l;
  for (std::uint32_t i = 0; i < 10; ++i)
    l.post(0, EventKind::Allocation, AccountId::agency(), AccountId::person(i), Cents::coins(1000));
  EXPECT_EQ(l.balance(AccountId::agency()), Cents::coins(-10000));
  Cents persons;
  for (auto c : l.balances().of_kind(AccountKind::Person)) persons += c;
  EXPECT_EQ(persons, Cents::coins(10000));
  EXPECT_TRUE(conservation_check(l.balances()));
}

TEST(Replay, EmptyStreamIsAllZero) {
  const auto b = replay({});
  EXPECT_EQ(b.total(), Cents{});
  EXPECT_EQ(b, BalanceMap{});
}

TEST(Replay, DetectsGapsAndOverdrafts) {
  std::vector<LedgerEvent> s{{0, 0, EventKind::Allocation, AccountId::agency(), kP3, Cents{10}, ""},
                             {2, 0, EventKind::TripCharge, kP3, AccountId::agency(), Cents{5}, ""}};
  EXPECT_THROW(replay(s), SequenceGap);
  s[1].seq = 1;
  s[1].amount = Cents{11};
  EXPECT_THROW(replay(s), NegativeBalanceAt);
}

// Random valid streams: the incremental appender is the oracle for replay.
TEST(Replay, MatchesIncrementalStateOnRandomStreams) {
  for (std::uint64_t trial = 0; trial < 50; ++trial) {
    Rng rng(trial, StreamTag::Test, 1);
    Ledger l({}, true);
    std::vector<AccountId> accounts{AccountId::agency()};
    for (std::uint32_t i = 0; i < 6; ++i) accounts.push_back(AccountId::person(i));
    for (std::uint32_t i = 0; i < 2; ++i) accounts.push_back(AccountId::employer(i));
    while (l.next_seq() < 200) {
      const AccountId from = accounts[rng.below(accounts.size())];
      const AccountId to = accounts[rng.below(accounts.size())];
      if (from == to) continue;
      const Cents have = from.is_agency() ? Cents::coins(1000) : l.balance(from);
      if (have.value <= 0) continue;
      const Cents amount{1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(have.value)))};
      l.post(0, EventKind::Trade, from, to, amount);
      ASSERT_TRUE(conservation_check(l.balances()));
    }
    const auto a = replay(l.events());
    const auto b = replay(l.events());
    EXPECT_EQ(a, l.balances());
    EXPECT_EQ(a, b);
  }
}

TEST(Ledger, SinkSeesEveryEventInOrder) {
  std::vector<std::uint64_t> seen;
  Ledger l([&](const LedgerEvent& e) { seen.push_back(e.seq); });
  l.post(0, EventKind::Allocation, AccountId::agency(), kP3, Cents{10});
  l.commit(0, {{EventKind::TripCharge, kP3, AccountId::agency(), Cents{4}, ""},
               {EventKind::TripCharge, kP3, AccountId::agency(), Cents{6}, ""}});
  EXPECT_EQ(seen, (std::vector<std::uint64_t>{0, 1, 2}));
  EXPECT_TRUE(l.events().empty());
}

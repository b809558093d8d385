#include <mobcoin/pricing.hpp>
#include <mobcoin/rng.hpp>

#include <gtest/gtest.h>

using namespace mobcoin;

namespace {

// car, bus, walk; rates in coin-cents
PriceSchedule schedule() {
  PriceSchedule s;
  s.set("car", ModeRate{300.0, 0.0, true, true});
  s.set("bus", ModeRate{150.0, 0.0, false, false});
  s.set("walk", ModeRate{-200.0, 0.0, false, false});
  return s;
}

}  // namespace

TEST(TripPrice, BusTenKilometres) {
  const auto s = schedule();
  EXPECT_EQ(trip_price(TripQuery{s.index_of("bus"), 10.0, 30.0, 1, {}}, s), Cents::coins(15));
}

TEST(TripPrice, WalkingEarns) {
  const auto s = schedule();
  EXPECT_EQ(trip_price(TripQuery{s.index_of("walk"), 1.0, 12.0, 1, {}}, s), Cents::coins(-2));
}

TEST(TripPrice, CongestedSharedCar) {
  const auto s = schedule();
  // 300 * 10 * 2 / 2
  EXPECT_EQ(trip_price(TripQuery{s.index_of("car"), 10.0, 20.0, 2, TrafficState{2.0}}, s), Cents::coins(30));
}

TEST(TripPrice, TimeComponentAndRounding) {
  PriceSchedule s;
  s.set("x", ModeRate{0.0, 12.5, false, false});
  EXPECT_EQ(trip_price(TripQuery{0, 0.0, 3.0, 1, {}}, s).value, 38);  // 37.5 rounds away
  s.set("y", ModeRate{0.0, -12.5, false, false});
  EXPECT_EQ(trip_price(TripQuery{1, 0.0, 3.0, 1, {}}, s).value, -38);
}

TEST(TripPrice, CongestionIgnoredWhereNotApplied) {
  const auto s = schedule();
  EXPECT_EQ(trip_price(TripQuery{s.index_of("bus"), 10.0, 30.0, 1, TrafficState{2.5}}, s), Cents::coins(15));
}

TEST(TripPrice, Errors) {
  const auto s = schedule();
  EXPECT_THROW(s.index_of("tram"), UnknownMode);
  EXPECT_THROW(trip_price(TripQuery{7, 1.0, 1.0, 1, {}}, s), UnknownMode);
  EXPECT_THROW(trip_price(TripQuery{0, -1.0, 1.0, 1, {}}, s), std::invalid_argument);
  EXPECT_THROW(trip_price(TripQuery{0, 1.0, 1.0, 0, {}}, s), std::invalid_argument);
}

TEST(TripPrice, Properties) {
  const auto s = schedule();
  Rng rng(7, StreamTag::Test, 0);
  for (int i = 0; i < 2000; ++i) {
    const ModeIndex m = rng.below(3);
    const TripQuery q{m, rng.uniform(0.0, 40.0), rng.uniform(0.0, 90.0), 1, TrafficState{rng.uniform(1.0, 3.0)}};
    const Cents p = trip_price(q, s);
    EXPECT_EQ(p, trip_price(q, s));
    TripQuery longer = q;
    longer.distance_km *= rng.uniform(1.0, 4.0);
    EXPECT_GE(std::abs(trip_price(longer, s).value), std::abs(p.value));
    TripQuery shared = q;
    shared.occupancy = 2;
    EXPECT_LE(std::abs(trip_price(shared, s).value), std::abs(p.value));
  }
}

TEST(DailyCap, PartialHeadroom) {
  EarnCapState st{AccountId::person(0), 0, Cents::coins(8)};
  EXPECT_EQ(apply_daily_cap(st, Cents::coins(5), Cents::coins(10)), Cents::coins(2));
  EXPECT_EQ(st.earned_today, Cents::coins(10));
}

TEST(DailyCap, Saturated) {
  EarnCapState st{AccountId::person(0), 0, Cents::coins(10)};
  EXPECT_EQ(apply_daily_cap(st, Cents::coins(3), Cents::coins(10)), Cents{});
}

TEST(DailyCap, BelowCap) {
  EarnCapState st{AccountId::person(0), 0, Cents{}};
  EXPECT_EQ(apply_daily_cap(st, Cents::coins(5), Cents::coins(10)), Cents::coins(5));
}

TEST(DailyCap, ResetsOnNewDay) {
  EarnCapState st{AccountId::person(0), 0, Cents::coins(10)};
  st.roll_to(0);
  EXPECT_EQ(st.earned_today, Cents::coins(10));
  st.roll_to(1);
  EXPECT_EQ(apply_daily_cap(st, Cents::coins(4), Cents::coins(10)), Cents::coins(4));
  EXPECT_THROW(apply_daily_cap(st, Cents{-1}, Cents::coins(10)), std::invalid_argument);
}

TEST(DailyCap, RandomInterleavingsNeverExceedCap) {
  Rng rng(11, StreamTag::Test, 0);
  const Cents e_max = Cents::coins(5);
  for (int trial = 0; trial < 200; ++trial) {
    EarnCapState st{AccountId::person(0), 0, Cents{}};
    Cents credited_today;
    std::int32_t day = 0;
    for (int k = 0; k < 50; ++k) {
      if (rng.bernoulli(0.1)) {
        ++day;
        credited_today = Cents{};
      }
      st.roll_to(day);
      credited_today += apply_daily_cap(st, Cents{static_cast<std::int64_t>(rng.below(400))}, e_max);
      ASSERT_LE(credited_today, e_max);
    }
  }
}

#include <mobcoin/units.hpp>

#include <gtest/gtest.h>

using namespace mobcoin;

TEST(Cents, WholeCoinsAreHundredths) {
  EXPECT_EQ(Cents::coins(15).value, 1500);
  EXPECT_EQ(format_coins(Cents{1500}), "15.00");
  EXPECT_EQ(format_coins(Cents{-205}), "-2.05");
  EXPECT_EQ(format_coins(Cents{7}), "0.07");
}

TEST(Cents, ArithmeticAndOrdering) {
  Cents a = Cents::coins(3);
  a += Cents{50};
  EXPECT_EQ(a.value, 350);
  EXPECT_EQ((a - Cents{400}).value, -50);
  EXPECT_LT(Cents{1}, Cents{2});
  EXPECT_EQ(min(Cents{4}, Cents{-4}).value, -4);
  EXPECT_EQ(max(Cents{4}, Cents{-4}).value, 4);
}

TEST(Rounding, HalvesGoAwayFromZero) {
  EXPECT_EQ(round_half_away(2.5), 3);
  EXPECT_EQ(round_half_away(-2.5), -3);
  EXPECT_EQ(round_half_away(2.4999), 2);
  EXPECT_EQ(round_half_away(-0.5), -1);
}

TEST(FiatValue, TicksTimesCents) {
  // 10.00 coins at 2 fiat per coin (200 fiat-cents = 20000 ticks) is 2000 fiat-cents.
  EXPECT_EQ(fiat_value(Cents::coins(10), PriceTicks::fiat_cents(200)), 2000);
  EXPECT_EQ(fiat_value(Cents::coins(10), PriceTicks::fiat_cents(200), 1.1), 2200);
  // 4.5 fiat-cents per coin
  EXPECT_EQ(fiat_value(Cents::coins(10), PriceTicks{450}), 45);
}

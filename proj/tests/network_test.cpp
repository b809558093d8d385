#include <mobcoin/network.hpp>
#include <mobcoin/rng.hpp>

#include <gtest/gtest.h>

using namespace mobcoin;

namespace {

// car (congestible, alpha 1, beta 4, capacity 1000), walk (not congestible)
NetworkState net() {
  NetworkState n;
  n.c_max = 3.0;
  n.modes.push_back(ModeSupply{20.0, 1000.0, 1.0, 1.0, 1.0, 4.0, true, true});
  n.modes.push_back(ModeSupply{60.0, 0.0, 1.0, 1.0, 0.15, 4.0, false, true});
  return n;
}

}  // namespace

TEST(CongestedTime, FreeFlowAtZeroDemand) {
  auto n = net();
  n.modes[0].travel_time_factor = 0.9;
  EXPECT_DOUBLE_EQ(congested_time(n, 0, 0.0), 18.0);
  EXPECT_DOUBLE_EQ(free_flow_time(n, 0), 18.0);
}

TEST(CongestedTime, DoublesAtCapacity) {
  EXPECT_DOUBLE_EQ(congested_time(net(), 0, 1000.0), 40.0);
}

TEST(CongestedTime, WalkIgnoresDemand) {
  EXPECT_DOUBLE_EQ(congested_time(net(), 1, 1e6), 60.0);
}

TEST(CongestedTime, CapacityFactorScalesCapacity) {
  auto n = net();
  n.modes[0].capacity_factor = 2.0;
  // V/C = 0.5 -> 1 + 0.0625
  EXPECT_DOUBLE_EQ(congested_time(n, 0, 1000.0), 20.0 * 1.0625);
}

TEST(TrafficState, Multiplier) {
  EXPECT_DOUBLE_EQ(traffic_state(net(), 0, 0.0).congestion_multiplier, 1.0);
  EXPECT_DOUBLE_EQ(traffic_state(net(), 0, 1000.0).congestion_multiplier, 2.0);
  EXPECT_DOUBLE_EQ(traffic_state(net(), 0, 5000.0).congestion_multiplier, 3.0);
}

TEST(CongestedTime, MonotoneAndContinuous) {
  const auto n = net();
  Rng rng(4, StreamTag::Test, 0);
  double prev_demand = 0.0, prev_time = congested_time(n, 0, 0.0);
  for (int i = 0; i < 2000; ++i) {
    const double d = prev_demand + rng.uniform(0.0, 5.0);
    const double t = congested_time(n, 0, d);
    EXPECT_GE(t, prev_time);
    const double m = traffic_state(n, 0, d).congestion_multiplier;
    EXPECT_GE(m, 1.0);
    EXPECT_LE(m, n.c_max);
    prev_demand = d;
    prev_time = t;
  }
  // Small demand steps give small time steps.
  EXPECT_NEAR(congested_time(n, 0, 800.0), congested_time(n, 0, 800.0 + 1e-6), 1e-6);
}

TEST(Network, Validation) {
  auto n = net();
  n.validate();
  n.modes[0].capacity = 0.0;
  EXPECT_THROW(n.validate(), std::invalid_argument);
  n = net();
  n.c_max = 0.5;
  EXPECT_THROW(n.validate(), std::invalid_argument);
  EXPECT_THROW((void)net().at(5), UnknownMode);
}

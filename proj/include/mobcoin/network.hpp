#pragma once

// Per-mode supply model for one representative origin-destination relation.
//
// Congested travel time, volume-delay form:
//   t = base_time * travel_time_factor * (1 + alpha * (demand / (capacity * capacity_factor))^beta)
// for congestible modes; t = base_time * travel_time_factor otherwise.

#include <mobcoin/pricing.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace mobcoin {

struct ModeSupply {
  double base_time{0.0};  // minutes, free flow, reference relation
  double capacity{0.0};   // trips per day
  double travel_time_factor{1.0};
  double capacity_factor{1.0};
  double alpha{0.15};
  double beta{4.0};
  bool congestible{false};
  bool available{true};
};

struct NetworkState {
  std::vector<ModeSupply> modes;  // indexed like the scenario mode list
  double c_max{3.0};              // cap on the pricing congestion multiplier

  const ModeSupply& at(ModeIndex m) const {
    if (m >= modes.size()) throw UnknownMode("#" + std::to_string(m));
    return modes[m];
  }
  ModeSupply& at(ModeIndex m) {
    if (m >= modes.size()) throw UnknownMode("#" + std::to_string(m));
    return modes[m];
  }

  void validate() const {
    if (!(c_max >= 1.0)) throw std::invalid_argument("c_max must be >= 1");
    for (const auto& s : modes) {
      if (!(s.travel_time_factor > 0.0) || !(s.capacity_factor > 0.0))
        throw std::invalid_argument("network factors must be positive");
      if (s.congestible && !(s.capacity > 0.0))
        throw std::invalid_argument("congestible modes need positive capacity");
      if (s.base_time < 0.0 || s.alpha < 0.0 || s.beta < 0.0)
        throw std::invalid_argument("negative network parameter");
    }
  }
};

/// Congested over free-flow time for a mode at a daily demand (>= 1).
inline double delay_ratio(const ModeSupply& s, double demand) {
  if (!s.congestible || demand <= 0.0) return 1.0;
  const double vc = demand / (s.capacity * s.capacity_factor);
  return 1.0 + s.alpha * std::pow(vc, s.beta);
}

inline double free_flow_time(const NetworkState& net, ModeIndex m) {
  const auto& s = net.at(m);
  return s.base_time * s.travel_time_factor;
}

inline double congested_time(const NetworkState& net, ModeIndex m, double demand) {
  const auto& s = net.at(m);
  return s.base_time * s.travel_time_factor * delay_ratio(s, demand);
}

/// Pricing input: congested / free-flow time, clamped to [1, c_max].
inline TrafficState traffic_state(const NetworkState& net, ModeIndex m, double demand) {
  return TrafficState{std::clamp(delay_ratio(net.at(m), demand), 1.0, net.c_max)};
}

}  // namespace mobcoin

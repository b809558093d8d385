#pragma once

// Signed per-trip coin prices. Positive prices are charges, negative prices are
// earnings for active modes.
//
// Trip price:
//   price = round_half_away((rate_dist * distance * c + rate_time * duration) / o)
// where c is the congestion multiplier if the mode is congestion-priced (else 1)
// and o is the occupancy if the mode splits its price across occupants (else 1).

#include <mobcoin/ledger.hpp>
#include <mobcoin/units.hpp>

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mobcoin {

enum class ModeKind : std::uint8_t { Car, Bus, Rail, Bike, Walk, Custom };

inline constexpr std::string_view to_string(ModeKind k) {
  constexpr std::string_view names[] = {"Car", "Bus", "Rail", "Bike", "Walk", "Custom"};
  return names[static_cast<std::size_t>(k)];
}

using ModeIndex = std::size_t;

struct Mode {
  std::string id;
  ModeKind kind{ModeKind::Custom};
  double emission_factor{0.0};  // g CO2 per person-km, reporting only
};

struct UnknownMode : std::invalid_argument {
  explicit UnknownMode(const std::string& id) : std::invalid_argument("unknown mode: " + id) {}
};

struct TrafficState {
  double congestion_multiplier{1.0};
};

struct ModeRate {
  double rate_dist{0.0};  // coin-cents per km, signed
  double rate_time{0.0};  // coin-cents per minute, signed
  bool congestion_applies{false};
  bool occupancy_divides{false};

  bool earning() const { return rate_dist < 0.0 || rate_time < 0.0; }
  bool charging() const { return rate_dist > 0.0 || rate_time > 0.0; }
};

/// Per-mode rates, indexed like the scenario's mode list.
struct PriceSchedule {
  std::vector<std::string> mode_ids;
  std::vector<ModeRate> rates;

  ModeIndex index_of(std::string_view id) const {
    const auto it = std::find(mode_ids.begin(), mode_ids.end(), id);
    if (it == mode_ids.end()) throw UnknownMode(std::string(id));
    return static_cast<ModeIndex>(it - mode_ids.begin());
  }

  const ModeRate& at(ModeIndex m) const {
    if (m >= rates.size()) throw UnknownMode("#" + std::to_string(m));
    return rates[m];
  }

  void set(std::string id, ModeRate r) {
    const auto it = std::find(mode_ids.begin(), mode_ids.end(), id);
    if (it != mode_ids.end()) {
      rates[static_cast<std::size_t>(it - mode_ids.begin())] = r;
      return;
    }
    mode_ids.push_back(std::move(id));
    rates.push_back(r);
  }
};

struct TripQuery {
  ModeIndex mode{0};
  double distance_km{0.0};
  double duration_min{0.0};
  int occupancy{1};
  TrafficState traffic;
};

/// Signed coin price of a trip; positive = charge, negative = earn.
inline Cents trip_price(const TripQuery& q, const PriceSchedule& s) {
  const ModeRate& r = s.at(q.mode);
  if (q.distance_km < 0.0 || q.duration_min < 0.0) throw std::invalid_argument("negative trip extent");
  if (q.occupancy < 1) throw std::invalid_argument("occupancy must be >= 1");
  const double c = r.congestion_applies ? q.traffic.congestion_multiplier : 1.0;
  const double o = r.occupancy_divides ? static_cast<double>(q.occupancy) : 1.0;
  return Cents{round_half_away((r.rate_dist * q.distance_km * c + r.rate_time * q.duration_min) / o)};
}

struct EarnCapState {
  AccountId agent;
  std::int32_t day{0};
  Cents earned_today;

  /// Moves the state to `d`, resetting the daily total on a new day.
  void roll_to(std::int32_t d) {
    if (d != day) {
      day = d;
      earned_today = Cents{};
    }
  }
};

/// Credits at most the remaining headroom under the daily earning threshold.
/// Saturates silently; callers compare the result with `earn` to detect it.
inline Cents apply_daily_cap(EarnCapState& state, Cents earn, Cents e_max) {
  if (earn.value < 0) throw std::invalid_argument("earn must be non-negative");
  const Cents headroom = max(Cents{}, e_max - state.earned_today);
  const Cents credited = min(earn, headroom);
  state.earned_today += credited;
  return credited;
}

}  // namespace mobcoin

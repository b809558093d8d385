#pragma once

// The MobilityCoin Agency: yearly allocation, supply steering toward a target
// modal split, and year-end expiry of personal balances.
//
// Supply update:
//   next = prev * (1 - gain * (observed[controlled] - target[controlled]))
// clamped to [prev * (1 - max_rel_change), prev * (1 + max_rel_change)].

#include <mobcoin/ledger.hpp>
#include <mobcoin/market.hpp>
#include <mobcoin/pricing.hpp>

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mobcoin {

struct AllocationPolicy {
  Cents base_per_person{Cents::coins(1000)};
  Cents low_access_bonus{};
  int low_access_threshold{0};  // bonus applies below this many available modes
  int period_days{365};
  bool expire_at_year_end{true};
  double reserve_fraction{0.05};  // agency reserve at year start, share of year_total

  void validate() const {
    if (base_per_person.value < 0 || low_access_bonus.value < 0)
      throw std::invalid_argument("allocation amounts must be non-negative");
    if (period_days < 1) throw std::invalid_argument("allocation period must be >= 1 day");
    if (reserve_fraction < 0.0) throw std::invalid_argument("reserve_fraction must be >= 0");
  }
};

inline Cents entitlement(std::size_t available_modes, const AllocationPolicy& policy) {
  const bool low_access = static_cast<int>(available_modes) < policy.low_access_threshold;
  return policy.base_per_person + (low_access ? policy.low_access_bonus : Cents{});
}

/// Rescales entitlements so they sum exactly to year_total (largest
/// remainder in coin-cents, earlier persons win ties).
inline std::vector<Cents> rescale_entitlements(std::span<const Cents> entitlements, Cents year_total) {
  std::vector<std::int64_t> w(entitlements.size());
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = entitlements[i].value;
    sum += w[i];
  }
  std::vector<Cents> out(w.size());
  if (sum == 0) return out;
  if (sum == year_total.value) {
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = entitlements[i];
    return out;
  }
  // largest_remainder needs total <= sum(weights); scale up by whole multiples first.
  const std::int64_t whole = year_total.value / sum;
  const auto parts = largest_remainder(year_total.value - whole * sum, w);
  for (std::size_t i = 0; i < w.size(); ++i) out[i] = Cents{w[i] * whole + parts[i]};
  return out;
}

/// Allocation legs from the Agency to every person with a positive share.
/// `modes_per_person[i]` is the number of modes available to person i.
inline std::vector<Transfer> allocate(std::span<const std::size_t> modes_per_person, const AllocationPolicy& policy,
                                      Cents year_total, int year) {
  std::vector<Cents> ent(modes_per_person.size());
  for (std::size_t i = 0; i < ent.size(); ++i) ent[i] = entitlement(modes_per_person[i], policy);
  const auto shares = rescale_entitlements(ent, year_total);
  std::vector<Transfer> legs;
  legs.reserve(shares.size());
  const std::string memo = "year:" + std::to_string(year);
  for (std::size_t i = 0; i < shares.size(); ++i)
    if (shares[i].value > 0)
      legs.push_back(Transfer{EventKind::Allocation, AccountId::agency(),
                              AccountId::person(static_cast<std::uint32_t>(i)), shares[i], memo});
  return legs;
}

/// Sum of unscaled entitlements; the first year's allocation total.
inline Cents total_entitlement(std::span<const std::size_t> modes_per_person, const AllocationPolicy& policy) {
  Cents sum;
  for (auto n : modes_per_person) sum += entitlement(n, policy);
  return sum;
}

struct SupplyController {
  std::vector<double> target_split;  // per mode, sums to 1
  double gain{0.0};
  double max_rel_change{0.1};
  ModeIndex controlled_mode{0};

  void validate() const {
    double sum = 0.0;
    for (double s : target_split) {
      if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("target shares must lie in [0,1]");
      sum += s;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("target shares must sum to 1");
    if (!(gain >= 0.0)) throw std::invalid_argument("controller gain must be >= 0");
    if (!(max_rel_change > 0.0 && max_rel_change <= 1.0))
      throw std::invalid_argument("max_rel_change must be in (0,1]");
    if (controlled_mode >= target_split.size()) throw std::invalid_argument("controlled mode out of range");
  }
};

/// Next year's total coin supply from the observed modal split.
inline Cents adjust_supply(std::span<const double> observed_split, const SupplyController& c, Cents prev_total) {
  if (c.controlled_mode >= observed_split.size() || c.controlled_mode >= c.target_split.size())
    throw std::invalid_argument("controlled mode out of range");
  const double gap = observed_split[c.controlled_mode] - c.target_split[c.controlled_mode];
  if (gap == 0.0) return prev_total;
  const double prev = static_cast<double>(prev_total.value);
  const double next = prev * (1.0 - c.gain * gap);
  const double lo = prev * (1.0 - c.max_rel_change);
  const double hi = prev * (1.0 + c.max_rel_change);
  return Cents{round_half_away(std::clamp(next, lo, hi))};
}

/// Transfers every positive person balance back to the Agency.
inline std::vector<Transfer> year_end_expiry(const BalanceMap& balances, int year) {
  std::vector<Transfer> legs;
  const auto persons = balances.of_kind(AccountKind::Person);
  const std::string memo = "year:" + std::to_string(year);
  for (std::size_t i = 0; i < persons.size(); ++i)
    if (persons[i].value > 0)
      legs.push_back(Transfer{EventKind::Expiry, AccountId::person(static_cast<std::uint32_t>(i)),
                              AccountId::agency(), persons[i], memo});
  return legs;
}

}  // namespace mobcoin

#pragma once

// Year-end infrastructure voting weighted by remaining coin balances.
//
// Split voting: score(m) = sum over ballots of weight * fraction(m);
// measures are ranked by score (descending, ties by ascending id) and taken
// greedily while they fit in the remaining budget. Measures with no votes are
// never selected. Fractions are integers in parts per million and weights are
// integer coin-cents, so every score is exact.

#include <mobcoin/ledger.hpp>
#include <mobcoin/network.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mobcoin {

inline constexpr std::int64_t kFractionOne = 1'000'000;

enum class EffectParam : std::uint8_t { TravelTimeFactor, CapacityFactor, Availability };

struct MeasureEffect {
  ModeIndex mode{0};
  EffectParam param{EffectParam::TravelTimeFactor};
  double factor{1.0};     // multiplicative parameters
  bool available{true};   // Availability
};

struct Measure {
  int id{0};
  std::string label;
  std::int64_t cost{0};
  std::vector<MeasureEffect> effects;
};

struct Bundle {
  int id{0};
  std::vector<int> measures;
};

struct Ballot {
  AccountId voter;
  std::int64_t weight{0};  // coin-cents
  std::vector<std::pair<int, std::int64_t>> split;  // measure id -> fraction in ppm
  std::optional<int> bundle;
};

enum class WeightRule : std::uint8_t { Linear, SquareRoot };

/// Voting weight per person: the non-negative year-end balance (Linear), or
/// its rounded square root in coin-cents (SquareRoot, a config hook).
inline std::vector<std::int64_t> voting_weights(const BalanceMap& balances, WeightRule rule = WeightRule::Linear) {
  const auto persons = balances.of_kind(AccountKind::Person);
  std::vector<std::int64_t> w(persons.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    const std::int64_t b = std::max<std::int64_t>(0, persons[i].value);
    w[i] = rule == WeightRule::Linear ? b : round_half_away(std::sqrt(static_cast<double>(b)));
  }
  return w;
}

struct ScoredMeasure {
  int id{0};
  __int128 score{0};  // weight * ppm
  bool selected{false};
};

struct SplitTally {
  std::vector<ScoredMeasure> ranking;  // in rank order
  std::vector<int> selected;           // ascending id
};

/// Score as coin-cents with six decimals, for reports.
inline std::string format_score(__int128 score) {
  const auto whole = static_cast<std::int64_t>(score / kFractionOne);
  auto frac = std::to_string(static_cast<std::int64_t>(score % kFractionOne));
  frac.insert(0, 6 - frac.size(), '0');
  return std::to_string(whole) + "." + frac;
}

inline SplitTally tally_split(std::span<const Ballot> ballots, std::span<const Measure> measures, std::int64_t budget) {
  SplitTally t;
  t.ranking.reserve(measures.size());
  for (const auto& m : measures) t.ranking.push_back(ScoredMeasure{m.id, 0, false});
  for (const auto& b : ballots) {
    if (b.weight <= 0) continue;
    std::int64_t total = 0;
    for (const auto& [id, f] : b.split) {
      if (f < 0 || f > kFractionOne) throw std::invalid_argument("vote fraction out of range");
      total += f;
      for (auto& s : t.ranking)
        if (s.id == id) s.score += static_cast<__int128>(b.weight) * f;
    }
    if (total > kFractionOne) throw std::invalid_argument("vote fractions exceed 1");
  }
  std::sort(t.ranking.begin(), t.ranking.end(), [](const ScoredMeasure& a, const ScoredMeasure& b) {
    return a.score != b.score ? a.score > b.score : a.id < b.id;
  });
  std::int64_t spent = 0;
  for (auto& s : t.ranking) {
    if (s.score <= 0) break;
    const auto it = std::find_if(measures.begin(), measures.end(), [&](const Measure& m) { return m.id == s.id; });
    if (spent + it->cost > budget) continue;
    spent += it->cost;
    s.selected = true;
    t.selected.push_back(s.id);
  }
  std::sort(t.selected.begin(), t.selected.end());
  return t;
}

/// Plurality by total weight; ties go to the lowest bundle id.
inline std::optional<int> tally_bundle(std::span<const Ballot> ballots, std::span<const Bundle> bundles) {
  if (bundles.empty()) return std::nullopt;
  std::vector<std::pair<int, __int128>> totals;
  for (const auto& b : bundles) totals.emplace_back(b.id, 0);
  for (const auto& b : ballots) {
    if (b.weight <= 0 || !b.bundle) continue;
    for (auto& [id, sum] : totals)
      if (id == *b.bundle) sum += b.weight;
  }
  const auto best = std::min_element(totals.begin(), totals.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  return best->first;
}

/// Applies every effect of the selected measures. Factors on the same
/// parameter are multiplied in ascending order, and for availability any
/// enabling effect wins over disabling ones, so the result is bit-identical
/// for every ordering of `selected`.
inline NetworkState apply_measures(NetworkState net, std::span<const Measure> selected) {
  std::vector<std::vector<double>> time_f(net.modes.size()), cap_f(net.modes.size());
  std::set<ModeIndex> enable, disable;
  for (const auto& m : selected) {
    for (const auto& e : m.effects) {
      (void)net.at(e.mode);
      switch (e.param) {
        case EffectParam::TravelTimeFactor:
          time_f[e.mode].push_back(e.factor);
          break;
        case EffectParam::CapacityFactor:
          cap_f[e.mode].push_back(e.factor);
          break;
        case EffectParam::Availability:
          (e.available ? enable : disable).insert(e.mode);
          break;
      }
    }
  }
  for (ModeIndex i = 0; i < net.modes.size(); ++i) {
    std::sort(time_f[i].begin(), time_f[i].end());
    std::sort(cap_f[i].begin(), cap_f[i].end());
    for (double f : time_f[i]) net.modes[i].travel_time_factor *= f;
    for (double f : cap_f[i]) net.modes[i].capacity_factor *= f;
  }
  for (auto m : disable) net.at(m).available = false;
  for (auto m : enable) net.at(m).available = true;
  return net;
}

}  // namespace mobcoin

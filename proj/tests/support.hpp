#pragma once

// Shared fixtures and independent oracles for the unit and acceptance suites.
// The oracles are deliberately naive: linear scans, subset enumeration and
// long-double arithmetic, written without reference to the library code.

#include <mobcoin/config.hpp>
#include <mobcoin/market.hpp>
#include <mobcoin/rng.hpp>

#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace mobcoin::testing {

inline std::filesystem::path source_dir() { return MOBCOIN_SOURCE_DIR; }

inline std::filesystem::path reference_path() { return source_dir() / "scenarios" / "reference.json"; }

inline nlohmann::json reference_json() {
  std::ifstream in(reference_path());
  return nlohmann::json::parse(in);
}

inline ScenarioConfig reference_config() { return load_config(reference_path().string()); }

/// Reference scenario with a different population size and seed.
inline ScenarioConfig scaled_reference(std::size_t persons, std::uint64_t seed) {
  auto j = reference_json();
  j["population"]["count"] = persons;
  j["seed"] = seed;
  return parse_config(j);
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("mobcoin_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

namespace oracle {

struct Clearing {
  std::int64_t price{0};
  std::int64_t volume{0};
  std::vector<std::int64_t> filled;  // per order, input order
  std::vector<std::int64_t> fee;
};

inline std::int64_t demand_at(const std::vector<Order>& book, std::int64_t p) {
  std::int64_t d = 0;
  for (const auto& o : book)
    if (o.side == Side::Buy && o.limit.value >= p) d += o.quantity.value;
  return d;
}

inline std::int64_t supply_at(const std::vector<Order>& book, std::int64_t p) {
  std::int64_t s = 0;
  for (const auto& o : book)
    if (o.side == Side::Sell && o.limit.value <= p) s += o.quantity.value;
  return s;
}

/// Splits `total` over `weights` by enumerating which entries round up and
/// keeping the split with the smallest squared deviation from the exact
/// quotas; among equals, the one rounding up the lowest indices wins. Only
/// meant for a handful of entries.
inline std::vector<std::int64_t> apportion(std::int64_t total, const std::vector<std::int64_t>& weights) {
  const std::size_t n = weights.size();
  std::vector<std::int64_t> best(n, 0);
  long double wsum = 0;
  for (auto w : weights) wsum += static_cast<long double>(w);
  if (total == 0 || wsum == 0) return best;
  std::vector<long double> quota(n);
  std::vector<std::int64_t> lo(n);
  std::int64_t base = 0;
  for (std::size_t i = 0; i < n; ++i) {
    // exact floor via integer arithmetic on 128 bits
    const __int128 num = static_cast<__int128>(total) * weights[i];
    __int128 den = 0;
    for (auto w : weights) den += w;
    lo[i] = static_cast<std::int64_t>(num / den);
    quota[i] = static_cast<long double>(total) * static_cast<long double>(weights[i]) / wsum;
    base += lo[i];
  }
  const std::int64_t extra = total - base;
  long double best_err = -1;
  std::uint64_t best_mask = 0;
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    if (std::popcount(mask) != extra) continue;
    long double err = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const long double x = static_cast<long double>(lo[i] + ((mask >> i) & 1));
      err += (x - quota[i]) * (x - quota[i]);
    }
    // Lexicographic preference for low indices: compare reversed bit order.
    const auto prefer = [&](std::uint64_t a, std::uint64_t b) {
      for (std::size_t i = 0; i < n; ++i) {
        const bool ai = (a >> i) & 1, bi = (b >> i) & 1;
        if (ai != bi) return ai;
      }
      return false;
    };
    const long double eps = 1e-12L * (1 + static_cast<long double>(total));
    if (best_err < 0 || err < best_err - eps || (std::fabs(err - best_err) <= eps && prefer(mask, best_mask))) {
      best_err = err;
      best_mask = mask;
    }
  }
  for (std::size_t i = 0; i < n; ++i) best[i] = lo[i] + static_cast<std::int64_t>((best_mask >> i) & 1);
  return best;
}

/// Call auction by exhaustive evaluation of every candidate price (each
/// order limit plus floor and cap), as a direct transcription of the rules:
/// maximum volume, then closest to the previous price, then lowest price.
inline Clearing clear(const std::vector<Order>& book, const MarketRules& rules, PriceTicks prev) {
  std::vector<std::int64_t> cands{rules.price_floor.value, rules.price_cap.value};
  for (const auto& o : book) cands.push_back(o.limit.value);
  const std::int64_t anchor = std::min(std::max(prev.value, rules.price_floor.value), rules.price_cap.value);

  Clearing c;
  c.price = anchor;
  c.filled.assign(book.size(), 0);
  c.fee.assign(book.size(), 0);
  for (std::int64_t p : cands) {
    const std::int64_t v = std::min(demand_at(book, p), supply_at(book, p));
    if (v == 0) continue;
    const auto dist = [&](std::int64_t q) { return q > anchor ? q - anchor : anchor - q; };
    const bool better = v > c.volume || (v == c.volume && (dist(p) < dist(c.price) ||
                                                           (dist(p) == dist(c.price) && p < c.price)));
    if (better) {
      c.volume = v;
      c.price = p;
    }
  }
  if (c.volume == 0) return c;

  for (Side side : {Side::Buy, Side::Sell}) {
    std::vector<std::size_t> idx;
    std::vector<std::int64_t> q;
    for (std::size_t i = 0; i < book.size(); ++i) {
      const auto& o = book[i];
      if (o.side != side) continue;
      if (side == Side::Buy ? o.limit.value < c.price : o.limit.value > c.price) continue;
      idx.push_back(i);
      q.push_back(o.quantity.value);
    }
    bool whole = c.volume % 100 == 0;
    for (auto x : q) whole = whole && x % 100 == 0;
    std::vector<std::int64_t> units = q;
    if (whole)
      for (auto& u : units) u /= 100;
    const auto parts = apportion(whole ? c.volume / 100 : c.volume, units);
    for (std::size_t k = 0; k < idx.size(); ++k) c.filled[idx[k]] = parts[k] * (whole ? 100 : 1);
  }

  const auto fee_total = static_cast<std::int64_t>(std::llround(rules.fee_rate * static_cast<double>(c.volume)));
  std::vector<std::size_t> sellers;
  std::vector<std::int64_t> fills;
  for (std::size_t i = 0; i < book.size(); ++i)
    if (book[i].side == Side::Sell && c.filled[i] > 0) {
      sellers.push_back(i);
      fills.push_back(c.filled[i]);
    }
  const auto fee_parts = apportion(fee_total, fills);
  for (std::size_t k = 0; k < sellers.size(); ++k) c.fee[sellers[k]] = fee_parts[k];
  return c;
}

/// Random book of 1..max_orders orders with limits inside the band. Limits
/// are drawn from a coarse grid so that ties between candidates are common.
inline std::vector<Order> random_book(Rng& rng, const MarketRules& rules, std::size_t max_orders) {
  const std::size_t n = 1 + rng.below(max_orders);
  std::vector<Order> book;
  const std::int64_t span = rules.price_cap.value - rules.price_floor.value;
  for (std::size_t i = 0; i < n; ++i) {
    Order o;
    o.id = i;
    o.account = AccountId::person(static_cast<std::uint32_t>(i));
    o.side = rng.bernoulli(0.5) ? Side::Buy : Side::Sell;
    const bool whole = rng.bernoulli(0.5);
    o.quantity = whole ? Cents::coins(1 + static_cast<std::int64_t>(rng.below(20)))
                       : Cents{1 + static_cast<std::int64_t>(rng.below(2000))};
    o.limit = PriceTicks{rules.price_floor.value + span * static_cast<std::int64_t>(rng.below(9)) / 8};
    book.push_back(o);
  }
  return book;
}

/// Closed-form multinomial logit without the max-shift, in long double.
inline std::vector<long double> logit(const std::vector<double>& u, double mu) {
  long double sum = 0;
  std::vector<long double> e(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    e[i] = std::exp(static_cast<long double>(mu) * static_cast<long double>(u[i]));
    sum += e[i];
  }
  for (auto& x : e) x /= sum;
  return e;
}

}  // namespace oracle
}  // namespace mobcoin::testing

#pragma once

// Regulated MobilityCoin market: a periodic uniform-price call auction.
//
// Clearing:
//   * candidate prices are every order limit plus the band edges [floor, cap]
//   * demand(p) = sum of buy quantities with limit >= p
//     supply(p) = sum of sell quantities with limit <= p
//   * the clearing price maximizes min(demand, supply); ties go to the price
//     closest to the previous clearing price, then to the lower price
//   * the long side is rationed pro-rata by quantity with largest-remainder
//     rounding (ties by ascending order id)
//   * the transaction fee round(fee_rate * volume) is paid in coins by sellers
//     to the Agency, split pro-rata over their fills

#include <mobcoin/ledger.hpp>
#include <mobcoin/units.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mobcoin {

enum class Side : std::uint8_t { Buy, Sell };

struct Order {
  std::uint64_t id{0};
  AccountId account;
  Side side{Side::Buy};
  Cents quantity;
  PriceTicks limit;
  std::int32_t day{0};

  bool operator==(const Order&) const = default;
};

struct MarketRules {
  PriceTicks price_floor{PriceTicks::fiat_cents(1)};
  PriceTicks price_cap{PriceTicks::fiat_cents(1000)};
  Cents buy_limit{Cents::coins(1000)};
  Cents sell_limit{Cents::coins(1000)};
  double fee_rate{0.0};
  double penalty_rate{0.0};
  int session_every{1};

  void validate() const {
    if (price_floor.value <= 0) throw std::invalid_argument("price_floor must be positive");
    if (price_floor > price_cap) throw std::invalid_argument("price_floor exceeds price_cap");
    if (buy_limit.value < 0 || sell_limit.value < 0) throw std::invalid_argument("negative quantity limit");
    if (!(fee_rate >= 0.0 && fee_rate < 1.0)) throw std::invalid_argument("fee_rate must be in [0,1)");
    if (!(penalty_rate >= 0.0)) throw std::invalid_argument("penalty_rate must be >= 0");
    if (session_every < 1) throw std::invalid_argument("session_every must be >= 1");
  }

  PriceTicks clamp(PriceTicks p) const { return std::clamp(p, price_floor, price_cap); }
};

struct MarketError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnknownAccount : MarketError {
  explicit UnknownAccount(AccountId a) : MarketError("unknown account " + a.to_string()) {}
};

struct UnbackedSell : MarketError {
  UnbackedSell(AccountId a, Cents available, Cents needed)
      : MarketError("unbacked sell from " + a.to_string() + ": available " + format_coins(available) +
                    ", needed " + format_coins(needed)) {}
};

struct EmptyAgencyReserve : MarketError {
  EmptyAgencyReserve(Cents reserve, Cents shortfall)
      : MarketError("agency reserve " + format_coins(reserve) + " cannot cover shortfall " +
                    format_coins(shortfall)) {}
};

/// Worst-case coin fee a seller can be charged for selling `q`.
inline Cents fee_headroom(Cents q, double fee_rate) {
  if (fee_rate <= 0.0) return Cents{};
  // Largest-remainder fee shares never exceed ceil(fee_rate * fill) + 1 cent.
  return Cents{static_cast<std::int64_t>(std::ceil(fee_rate * static_cast<double>(q.value))) + 1};
}

/// Orders collected for one session, with per-account session totals and
/// reserved sell backing.
class OrderBook {
 public:
  /// Coins an account can commit to selling (balance for persons, reserve
  /// for the Agency). Returns nullopt for accounts that do not exist.
  using Backing = std::function<std::optional<Cents>(AccountId)>;

  const std::vector<Order>& orders() const { return orders_; }
  bool empty() const { return orders_.empty(); }
  std::uint64_t next_id() const { return next_id_; }

  Cents bought(AccountId a) const { return lookup(buy_totals_, a); }
  Cents sold(AccountId a) const { return lookup(sell_totals_, a); }
  Cents reserved(AccountId a) const { return lookup(reserved_, a); }

  /// Validates, clips and clamps an order and adds it to the book. Returns
  /// nullopt when the account's session limit leaves nothing to trade. The
  /// Agency is exempt from per-account quantity limits.
  std::optional<Order> submit(Order order, const MarketRules& rules, const Backing& backing) {
    if (order.quantity.value <= 0) throw std::invalid_argument("order quantity must be positive");
    const std::optional<Cents> available = backing(order.account);
    if (!available) throw UnknownAccount(order.account);

    if (!order.account.is_agency()) {
      const Cents used = order.side == Side::Buy ? bought(order.account) : sold(order.account);
      const Cents limit = order.side == Side::Buy ? rules.buy_limit : rules.sell_limit;
      order.quantity = min(order.quantity, max(Cents{}, limit - used));
      if (order.quantity.value == 0) return std::nullopt;
    }
    order.limit = rules.clamp(order.limit);

    if (order.side == Side::Sell) {
      const Cents need = order.quantity + fee_headroom(order.quantity, rules.fee_rate);
      const Cents free = *available - reserved(order.account);
      if (free < need) throw UnbackedSell(order.account, free, need);
      reserved_[order.account] += need;
      sell_totals_[order.account] += order.quantity;
    } else {
      buy_totals_[order.account] += order.quantity;
    }
    order.id = next_id_++;
    orders_.push_back(order);
    return order;
  }

  void clear() {
    orders_.clear();
    buy_totals_.clear();
    sell_totals_.clear();
    reserved_.clear();
  }

 private:
  static Cents lookup(const std::map<AccountId, Cents>& m, AccountId a) {
    const auto it = m.find(a);
    return it == m.end() ? Cents{} : it->second;
  }

  std::vector<Order> orders_;
  std::uint64_t next_id_{0};
  std::map<AccountId, Cents> buy_totals_;
  std::map<AccountId, Cents> sell_totals_;
  std::map<AccountId, Cents> reserved_;
};

struct Fill {
  std::uint64_t order_id{0};
  AccountId account;
  Side side{Side::Buy};
  Cents filled;
  Cents fee;  // sellers only

  bool operator==(const Fill&) const = default;
};

struct ClearingResult {
  PriceTicks clearing_price;
  Cents volume;
  std::vector<Fill> fills;  // one per order, in order-id order
  Cents fees_collected;
  std::map<AccountId, FiatCents> fiat_transfers;

  bool operator==(const ClearingResult&) const = default;
};

/// Executable volume min(demand(p), supply(p)) for a frozen book.
inline Cents executable_volume(const std::vector<Order>& orders, PriceTicks p) {
  Cents demand, supply;
  for (const auto& o : orders) {
    if (o.side == Side::Buy && o.limit >= p) demand += o.quantity;
    if (o.side == Side::Sell && o.limit <= p) supply += o.quantity;
  }
  return min(demand, supply);
}

/// Splits `total` over `weights` pro-rata with largest-remainder rounding in
/// units of `lot`; equal remainders favour the earlier entry. Requires total
/// <= sum(weights) and every weight and total to be multiples of lot.
inline std::vector<std::int64_t> largest_remainder(std::int64_t total, const std::vector<std::int64_t>& weights,
                                                   std::int64_t lot = 1) {
  std::vector<std::int64_t> out(weights.size(), 0);
  __int128 wsum = 0;
  for (auto w : weights) wsum += w / lot;
  if (wsum == 0 || total == 0) return out;
  const __int128 units = total / lot;
  std::vector<std::pair<__int128, std::size_t>> rem;
  rem.reserve(weights.size());
  std::int64_t assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const __int128 num = units * (weights[i] / lot);
    out[i] = static_cast<std::int64_t>(num / wsum);
    assigned += out[i];
    rem.emplace_back(num % wsum, i);
  }
  std::stable_sort(rem.begin(), rem.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::int64_t k = 0; k < static_cast<std::int64_t>(units) - assigned; ++k) ++out[rem[k].second];
  for (auto& v : out) v *= lot;
  return out;
}

/// Uniform-price clearing of a frozen book. Orders must have been accepted by
/// OrderBook::submit (limits inside the band, quantities clipped).
inline ClearingResult clear_session(const std::vector<Order>& book, const MarketRules& rules, PriceTicks prev_price) {
  std::vector<Order> orders = book;
  std::sort(orders.begin(), orders.end(), [](const Order& a, const Order& b) { return a.id < b.id; });

  std::vector<PriceTicks> candidates{rules.price_floor, rules.price_cap};
  for (const auto& o : orders) candidates.push_back(o.limit);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  // Limits sorted ascending with cumulative quantities, so each candidate is
  // evaluated with two binary searches.
  std::vector<std::pair<PriceTicks, std::int64_t>> buy_lv, sell_lv;
  for (const auto& o : orders) (o.side == Side::Buy ? buy_lv : sell_lv).emplace_back(o.limit, o.quantity.value);
  std::sort(buy_lv.begin(), buy_lv.end());
  std::sort(sell_lv.begin(), sell_lv.end());
  std::vector<std::int64_t> buy_cum(buy_lv.size() + 1, 0), sell_cum(sell_lv.size() + 1, 0);
  for (std::size_t i = 0; i < buy_lv.size(); ++i) buy_cum[i + 1] = buy_cum[i] + buy_lv[i].second;
  for (std::size_t i = 0; i < sell_lv.size(); ++i) sell_cum[i + 1] = sell_cum[i] + sell_lv[i].second;
  const auto by_price = [](const std::pair<PriceTicks, std::int64_t>& e, PriceTicks p) { return e.first < p; };
  const auto volume_at = [&](PriceTicks p) {
    const auto b = std::lower_bound(buy_lv.begin(), buy_lv.end(), p, by_price) - buy_lv.begin();
    const std::int64_t demand = buy_cum.back() - buy_cum[static_cast<std::size_t>(b)];
    const auto s = std::upper_bound(sell_lv.begin(), sell_lv.end(), p,
                                    [](PriceTicks q, const auto& e) { return q < e.first; }) -
                   sell_lv.begin();
    const std::int64_t supply = sell_cum[static_cast<std::size_t>(s)];
    return Cents{std::min(demand, supply)};
  };

  const PriceTicks anchor = rules.clamp(prev_price);
  PriceTicks best_price = anchor;
  Cents best_volume;
  std::int64_t best_dist = 0;
  for (PriceTicks p : candidates) {
    const Cents v = volume_at(p);
    if (v.value == 0) continue;
    const std::int64_t dist = p.value > anchor.value ? p.value - anchor.value : anchor.value - p.value;
    // Candidates are ascending, so a strict improvement test keeps the lower price on full ties.
    if (v > best_volume || (v == best_volume && dist < best_dist)) {
      best_volume = v;
      best_price = p;
      best_dist = dist;
    }
  }

  ClearingResult r;
  r.clearing_price = best_price;
  r.volume = best_volume;
  r.fills.reserve(orders.size());
  for (const auto& o : orders) r.fills.push_back(Fill{o.id, o.account, o.side, Cents{}, Cents{}});
  if (best_volume.value == 0) return r;

  auto ration = [&](Side side) {
    std::vector<std::size_t> idx;
    std::vector<std::int64_t> qty;
    std::int64_t sum = 0;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      const auto& o = orders[i];
      const bool eligible = side == Side::Buy ? o.limit >= best_price : o.limit <= best_price;
      if (o.side != side || !eligible) continue;
      idx.push_back(i);
      qty.push_back(o.quantity.value);
      sum += o.quantity.value;
    }
    if (sum == best_volume.value) {
      for (std::size_t k = 0; k < idx.size(); ++k) r.fills[idx[k]].filled = Cents{qty[k]};
      return;
    }
    // Whole-coin lots when every quantity on the long side and the volume are whole coins.
    std::int64_t lot = best_volume.value % 100 == 0 ? 100 : 1;
    for (auto q : qty)
      if (q % 100 != 0) lot = 1;
    const auto shares = largest_remainder(best_volume.value, qty, lot);
    for (std::size_t k = 0; k < idx.size(); ++k) r.fills[idx[k]].filled = Cents{shares[k]};
  };
  ration(Side::Buy);
  ration(Side::Sell);

  const Cents fee{round_half_away(rules.fee_rate * static_cast<double>(best_volume.value))};
  r.fees_collected = fee;
  if (fee.value > 0) {
    std::vector<std::size_t> sellers;
    std::vector<std::int64_t> filled;
    for (std::size_t i = 0; i < r.fills.size(); ++i) {
      if (r.fills[i].side == Side::Sell && r.fills[i].filled.value > 0) {
        sellers.push_back(i);
        filled.push_back(r.fills[i].filled.value);
      }
    }
    const auto shares = largest_remainder(fee.value, filled);
    for (std::size_t k = 0; k < sellers.size(); ++k) r.fills[sellers[k]].fee = Cents{shares[k]};
  }

  for (const auto& f : r.fills) {
    if (f.filled.value == 0) continue;
    const FiatCents fiat = fiat_value(f.filled, best_price);
    r.fiat_transfers[f.account] += f.side == Side::Buy ? -fiat : fiat;
  }
  return r;
}

/// Ledger legs realizing a clearing: seller-to-buyer Trade legs matched in
/// order-id order, then seller-to-Agency TransactionFee legs.
inline std::vector<Transfer> settlement_transfers(const ClearingResult& r, std::int32_t day) {
  std::vector<Transfer> legs;
  std::vector<std::pair<AccountId, std::int64_t>> buys, sells;
  for (const auto& f : r.fills) {
    if (f.filled.value == 0) continue;
    (f.side == Side::Buy ? buys : sells).emplace_back(f.account, f.filled.value);
  }
  const std::string memo = "session:" + std::to_string(day);
  std::size_t b = 0, s = 0;
  while (b < buys.size() && s < sells.size()) {
    const std::int64_t q = std::min(buys[b].second, sells[s].second);
    if (buys[b].first != sells[s].first)
      legs.push_back(Transfer{EventKind::Trade, sells[s].first, buys[b].first, Cents{q}, memo});
    buys[b].second -= q;
    sells[s].second -= q;
    if (buys[b].second == 0) ++b;
    if (sells[s].second == 0) ++s;
  }
  for (const auto& f : r.fills)
    if (f.fee.value > 0 && !f.account.is_agency())
      legs.push_back(Transfer{EventKind::TransactionFee, f.account, AccountId::agency(), f.fee, memo});
  return legs;
}

struct ForcedPurchase {
  Transfer leg;           // Agency -> account
  FiatCents fiat_cost{0};  // shortfall * price * (1 + penalty_rate)
  FiatCents penalty{0};   // surcharge part of fiat_cost
};

/// Immediate purchase of `shortfall` coins from the Agency reserve at the
/// current market price plus the penalty surcharge. Returns nullopt for a zero
/// shortfall. The reserve is decremented on success.
inline std::optional<ForcedPurchase> forced_purchase(AccountId account, Cents shortfall, PriceTicks current_price,
                                                     const MarketRules& rules, Cents& agency_reserve) {
  if (shortfall.value <= 0) return std::nullopt;
  if (agency_reserve < shortfall) throw EmptyAgencyReserve(agency_reserve, shortfall);
  agency_reserve -= shortfall;
  ForcedPurchase fp;
  fp.fiat_cost = fiat_value(shortfall, current_price, 1.0 + rules.penalty_rate);
  fp.penalty = fp.fiat_cost - fiat_value(shortfall, current_price);
  fp.leg = Transfer{EventKind::ForcedPurchase, AccountId::agency(), account, shortfall,
                    "penalty_fiat_cents=" + std::to_string(fp.penalty) +
                        ";fiat_cost_cents=" + std::to_string(fp.fiat_cost)};
  return fp;
}

}  // namespace mobcoin

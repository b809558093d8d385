#pragma once

// Settlement of commutes, business trips and deliveries as atomic ledger
// batches. Legs are ordered so that credits precede debits of the same
// account, which keeps every individual event non-negative on replay. A debit
// that the payer cannot cover is preceded by a forced purchase from the Agency
// reserve inside the same batch.

#include <mobcoin/ledger.hpp>
#include <mobcoin/market.hpp>
#include <mobcoin/pricing.hpp>

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mobcoin {

struct WfhAllowance {
  Cents per_day;
};
struct JobTicket {};
struct NoReimbursement {};

using CommutePolicy = std::variant<WfhAllowance, JobTicket, NoReimbursement>;

struct EmploymentContract {
  AccountId employer;
  CommutePolicy commute_policy{NoReimbursement{}};
  // Business trips are always reimbursed; there is no switch for it.
};

struct WorkFromHome {};
struct Commute {
  Cents price;  // signed trip price from pricing
};
using DayKind = std::variant<WorkFromHome, Commute>;

struct DeliveryQuery {
  double distance_km{0.0};
  double weight_kg{0.0};
  double volume_l{0.0};
  AccountId customer;
  AccountId merchant;
};

struct DeliveryCoefficients {
  double per_km{0.0};  // coin-cents
  double per_kg{0.0};
  double per_liter{0.0};
};

struct CustomerPays {};
struct MerchantFlatRate {
  FiatCents flat_fiat{0};
};
using DeliveryModel = std::variant<CustomerPays, MerchantFlatRate>;

/// Delivery price: round(per_km * distance + per_kg * weight + per_liter * volume).
inline Cents delivery_price(const DeliveryQuery& q, const DeliveryCoefficients& k) {
  if (q.distance_km < 0.0 || q.weight_kg < 0.0 || q.volume_l < 0.0)
    throw std::invalid_argument("delivery query values must be non-negative");
  return Cents{round_half_away(k.per_km * q.distance_km + k.per_kg * q.weight_kg + k.per_liter * q.volume_l)};
}

/// Running totals of side effects that live outside the coin ledger.
struct FlowStats {
  std::int64_t forced_purchases{0};
  FiatCents forced_fiat{0};
  FiatCents penalty_fiat{0};
  FiatCents delivery_flat_fiat{0};
  std::int64_t earn_saturations{0};
  std::map<AccountId, FiatCents> fiat_by_account;
};

/// Binds the ledger, the Agency reserve and the current market terms for one
/// day of settlements.
class Settler {
 public:
  Settler(Ledger& ledger, Cents& agency_reserve, const MarketRules& rules, PriceTicks market_price,
          std::int32_t day, FlowStats& stats)
      : ledger_(ledger), reserve_(agency_reserve), rules_(rules), price_(market_price), day_(day), stats_(stats) {}

  std::int32_t day() const { return day_; }

  /// Commuter cases: (i) work from home with an allowance, (ii) job ticket,
  /// (iii) no reimbursement, (iv) earning mode. Returns the committed legs.
  std::vector<Transfer> settle_commute(AccountId agent, const DayKind& day_kind,
                                       const std::optional<EmploymentContract>& contract, EarnCapState& cap,
                                       Cents e_max, const std::string& memo = {}) {
    Batch b(*this);
    if (std::holds_alternative<WorkFromHome>(day_kind)) {
      if (contract) {
        if (const auto* a = std::get_if<WfhAllowance>(&contract->commute_policy); a && a->per_day.value > 0)
          b.pay(EventKind::Allowance, contract->employer, agent, a->per_day, memo);
      }
      return b.commit();
    }
    const Cents p = std::get<Commute>(day_kind).price;
    if (p.value < 0) {
      earn(b, agent, -p, cap, e_max, memo);
    } else if (p.value > 0) {
      const bool ticket = contract && std::holds_alternative<JobTicket>(contract->commute_policy);
      if (ticket) b.pay(EventKind::Reimbursement, contract->employer, agent, p, memo);
      b.pay(EventKind::TripCharge, agent, AccountId::agency(), p, memo);
    }
    return b.commit();
  }

  /// Business trips: the employer reimburses mandatorily, whatever the
  /// commute policy. Earning trips are credited like commute case (iv).
  std::vector<Transfer> settle_business_trip(AccountId agent, Cents p, const EmploymentContract& contract,
                                             EarnCapState& cap, Cents e_max, const std::string& memo = {}) {
    Batch b(*this);
    if (p.value > 0) {
      b.pay(EventKind::Reimbursement, contract.employer, agent, p, memo);
      b.pay(EventKind::TripCharge, agent, AccountId::agency(), p, memo);
    } else if (p.value < 0) {
      earn(b, agent, -p, cap, e_max, memo);
    }
    return b.commit();
  }

  /// Private (non-work) trip: plain charge or capped earning.
  std::vector<Transfer> settle_private_trip(AccountId agent, Cents p, EarnCapState& cap, Cents e_max,
                                            const std::string& memo = {}) {
    return settle_commute(agent, Commute{p}, std::nullopt, cap, e_max, memo);
  }

  std::vector<Transfer> settle_delivery(const DeliveryQuery& q, const DeliveryModel& model, Cents p,
                                        const std::string& memo = {}) {
    Batch b(*this);
    if (std::holds_alternative<CustomerPays>(model)) {
      if (p.value > 0) b.pay(EventKind::DeliveryCharge, q.customer, AccountId::agency(), p, memo);
    } else {
      const FiatCents flat = std::get<MerchantFlatRate>(model).flat_fiat;
      if (p.value > 0) b.pay(EventKind::DeliveryCharge, q.merchant, AccountId::agency(), p, memo);
      auto legs = b.commit();
      stats_.delivery_flat_fiat += flat;
      stats_.fiat_by_account[q.merchant] += flat;
      stats_.fiat_by_account[q.customer] -= flat;
      return legs;
    }
    return b.commit();
  }

 private:
  // Accumulates legs with a provisional view of balances and reserve; nothing
  // touches the ledger, reserve or stats until commit().
  class Batch {
   public:
    explicit Batch(Settler& s) : s_(s), reserve_(s.reserve_) {}

    void pay(EventKind kind, AccountId from, AccountId to, Cents amount, const std::string& memo) {
      if (amount.value <= 0) return;
      if (!from.is_agency()) {
        const Cents have = s_.ledger_.balance(from) + pending(from);
        if (have < amount) {
          auto fp = forced_purchase(from, amount - have, s_.price_, s_.rules_, reserve_);
          push(fp->leg);
          fps_.push_back(*fp);
        }
      }
      push(Transfer{kind, from, to, amount, memo});
    }

    void push(Transfer t) {
      legs_.push_back(std::move(t));
    }

    std::vector<Transfer> commit() {
      s_.ledger_.commit(s_.day_, legs_);
      for (const auto& l : legs_)
        if (l.to.is_agency() && (l.kind == EventKind::TripCharge || l.kind == EventKind::DeliveryCharge))
          reserve_ += l.amount;
      s_.reserve_ = reserve_;
      for (const auto& fp : fps_) {
        ++s_.stats_.forced_purchases;
        s_.stats_.forced_fiat += fp.fiat_cost;
        s_.stats_.penalty_fiat += fp.penalty;
        s_.stats_.fiat_by_account[fp.leg.to] -= fp.fiat_cost;
      }
      return std::move(legs_);
    }

   private:
    Cents pending(AccountId a) const {
      Cents sum;
      for (const auto& l : legs_) {
        if (l.from == a) sum -= l.amount;
        if (l.to == a) sum += l.amount;
      }
      return sum;
    }

    Settler& s_;
    Cents reserve_;
    std::vector<Transfer> legs_;
    std::vector<ForcedPurchase> fps_;
  };

  void earn(Batch& b, AccountId agent, Cents amount, EarnCapState& cap, Cents e_max, const std::string& memo) {
    cap.roll_to(day_);
    EarnCapState trial = cap;
    const Cents credited = apply_daily_cap(trial, amount, e_max);
    if (credited < amount) ++stats_.earn_saturations;
    b.pay(EventKind::TripEarn, AccountId::agency(), agent, credited, memo);
    cap = trial;
  }

  Ledger& ledger_;
  Cents& reserve_;
  const MarketRules& rules_;
  PriceTicks price_;
  std::int32_t day_;
  FlowStats& stats_;
};

/// Buy order topping an employer (or merchant) up to its expected outflow,
/// bid at the price cap. Quantity limits are applied when it is submitted.
inline std::optional<Order> employer_replenishment(AccountId account, Cents balance, Cents expected_outflow,
                                                   const MarketRules& rules, std::int32_t day) {
  const Cents need = expected_outflow - balance;
  if (need.value <= 0) return std::nullopt;
  return Order{0, account, Side::Buy, need, rules.price_cap, day};
}

}  // namespace mobcoin

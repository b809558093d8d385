#pragma once

// Append-only coin ledger. Every coin movement is a directed transfer between
// two accounts; the Agency account is the single mint and sink, so the sum of
// all balances (Agency included) is zero after every committed event.

#include <mobcoin/units.hpp>

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mobcoin {

enum class AccountKind : std::uint8_t { Person = 0, Employer = 1, Merchant = 2, Agency = 3 };

inline constexpr std::array<std::string_view, 4> kAccountKindNames{"Person", "Employer", "Merchant",
                                                                   "Agency"};

struct AccountId {
  AccountKind kind{AccountKind::Agency};
  std::uint32_t index{0};

  constexpr auto operator<=>(const AccountId&) const = default;

  static constexpr AccountId agency() { return {AccountKind::Agency, 0}; }
  static constexpr AccountId person(std::uint32_t i) { return {AccountKind::Person, i}; }
  static constexpr AccountId employer(std::uint32_t i) { return {AccountKind::Employer, i}; }
  static constexpr AccountId merchant(std::uint32_t i) { return {AccountKind::Merchant, i}; }

  constexpr bool is_agency() const { return kind == AccountKind::Agency; }

  /// "Person:3", "Agency:0", ...
  std::string to_string() const {
    return std::string(kAccountKindNames[static_cast<std::size_t>(kind)]) + ":" + std::to_string(index);
  }

  static std::optional<AccountId> parse(std::string_view s) {
    const auto colon = s.find(':');
    if (colon == std::string_view::npos || colon + 1 >= s.size()) return std::nullopt;
    const auto name = s.substr(0, colon);
    for (std::size_t k = 0; k < kAccountKindNames.size(); ++k) {
      if (kAccountKindNames[k] != name) continue;
      std::uint64_t idx = 0;
      for (char c : s.substr(colon + 1)) {
        if (c < '0' || c > '9') return std::nullopt;
        idx = idx * 10 + static_cast<std::uint64_t>(c - '0');
        if (idx > UINT32_MAX) return std::nullopt;
      }
      AccountId id{static_cast<AccountKind>(k), static_cast<std::uint32_t>(idx)};
      if (id.is_agency() && id.index != 0) return std::nullopt;
      return id;
    }
    return std::nullopt;
  }
};

enum class EventKind : std::uint8_t {
  Allocation,
  TripCharge,
  TripEarn,
  Trade,
  TransactionFee,
  Reimbursement,
  Allowance,
  DeliveryCharge,
  ForcedPurchase,
  Penalty,
  Expiry,
};

inline constexpr std::array<std::string_view, 11> kEventKindNames{
    "Allocation",     "TripCharge",     "TripEarn", "Trade",  "TransactionFee", "Reimbursement",
    "Allowance",      "DeliveryCharge", "ForcedPurchase", "Penalty", "Expiry"};

inline std::string_view to_string(EventKind k) { return kEventKindNames[static_cast<std::size_t>(k)]; }

inline std::optional<EventKind> parse_event_kind(std::string_view s) {
  for (std::size_t k = 0; k < kEventKindNames.size(); ++k)
    if (kEventKindNames[k] == s) return static_cast<EventKind>(k);
  return std::nullopt;
}

struct LedgerEvent {
  std::uint64_t seq{0};
  std::int32_t day{0};
  EventKind kind{EventKind::Allocation};
  AccountId from;
  AccountId to;
  Cents amount;  // strictly positive, direction carries the sign
  std::string memo;

  bool operator==(const LedgerEvent&) const = default;
};

struct LedgerError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A non-agency debit would take the account below zero.
struct InsufficientBalance : LedgerError {
  AccountId account;
  Cents balance;
  Cents requested;
  InsufficientBalance(AccountId a, Cents have, Cents want)
      : LedgerError("insufficient balance on " + a.to_string() + ": have " + format_coins(have) +
                    ", need " + format_coins(want)),
        account(a),
        balance(have),
        requested(want) {}
};

struct SequenceGap : LedgerError {
  std::uint64_t expected;
  std::uint64_t got;
  SequenceGap(std::uint64_t e, std::uint64_t g)
      : LedgerError("sequence gap: expected seq " + std::to_string(e) + ", got " + std::to_string(g)),
        expected(e),
        got(g) {}
};

struct NegativeBalanceAt : LedgerError {
  std::uint64_t seq;
  explicit NegativeBalanceAt(std::uint64_t s)
      : LedgerError("negative non-agency balance at seq " + std::to_string(s)), seq(s) {}
};

struct InvalidEvent : LedgerError {
  using LedgerError::LedgerError;
};

/// Balances of every account, dense per account kind.
class BalanceMap {
 public:
  Cents get(AccountId id) const {
    if (id.is_agency()) return agency_;
    const auto& v = slots_[static_cast<std::size_t>(id.kind)];
    return id.index < v.size() ? v[id.index] : Cents{};
  }

  void add(AccountId id, Cents delta) {
    if (id.is_agency()) {
      agency_ += delta;
      return;
    }
    auto& v = slots_[static_cast<std::size_t>(id.kind)];
    if (id.index >= v.size()) v.resize(static_cast<std::size_t>(id.index) + 1);
    v[id.index] += delta;
  }

  /// Registers an account with a zero balance so it appears in iteration.
  void touch(AccountId id) { add(id, Cents{}); }

  std::size_t count(AccountKind k) const {
    return k == AccountKind::Agency ? 1 : slots_[static_cast<std::size_t>(k)].size();
  }

  std::span<const Cents> of_kind(AccountKind k) const {
    if (k == AccountKind::Agency) return {&agency_, 1};
    return slots_[static_cast<std::size_t>(k)];
  }

  /// Visits every known account in (kind, index) order.
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t i = 0; i < slots_[k].size(); ++i)
        f(AccountId{static_cast<AccountKind>(k), static_cast<std::uint32_t>(i)}, slots_[k][i]);
    f(AccountId::agency(), agency_);
  }

  Cents total() const {
    Cents sum = agency_;
    for (const auto& v : slots_)
      for (Cents c : v) sum += c;
    return sum;
  }

  bool operator==(const BalanceMap& o) const {
    // Trailing zero slots do not make two maps different.
    if (agency_ != o.agency_) return false;
    for (std::size_t k = 0; k < 3; ++k) {
      const auto& a = slots_[k];
      const auto& b = o.slots_[k];
      const std::size_t n = std::max(a.size(), b.size());
      for (std::size_t i = 0; i < n; ++i) {
        const Cents x = i < a.size() ? a[i] : Cents{};
        const Cents y = i < b.size() ? b[i] : Cents{};
        if (x != y) return false;
      }
    }
    return true;
  }

 private:
  std::array<std::vector<Cents>, 3> slots_;
  Cents agency_;
};

/// True iff the sum over all accounts, Agency included, is exactly zero.
inline bool conservation_check(const BalanceMap& balances) { return balances.total() == Cents{}; }

/// One leg of a settlement batch; sequence numbers are assigned at commit.
struct Transfer {
  EventKind kind;
  AccountId from;
  AccountId to;
  Cents amount;
  std::string memo;
};

/// Single-writer append-only ledger. Committed state may be read from several
/// threads once the writer is quiescent; there is no internal locking.
class Ledger {
 public:
  using Sink = std::function<void(const LedgerEvent&)>;

  Ledger() = default;
  explicit Ledger(Sink sink, bool retain_events = false)
      : sink_(std::move(sink)), retain_(retain_events) {}

  std::uint64_t next_seq() const { return next_seq_; }
  const BalanceMap& balances() const { return balances_; }
  Cents balance(AccountId id) const { return balances_.get(id); }
  const std::vector<LedgerEvent>& events() const { return events_; }
  void open_account(AccountId id) { balances_.touch(id); }

  /// Appends one pre-sequenced event.
  void append(LedgerEvent event) {
    if (event.seq != next_seq_) throw SequenceGap(next_seq_, event.seq);
    check_shape(event.from, event.to, event.amount);
    if (!event.from.is_agency()) {
      const Cents have = balances_.get(event.from);
      if (have < event.amount) throw InsufficientBalance(event.from, have, event.amount);
    }
    apply(std::move(event));
  }

  /// Atomically commits a multi-leg batch. Every leg is checked in order
  /// against the running balances before anything is applied, so a failing
  /// batch leaves the ledger untouched.
  void commit(std::int32_t day, std::span<const Transfer> legs) {
    if (legs.empty()) return;
    if (legs.size() <= 8) {
      scratch_.clear();
      for (const auto& leg : legs) {
        check_shape(leg.from, leg.to, leg.amount);
        if (!leg.from.is_agency()) {
          Cents pending{};
          for (const auto& [id, delta] : scratch_)
            if (id == leg.from) pending += delta;
          const Cents have = balances_.get(leg.from) + pending;
          if (have < leg.amount) throw InsufficientBalance(leg.from, have, leg.amount);
        }
        scratch_.emplace_back(leg.from, -leg.amount);
        scratch_.emplace_back(leg.to, leg.amount);
      }
    } else {
      std::map<AccountId, Cents> pending;
      for (const auto& leg : legs) {
        check_shape(leg.from, leg.to, leg.amount);
        if (!leg.from.is_agency()) {
          const Cents have = balances_.get(leg.from) + pending[leg.from];
          if (have < leg.amount) throw InsufficientBalance(leg.from, have, leg.amount);
        }
        pending[leg.from] -= leg.amount;
        pending[leg.to] += leg.amount;
      }
    }
    for (const auto& leg : legs)
      apply(LedgerEvent{next_seq_, day, leg.kind, leg.from, leg.to, leg.amount, leg.memo});
  }

  void commit(std::int32_t day, std::initializer_list<Transfer> legs) {
    commit(day, std::span<const Transfer>(legs.begin(), legs.size()));
  }

  /// Single-leg convenience wrapper.
  void post(std::int32_t day, EventKind kind, AccountId from, AccountId to, Cents amount,
            std::string memo = {}) {
    append(LedgerEvent{next_seq_, day, kind, from, to, amount, std::move(memo)});
  }

 private:
  static void check_shape(AccountId from, AccountId to, Cents amount) {
    if (amount.value <= 0) throw InvalidEvent("event amount must be strictly positive");
    if (from == to) throw InvalidEvent("self-transfer on " + from.to_string());
  }

  void apply(LedgerEvent event) {
    balances_.add(event.from, -event.amount);
    balances_.add(event.to, event.amount);
    ++next_seq_;
    if (sink_) sink_(event);
    if (retain_) events_.push_back(std::move(event));
  }

  BalanceMap balances_;
  std::uint64_t next_seq_{0};
  Sink sink_;
  bool retain_{false};
  std::vector<LedgerEvent> events_;
  std::vector<std::pair<AccountId, Cents>> scratch_;
};

/// Rebuilds balances from a complete event stream. Throws SequenceGap when seq
/// is not contiguous from 0 and NegativeBalanceAt when a non-agency account
/// would be overdrawn.
inline BalanceMap replay(std::span<const LedgerEvent> stream) {
  BalanceMap b;
  std::uint64_t expected = 0;
  for (const auto& e : stream) {
    if (e.seq != expected) throw SequenceGap(expected, e.seq);
    if (e.amount.value <= 0) throw InvalidEvent("non-positive amount at seq " + std::to_string(e.seq));
    b.add(e.from, -e.amount);
    b.add(e.to, e.amount);
    if (!e.from.is_agency() && b.get(e.from) < Cents{}) throw NegativeBalanceAt(e.seq);
    ++expected;
  }
  return b;
}

}  // namespace mobcoin

#pragma once

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>

namespace mobcoin {

/// Exact coin quantity in coin-cents (1 MobilityCoin = 100 coin-cents).
struct Cents {
  std::int64_t value{0};

  constexpr Cents() = default;
  constexpr explicit Cents(std::int64_t v) : value(v) {}

  static constexpr Cents coins(std::int64_t whole) { return Cents{whole * 100}; }

  constexpr auto operator<=>(const Cents&) const = default;

  constexpr Cents operator-() const { return Cents{-value}; }
  constexpr Cents& operator+=(Cents o) { value += o.value; return *this; }
  constexpr Cents& operator-=(Cents o) { value -= o.value; return *this; }
  friend constexpr Cents operator+(Cents a, Cents b) { return Cents{a.value + b.value}; }
  friend constexpr Cents operator-(Cents a, Cents b) { return Cents{a.value - b.value}; }
  friend constexpr Cents operator*(Cents a, std::int64_t k) { return Cents{a.value * k}; }
  friend constexpr Cents operator*(std::int64_t k, Cents a) { return Cents{a.value * k}; }

  constexpr bool positive() const { return value > 0; }
  constexpr double as_coins() const { return static_cast<double>(value) / 100.0; }
};

constexpr Cents min(Cents a, Cents b) { return a < b ? a : b; }
constexpr Cents max(Cents a, Cents b) { return a < b ? b : a; }

/// Market price in ticks of 1/100 fiat-cent per coin.
struct PriceTicks {
  std::int64_t value{0};

  constexpr PriceTicks() = default;
  constexpr explicit PriceTicks(std::int64_t v) : value(v) {}

  static constexpr PriceTicks fiat_cents(std::int64_t fc) { return PriceTicks{fc * 100}; }

  constexpr auto operator<=>(const PriceTicks&) const = default;

  constexpr double as_fiat_cents() const { return static_cast<double>(value) / 100.0; }
};

/// Fiat money in fiat-cents. Only tracked as a metric, never in the coin ledger.
using FiatCents = std::int64_t;

/// Round to nearest integer, halves away from zero.
inline std::int64_t round_half_away(double x) { return std::llround(x); }

/// Fiat value of `amount` coins at `price`, scaled by `factor`, in whole fiat-cents.
inline FiatCents fiat_value(Cents amount, PriceTicks price, double factor = 1.0) {
  // coin-cents * ticks = 1e-4 fiat-cents
  const double raw = static_cast<double>(amount.value) * static_cast<double>(price.value);
  return round_half_away(raw * factor / 1.0e4);
}

/// Formats coin-cents as a decimal coin string, e.g. 1500 -> "15.00".
inline std::string format_coins(Cents c) {
  const std::int64_t v = c.value;
  const std::int64_t mag = v < 0 ? -v : v;
  std::string frac = std::to_string(mag % 100);
  if (frac.size() < 2) frac.insert(0, "0");
  return (v < 0 ? "-" : "") + std::to_string(mag / 100) + "." + frac;
}

}  // namespace mobcoin

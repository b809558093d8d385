#pragma once

// Pre-trip mode choice as a multinomial logit over generalized cost.
//
// Utility: U_m = asc_m - beta_time * t_m - beta_cost * (coin_price_m * market_price)
// with coin_price in coins and market_price in fiat-cents per coin, so the
// cost term is in fiat-cents. Earning options have negative coin prices and
// therefore receive a utility bonus.

#include <mobcoin/ledger.hpp>
#include <mobcoin/pricing.hpp>
#include <mobcoin/rng.hpp>
#include <mobcoin/units.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace mobcoin {

struct ModeOption {
  ModeIndex mode{0};
  double distance_km{0.0};
  double base_minutes{0.0};  // free-flow duration
  double asc{0.0};
};

struct AgentProfile {
  AccountId account;
  std::vector<ModeOption> options;  // ascending mode index, non-empty
  double beta_time{0.0};            // utility per minute
  double beta_cost{0.0};            // utility per fiat-cent
  double logit_scale{1.0};
  bool wfh_eligible{false};
  double wfh_asc{0.0};
  std::optional<AccountId> employer;
};

struct OptionContext {
  ModeIndex mode{0};
  Cents coin_price;
  double travel_minutes{0.0};
};

struct ChoiceContext {
  std::vector<OptionContext> options;
  PriceTicks market_price{PriceTicks::fiat_cents(1)};
};

struct MissingOption : std::invalid_argument {
  explicit MissingOption(ModeIndex m)
      : std::invalid_argument("choice context does not match option for mode #" + std::to_string(m)) {}
};

/// Fiat-cent value of a signed coin amount at the given market price.
inline double fiat_cost(Cents coin_price, PriceTicks market_price) {
  return static_cast<double>(coin_price.value) * static_cast<double>(market_price.value) / 1.0e4;
}

inline double option_utility(double asc, double beta_time, double beta_cost, double minutes,
                             Cents coin_price, PriceTicks market_price) {
  return asc - beta_time * minutes - beta_cost * fiat_cost(coin_price, market_price);
}

inline std::vector<double> option_utilities(const AgentProfile& profile, const ChoiceContext& ctx) {
  if (ctx.market_price.value <= 0) throw std::invalid_argument("market price must be positive");
  if (ctx.options.size() != profile.options.size())
    throw MissingOption(profile.options.empty() ? 0 : profile.options.front().mode);
  std::vector<double> u(profile.options.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const auto& opt = profile.options[i];
    const auto& c = ctx.options[i];
    if (c.mode != opt.mode) throw MissingOption(opt.mode);
    u[i] = option_utility(opt.asc, profile.beta_time, profile.beta_cost, c.travel_minutes, c.coin_price,
                          ctx.market_price);
  }
  return u;
}

/// Logit probabilities exp(mu*U_m) / sum_k exp(mu*U_k), shifted by the maximum
/// utility so large utilities cannot overflow.
inline void choice_probabilities(std::span<const double> utilities, double mu, std::span<double> out) {
  if (utilities.empty()) throw std::invalid_argument("no options");
  if (!(mu > 0.0)) throw std::invalid_argument("logit scale must be positive");
  const double top = *std::max_element(utilities.begin(), utilities.end());
  double sum = 0.0;
  for (std::size_t i = 0; i < utilities.size(); ++i) {
    out[i] = std::exp(mu * (utilities[i] - top));
    sum += out[i];
  }
  for (double& p : out.first(utilities.size())) p /= sum;
}

inline std::vector<double> choice_probabilities(std::span<const double> utilities, double mu) {
  std::vector<double> p(utilities.size());
  choice_probabilities(utilities, mu, p);
  return p;
}

/// Inverse-CDF draw. The cumulative probabilities are quantized to multiples
/// of 2^-32 and compared against a 32-bit uniform integer, so the outcome only
/// depends on the probabilities to 32 fractional bits. Options with zero
/// probability are never selected; the last positive option absorbs rounding.
inline std::size_t sample_choice(std::span<const double> probabilities, Rng& rng) {
  constexpr double kScale = 4294967296.0;  // 2^32
  const std::uint64_t u = rng.next_u32();
  std::size_t last_positive = 0;
  double cum = 0.0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] <= 0.0) continue;
    last_positive = i;
    cum += probabilities[i];
    const auto bound = static_cast<std::uint64_t>(std::min(kScale, std::floor(cum * kScale + 0.5)));
    if (u < bound) return i;
  }
  return last_positive;
}

}  // namespace mobcoin

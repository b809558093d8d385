#pragma once

// Scenario configuration: a single JSON document binding every model
// parameter. Loading checks three things in order and reports the first
// failure with its field path:
//   schema     - required fields present with the right JSON types
//   references - every mode / measure id mentioned elsewhere exists
//   invariants - value ranges and cross-field rules

#include <mobcoin/agency.hpp>
#include <mobcoin/choice.hpp>
#include <mobcoin/flows.hpp>
#include <mobcoin/market.hpp>
#include <mobcoin/network.hpp>
#include <mobcoin/pricing.hpp>
#include <mobcoin/voting.hpp>

#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mobcoin {

struct ConfigError : std::runtime_error {
  enum class Kind { Io, Schema, DanglingReference, Invariant };
  Kind kind;
  std::string path;
  ConfigError(Kind k, std::string p, const std::string& msg)
      : std::runtime_error((p.empty() ? std::string{} : p + ": ") + msg), kind(k), path(std::move(p)) {}
};

inline std::string_view to_string(ConfigError::Kind k) {
  switch (k) {
    case ConfigError::Kind::Io: return "io error";
    case ConfigError::Kind::Schema: return "schema violation";
    case ConfigError::Kind::DanglingReference: return "dangling reference";
    case ConfigError::Kind::Invariant: return "invariant violation";
  }
  return "error";
}

struct Range {
  double min{0.0};
  double max{0.0};
  double sample(double u) const { return min + (max - min) * u; }
};

struct ModeSpec {
  Mode mode;
  ModeRate rate;
  ModeSupply supply;
  int occupancy{1};
  double asc{0.0};
  double availability{1.0};  // share of persons who have this mode available
  double distance_factor{1.0};
};

struct ExplicitAgent {
  std::vector<ModeOption> options;
  double beta_time{0.0};
  double beta_cost{0.0};
  double logit_scale{1.0};
  bool wfh_eligible{false};
  double wfh_asc{0.0};
  std::optional<std::uint32_t> employer;
  CommutePolicy policy{NoReimbursement{}};
};

struct PopulationSpec {
  std::size_t count{0};
  Range distance_km{5.0, 15.0};
  double reference_distance_km{10.0};
  double beta_time{0.05};
  double beta_cost{0.005};
  double logit_scale{1.0};
  double asc_jitter{0.0};
  std::vector<ExplicitAgent> agents;  // used instead of `count` when non-empty
};

struct EmploymentSpec {
  std::uint32_t employers{0};
  double employed_share{0.0};
  double wfh_eligible_share{0.0};
  double share_job_ticket{0.0};
  double share_wfh_allowance{0.0};
  Cents wfh_allowance;
  double wfh_asc{0.0};
  double business_trip_rate{0.0};
  ModeIndex business_mode{0};
  double business_distance_km{0.0};
};

struct DeliverySpec {
  std::uint32_t merchants{0};
  double rate_per_person_day{0.0};
  DeliveryModel model{CustomerPays{}};
  DeliveryCoefficients coefficients;
  Range distance_km{1.0, 10.0};
  Range weight_kg{0.5, 10.0};
  Range volume_l{1.0, 30.0};
};

struct TradingSpec {
  PriceTicks initial_price{PriceTicks::fiat_cents(100)};
  Cents low_balance;
  Cents high_balance{Cents::coins(1'000'000)};
  double limit_spread{0.1};
  Cents agency_sell_per_session;
};

struct VotingSpec {
  enum class Mode { Split, Bundle };
  Mode mode{Mode::Split};
  std::int64_t budget{0};
  WeightRule weight_rule{WeightRule::Linear};
  std::vector<Measure> measures;
  std::vector<Bundle> bundles;
};

struct ScenarioConfig {
  std::uint64_t seed{0};
  int horizon_years{1};
  std::vector<ModeSpec> modes;
  double c_max{3.0};
  Cents e_max;
  PopulationSpec population;
  EmploymentSpec employment;
  DeliverySpec deliveries;
  MarketRules market;
  TradingSpec trading;
  AllocationPolicy allocation;
  SupplyController controller;
  VotingSpec voting;
  nlohmann::json source;  // document as loaded, used for the config hash

  PriceSchedule schedule() const {
    PriceSchedule s;
    for (const auto& m : modes) s.set(m.mode.id, m.rate);
    return s;
  }

  NetworkState network() const {
    NetworkState n;
    n.c_max = c_max;
    for (const auto& m : modes) n.modes.push_back(m.supply);
    return n;
  }

  ModeIndex mode_index(std::string_view id) const {
    for (std::size_t i = 0; i < modes.size(); ++i)
      if (modes[i].mode.id == id) return i;
    throw UnknownMode(std::string(id));
  }

  std::size_t population_size() const {
    return population.agents.empty() ? population.count : population.agents.size();
  }
};

namespace detail {

using json = nlohmann::json;

// Typed accessors over a JSON node that remember the node's path.
class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  const json& raw() const { return j_; }
  const std::string& path() const { return path_; }

  std::string child_path(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  bool has(std::string_view key) const { return j_.is_object() && j_.contains(key); }

  Node at(std::string_view key) const {
    require_object();
    if (!j_.contains(key)) throw ConfigError(ConfigError::Kind::Schema, child_path(key), "missing required field");
    return Node(j_.at(std::string(key)), child_path(key));
  }

  std::optional<Node> find(std::string_view key) const {
    if (!has(key)) return std::nullopt;
    return at(key);
  }

  Node index(std::size_t i) const { return Node(j_.at(i), path_ + "[" + std::to_string(i) + "]"); }

  std::size_t size() const { return j_.size(); }

  void require_object() const {
    if (!j_.is_object()) throw ConfigError(ConfigError::Kind::Schema, path_, "expected object");
  }
  void require_array() const {
    if (!j_.is_array()) throw ConfigError(ConfigError::Kind::Schema, path_, "expected array");
  }

  double number() const {
    if (!j_.is_number()) throw ConfigError(ConfigError::Kind::Schema, path_, "expected number");
    const double v = j_.get<double>();
    if (!std::isfinite(v)) throw ConfigError(ConfigError::Kind::Schema, path_, "expected finite number");
    return v;
  }
  std::int64_t integer() const {
    if (!j_.is_number_integer()) throw ConfigError(ConfigError::Kind::Schema, path_, "expected integer");
    return j_.get<std::int64_t>();
  }
  bool boolean() const {
    if (!j_.is_boolean()) throw ConfigError(ConfigError::Kind::Schema, path_, "expected boolean");
    return j_.get<bool>();
  }
  std::string string() const {
    if (!j_.is_string()) throw ConfigError(ConfigError::Kind::Schema, path_, "expected string");
    return j_.get<std::string>();
  }
  /// Decimal coins, e.g. 15.5 -> 1550 coin-cents.
  Cents coins() const { return Cents{round_half_away(number() * 100.0)}; }
  /// Decimal fiat-cents per coin, e.g. 4.5 -> 450 ticks.
  PriceTicks price() const { return PriceTicks{round_half_away(number() * 100.0)}; }

  double number(std::string_view key, double fallback) const { return has(key) ? at(key).number() : fallback; }
  std::int64_t integer(std::string_view key, std::int64_t fallback) const {
    return has(key) ? at(key).integer() : fallback;
  }
  bool boolean(std::string_view key, bool fallback) const { return has(key) ? at(key).boolean() : fallback; }
  Cents coins(std::string_view key, Cents fallback) const { return has(key) ? at(key).coins() : fallback; }

  Range range(std::string_view key, Range fallback) const {
    if (!has(key)) return fallback;
    const Node n = at(key);
    return Range{n.at("min").number(), n.at("max").number()};
  }

  [[noreturn]] void invariant(const std::string& msg) const {
    throw ConfigError(ConfigError::Kind::Invariant, path_, msg);
  }
  [[noreturn]] void dangling(const std::string& id) const {
    throw ConfigError(ConfigError::Kind::DanglingReference, path_, "unknown id '" + id + "'");
  }

 private:
  const json& j_;
  std::string path_;
};

inline ModeKind parse_mode_kind(const Node& n) {
  const auto s = n.string();
  for (ModeKind k : {ModeKind::Car, ModeKind::Bus, ModeKind::Rail, ModeKind::Bike, ModeKind::Walk, ModeKind::Custom})
    if (to_string(k) == s) return k;
  throw ConfigError(ConfigError::Kind::Schema, n.path(), "unknown mode kind '" + s + "'");
}

inline ModeIndex resolve_mode(const ScenarioConfig& cfg, const Node& n) {
  const auto id = n.string();
  for (std::size_t i = 0; i < cfg.modes.size(); ++i)
    if (cfg.modes[i].mode.id == id) return i;
  n.dangling(id);
}

inline CommutePolicy parse_policy(const Node& n, Cents allowance) {
  const auto s = n.string();
  if (s == "job_ticket") return JobTicket{};
  if (s == "wfh_allowance") return WfhAllowance{allowance};
  if (s == "none") return NoReimbursement{};
  throw ConfigError(ConfigError::Kind::Schema, n.path(), "unknown commute policy '" + s + "'");
}

inline void check_share(const Node& n, double v) {
  if (!(v >= 0.0 && v <= 1.0)) n.invariant("share must lie in [0,1]");
}

inline void check_range(const Node& parent, std::string_view key, const Range& r) {
  if (r.min < 0.0 || r.max < r.min) Node(parent.raw(), parent.child_path(key)).invariant("need 0 <= min <= max");
}

}  // namespace detail

/// Builds a validated scenario from a parsed JSON document.
inline ScenarioConfig parse_config(const nlohmann::json& doc) {
  using detail::Node;
  ScenarioConfig cfg;
  cfg.source = doc;
  const Node root(doc, "");
  root.require_object();

  cfg.seed = static_cast<std::uint64_t>(root.at("seed").integer());
  cfg.horizon_years = static_cast<int>(root.integer("horizon_years", 1));
  if (cfg.horizon_years < 1) root.at("horizon_years").invariant("must be >= 1");
  cfg.c_max = root.number("c_max", 3.0);
  cfg.e_max = root.coins("e_max", Cents{});

  // Modes first: everything else refers to them.
  const Node modes = root.at("modes");
  modes.require_array();
  if (modes.size() == 0) modes.invariant("at least one mode is required");
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const Node m = modes.index(i);
    ModeSpec spec;
    spec.mode.id = m.at("id").string();
    spec.mode.kind = detail::parse_mode_kind(m.at("kind"));
    spec.mode.emission_factor = m.number("emission_factor", 0.0);
    for (const auto& other : cfg.modes)
      if (other.mode.id == spec.mode.id) m.at("id").invariant("duplicate mode id '" + spec.mode.id + "'");

    const Node price = m.at("price");
    // Rates are given in coins per km / per minute.
    spec.rate.rate_dist = price.number("rate_dist", 0.0) * 100.0;
    spec.rate.rate_time = price.number("rate_time", 0.0) * 100.0;
    spec.rate.congestion_applies = price.boolean("congestion_applies", false);
    spec.rate.occupancy_divides = price.boolean("occupancy_divides", false);

    const Node net = m.at("network");
    spec.supply.base_time = net.at("base_time").number();
    spec.supply.congestible = net.boolean("congestible", false);
    spec.supply.capacity = net.number("capacity", 0.0);
    spec.supply.alpha = net.number("alpha", 0.15);
    spec.supply.beta = net.number("beta", 4.0);
    spec.supply.available = net.boolean("available", true);

    spec.occupancy = static_cast<int>(m.integer("occupancy", 1));
    spec.asc = m.number("asc", 0.0);
    spec.availability = m.number("availability", 1.0);
    spec.distance_factor = m.number("distance_factor", 1.0);

    if (spec.rate.earning() && spec.rate.charging())
      price.invariant("rates of one mode must not mix earning and charging signs");
    if (spec.rate.earning() && (spec.rate.congestion_applies || spec.rate.occupancy_divides))
      price.invariant("earning modes cannot be congestion- or occupancy-priced");
    if (spec.occupancy < 1) m.at("occupancy").invariant("must be >= 1");
    detail::check_share(m.has("availability") ? m.at("availability") : m, spec.availability);
    if (!(spec.distance_factor > 0.0)) m.at("distance_factor").invariant("must be positive");
    if (spec.supply.base_time < 0.0) net.at("base_time").invariant("must be >= 0");
    if (spec.supply.congestible && !(spec.supply.capacity > 0.0))
      net.invariant("congestible modes need a positive capacity");
    if (spec.supply.alpha < 0.0 || spec.supply.beta < 0.0) net.invariant("alpha and beta must be >= 0");
    cfg.modes.push_back(std::move(spec));
  }
  if (!(cfg.c_max >= 1.0)) root.at("c_max").invariant("must be >= 1");

  // Population.
  const Node pop = root.at("population");
  cfg.population.count = static_cast<std::size_t>(pop.integer("count", 0));
  cfg.population.distance_km = pop.range("distance_km", cfg.population.distance_km);
  detail::check_range(pop, "distance_km", cfg.population.distance_km);
  cfg.population.reference_distance_km = pop.number("reference_distance_km", 10.0);
  if (!(cfg.population.reference_distance_km > 0.0)) pop.at("reference_distance_km").invariant("must be positive");
  cfg.population.beta_time = pop.number("beta_time", cfg.population.beta_time);
  cfg.population.beta_cost = pop.number("beta_cost", cfg.population.beta_cost);
  cfg.population.logit_scale = pop.number("logit_scale", 1.0);
  cfg.population.asc_jitter = pop.number("asc_jitter", 0.0);
  if (!(cfg.population.logit_scale > 0.0)) pop.at("logit_scale").invariant("must be positive");
  if (cfg.population.beta_time < 0.0 || cfg.population.beta_cost < 0.0) pop.invariant("betas must be >= 0");
  if (cfg.population.asc_jitter < 0.0) pop.at("asc_jitter").invariant("must be >= 0");

  // Employment.
  if (const auto emp = root.find("employment")) {
    auto& e = cfg.employment;
    e.employers = static_cast<std::uint32_t>(emp->integer("employers", 0));
    e.employed_share = emp->number("employed_share", 0.0);
    e.wfh_eligible_share = emp->number("wfh_eligible_share", 0.0);
    e.wfh_allowance = emp->coins("wfh_allowance", Cents{});
    e.wfh_asc = emp->number("wfh_asc", 0.0);
    e.business_trip_rate = emp->number("business_trip_rate", 0.0);
    if (const auto pol = emp->find("policies")) {
      e.share_job_ticket = pol->number("job_ticket", 0.0);
      e.share_wfh_allowance = pol->number("wfh_allowance", 0.0);
      const double none = pol->number("none", 0.0);
      if (std::abs(e.share_job_ticket + e.share_wfh_allowance + none - 1.0) > 1e-9)
        pol->invariant("policy shares must sum to 1");
    }
    if (const auto bt = emp->find("business_trip")) {
      e.business_mode = detail::resolve_mode(cfg, bt->at("mode"));
      e.business_distance_km = bt->at("distance_km").number();
    }
    for (const char* k : {"employed_share", "wfh_eligible_share", "business_trip_rate"})
      if (emp->has(k)) detail::check_share(emp->at(k), emp->at(k).number());
    if (e.wfh_allowance.value < 0) emp->at("wfh_allowance").invariant("must be >= 0");
    if (e.employed_share > 0.0 && e.employers == 0) emp->invariant("employed persons need at least one employer");
  }

  // Explicit agents override the generated population.
  if (const auto agents = pop.find("agents")) {
    agents->require_array();
    for (std::size_t i = 0; i < agents->size(); ++i) {
      const Node a = agents->index(i);
      ExplicitAgent ag;
      ag.beta_time = a.number("beta_time", cfg.population.beta_time);
      ag.beta_cost = a.number("beta_cost", cfg.population.beta_cost);
      ag.logit_scale = a.number("logit_scale", cfg.population.logit_scale);
      ag.wfh_eligible = a.boolean("wfh_eligible", false);
      ag.wfh_asc = a.number("wfh_asc", cfg.employment.wfh_asc);
      const Node opts = a.at("options");
      opts.require_array();
      if (opts.size() == 0) opts.invariant("available modes must be non-empty");
      for (std::size_t k = 0; k < opts.size(); ++k) {
        const Node o = opts.index(k);
        ModeOption mo;
        mo.mode = detail::resolve_mode(cfg, o.at("mode"));
        mo.distance_km = o.at("distance_km").number();
        mo.base_minutes = o.at("minutes").number();
        mo.asc = o.number("asc", cfg.modes[mo.mode].asc);
        if (mo.distance_km < 0.0 || mo.base_minutes < 0.0) o.invariant("distance and minutes must be >= 0");
        ag.options.push_back(mo);
      }
      std::sort(ag.options.begin(), ag.options.end(),
                [](const ModeOption& x, const ModeOption& y) { return x.mode < y.mode; });
      for (std::size_t k = 1; k < ag.options.size(); ++k)
        if (ag.options[k].mode == ag.options[k - 1].mode) opts.invariant("duplicate mode in options");
      if (a.has("employer")) {
        const auto idx = a.at("employer").integer();
        if (idx < 0 || idx >= static_cast<std::int64_t>(cfg.employment.employers))
          a.at("employer").dangling("employer " + std::to_string(idx));
        ag.employer = static_cast<std::uint32_t>(idx);
        if (a.has("policy")) ag.policy = detail::parse_policy(a.at("policy"), cfg.employment.wfh_allowance);
      }
      cfg.population.agents.push_back(std::move(ag));
    }
  }

  // Deliveries.
  if (const auto del = root.find("deliveries")) {
    auto& d = cfg.deliveries;
    d.merchants = static_cast<std::uint32_t>(del->integer("merchants", 0));
    d.rate_per_person_day = del->number("rate_per_person_day", 0.0);
    detail::check_share(del->has("rate_per_person_day") ? del->at("rate_per_person_day") : *del,
                        d.rate_per_person_day);
    if (const auto model = del->find("model")) {
      if (model->raw().is_string()) {
        if (model->string() != "customer_pays")
          throw ConfigError(ConfigError::Kind::Schema, model->path(), "expected \"customer_pays\" or object");
        d.model = CustomerPays{};
      } else {
        const FiatCents flat = round_half_away(model->at("merchant_flat_rate").number());
        if (flat < 0) model->at("merchant_flat_rate").invariant("must be >= 0");
        d.model = MerchantFlatRate{flat};
      }
    }
    if (const auto k = del->find("coefficients")) {
      // coins per km / kg / liter
      d.coefficients.per_km = k->number("per_km", 0.0) * 100.0;
      d.coefficients.per_kg = k->number("per_kg", 0.0) * 100.0;
      d.coefficients.per_liter = k->number("per_liter", 0.0) * 100.0;
      if (d.coefficients.per_km < 0.0 || d.coefficients.per_kg < 0.0 || d.coefficients.per_liter < 0.0)
        k->invariant("coefficients must be >= 0");
    }
    d.distance_km = del->range("distance_km", d.distance_km);
    d.weight_kg = del->range("weight_kg", d.weight_kg);
    d.volume_l = del->range("volume_l", d.volume_l);
    detail::check_range(*del, "distance_km", d.distance_km);
    detail::check_range(*del, "weight_kg", d.weight_kg);
    detail::check_range(*del, "volume_l", d.volume_l);
    if (d.rate_per_person_day > 0.0 && d.merchants == 0) del->invariant("deliveries need at least one merchant");
  }

  // Market and trading behaviour.
  const Node mk = root.at("market");
  cfg.market.price_floor = mk.at("price_floor").price();
  cfg.market.price_cap = mk.at("price_cap").price();
  cfg.market.buy_limit = mk.at("buy_limit").coins();
  cfg.market.sell_limit = mk.at("sell_limit").coins();
  cfg.market.fee_rate = mk.number("fee_rate", 0.0);
  cfg.market.penalty_rate = mk.number("penalty_rate", 0.0);
  cfg.market.session_every = static_cast<int>(mk.integer("session_every", 7));
  cfg.trading.initial_price = mk.at("initial_price").price();
  cfg.trading.low_balance = mk.coins("agent_low_balance", Cents{});
  cfg.trading.high_balance = mk.coins("agent_high_balance", cfg.trading.high_balance);
  cfg.trading.limit_spread = mk.number("limit_spread", 0.1);
  cfg.trading.agency_sell_per_session = mk.coins("agency_sell_per_session", Cents{});
  try {
    cfg.market.validate();
  } catch (const std::invalid_argument& e) {
    mk.invariant(e.what());
  }
  if (cfg.trading.initial_price.value <= 0) mk.at("initial_price").invariant("must be positive");
  if (!(cfg.trading.limit_spread >= 0.0 && cfg.trading.limit_spread < 1.0))
    mk.at("limit_spread").invariant("must be in [0,1)");
  if (cfg.trading.low_balance > cfg.trading.high_balance)
    mk.invariant("agent_low_balance must not exceed agent_high_balance");
  if (cfg.trading.agency_sell_per_session.value < 0) mk.at("agency_sell_per_session").invariant("must be >= 0");

  // Agency.
  const Node alloc = root.at("allocation");
  cfg.allocation.base_per_person = alloc.at("base_per_person").coins();
  cfg.allocation.low_access_bonus = alloc.coins("low_access_bonus", Cents{});
  cfg.allocation.low_access_threshold = static_cast<int>(alloc.integer("low_access_threshold", 0));
  cfg.allocation.period_days = static_cast<int>(alloc.integer("period_days", 365));
  cfg.allocation.expire_at_year_end = alloc.boolean("expire_at_year_end", true);
  cfg.allocation.reserve_fraction = alloc.number("reserve_fraction", 0.05);
  try {
    cfg.allocation.validate();
  } catch (const std::invalid_argument& e) {
    alloc.invariant(e.what());
  }

  const Node ctl = root.at("supply_controller");
  const Node target = ctl.at("target_split");
  target.require_object();
  cfg.controller.target_split.assign(cfg.modes.size(), 0.0);
  for (const auto& [id, share] : target.raw().items()) {
    const Node s(share, target.child_path(id));
    bool found = false;
    for (std::size_t i = 0; i < cfg.modes.size(); ++i)
      if (cfg.modes[i].mode.id == id) {
        cfg.controller.target_split[i] = s.number();
        found = true;
      }
    if (!found) s.dangling(id);
  }
  cfg.controller.gain = ctl.number("gain", 0.0);
  cfg.controller.max_rel_change = ctl.number("max_rel_change", 0.1);
  cfg.controller.controlled_mode = detail::resolve_mode(cfg, ctl.at("controlled_mode"));
  try {
    cfg.controller.validate();
  } catch (const std::invalid_argument& e) {
    ctl.invariant(e.what());
  }

  // Voting.
  if (const auto vot = root.find("voting")) {
    auto& v = cfg.voting;
    const auto mode = vot->has("mode") ? vot->at("mode").string() : std::string("split");
    if (mode == "split") v.mode = VotingSpec::Mode::Split;
    else if (mode == "bundle") v.mode = VotingSpec::Mode::Bundle;
    else throw ConfigError(ConfigError::Kind::Schema, vot->child_path("mode"), "expected \"split\" or \"bundle\"");
    v.budget = vot->integer("budget", 0);
    if (v.budget < 0) vot->at("budget").invariant("must be >= 0");
    const auto rule = vot->has("weight_rule") ? vot->at("weight_rule").string() : std::string("linear");
    if (rule == "linear") v.weight_rule = WeightRule::Linear;
    else if (rule == "sqrt") v.weight_rule = WeightRule::SquareRoot;
    else throw ConfigError(ConfigError::Kind::Schema, vot->child_path("weight_rule"), "expected \"linear\" or \"sqrt\"");
    if (const auto ms = vot->find("measures")) {
      ms->require_array();
      for (std::size_t i = 0; i < ms->size(); ++i) {
        const Node mn = ms->index(i);
        Measure m;
        m.id = static_cast<int>(mn.at("id").integer());
        m.label = mn.has("label") ? mn.at("label").string() : std::string{};
        m.cost = mn.integer("cost", 1);
        if (m.cost < 0) mn.at("cost").invariant("must be >= 0");
        for (const auto& other : v.measures)
          if (other.id == m.id) mn.at("id").invariant("duplicate measure id " + std::to_string(m.id));
        const Node effects = mn.at("effects");
        effects.require_array();
        for (std::size_t k = 0; k < effects.size(); ++k) {
          const Node en = effects.index(k);
          MeasureEffect e;
          e.mode = detail::resolve_mode(cfg, en.at("mode"));
          const auto param = en.at("param").string();
          if (param == "travel_time_factor") e.param = EffectParam::TravelTimeFactor;
          else if (param == "capacity_factor") e.param = EffectParam::CapacityFactor;
          else if (param == "availability") e.param = EffectParam::Availability;
          else throw ConfigError(ConfigError::Kind::Schema, en.child_path("param"), "unknown parameter '" + param + "'");
          if (e.param == EffectParam::Availability) {
            e.available = en.at("value").boolean();
          } else {
            e.factor = en.at("value").number();
            if (!(e.factor > 0.0)) en.at("value").invariant("factors must be positive");
          }
          m.effects.push_back(e);
        }
        v.measures.push_back(std::move(m));
      }
    }
    if (const auto bs = vot->find("bundles")) {
      bs->require_array();
      for (std::size_t i = 0; i < bs->size(); ++i) {
        const Node bn = bs->index(i);
        Bundle b;
        b.id = static_cast<int>(bn.at("id").integer());
        const Node ids = bn.at("measures");
        ids.require_array();
        if (ids.size() == 0) ids.invariant("bundles must be non-empty");
        for (std::size_t k = 0; k < ids.size(); ++k) {
          const Node idn = ids.index(k);
          const int mid = static_cast<int>(idn.integer());
          if (std::none_of(v.measures.begin(), v.measures.end(), [&](const Measure& m) { return m.id == mid; }))
            idn.dangling(std::to_string(mid));
          b.measures.push_back(mid);
        }
        v.bundles.push_back(std::move(b));
      }
    }
    if (v.mode == VotingSpec::Mode::Bundle && v.bundles.empty()) vot->invariant("bundle voting needs bundles");
  }

  // Scenario-wide invariants.
  const bool any_earning = std::any_of(cfg.modes.begin(), cfg.modes.end(), [](const ModeSpec& m) { return m.rate.earning(); });
  const bool any_charging = std::any_of(cfg.modes.begin(), cfg.modes.end(), [](const ModeSpec& m) { return m.rate.charging(); });
  if (cfg.e_max.value < 0) root.at("e_max").invariant("must be >= 0");
  if (cfg.e_max.value > 0 && !any_earning) modes.invariant("e_max > 0 requires at least one earning mode");
  if (!any_earning || !any_charging) modes.invariant("need at least one earning and one charged mode");
  return cfg;
}

inline ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(ConfigError::Kind::Io, path, "cannot open config file");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(ConfigError::Kind::Schema, path, std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

}  // namespace mobcoin

#pragma once

// Day/year simulation loop.
//
// Each day runs these phases in a fixed order:
//   1. traffic state from the previous day's demand (one-day lag)
//   2. every person, in account order: work-from-home or mode choice, then
//      settlement of the commute (and of a business trip, if one occurs)
//   3. deliveries
//   4. on session days: replenishment and agent orders, call auction
//   5. metrics row
// A year ends with voting, expiry, the supply update and the next allocation.
//
// All randomness comes from seeded substreams: one choice stream per person,
// plus shared streams for business trips, deliveries and trading that are
// consumed in account order. Floating-point utilities influence outcomes
// only through sample_choice's 32-bit quantized comparison.

#include <mobcoin/agency.hpp>
#include <mobcoin/choice.hpp>
#include <mobcoin/config.hpp>
#include <mobcoin/flows.hpp>
#include <mobcoin/ledger.hpp>
#include <mobcoin/market.hpp>
#include <mobcoin/network.hpp>
#include <mobcoin/pricing.hpp>
#include <mobcoin/rng.hpp>
#include <mobcoin/voting.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

namespace mobcoin {

struct MetricsRow {
  std::int32_t day{0};
  std::int64_t trips{0};
  std::int64_t wfh{0};
  std::vector<double> split;  // per mode, sums to 1 when trips > 0
  PriceTicks clearing_price;
  Cents volume;
  Cents supply;  // coins in circulation = -(Agency balance), before any year-end expiry
  double emissions_g{0.0};
  double gini{0.0};
  std::int64_t forced_purchases{0};  // today
};

struct MarketRow {
  std::int32_t day{0};
  PriceTicks clearing_price;
  Cents volume;
  Cents fees;
  std::size_t n_orders{0};
};

struct VotingRow {
  int year{0};
  int measure_id{0};
  std::string score;
  bool selected{false};
};

struct YearSummary {
  int year{0};
  Cents allocated;
  std::vector<double> observed_split;
  Cents next_total;
  std::vector<int> selected_measures;
};

struct IntegrityReport {
  bool conservation{true};
  bool supply_matches_agency{true};
  bool non_negative{true};
  bool ok() const { return conservation && supply_matches_agency && non_negative; }
};

/// Gini coefficient of non-negative values; 0 for an empty or all-zero set.
inline double gini(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  double total = 0.0, weighted = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    total += v[i];
    weighted += static_cast<double>(i + 1) * v[i];
  }
  if (total <= 0.0) return 0.0;
  const double n = static_cast<double>(v.size());
  return std::clamp(2.0 * weighted / (n * total) - (n + 1.0) / n, 0.0, 1.0);
}

class Simulation {
 public:
  explicit Simulation(ScenarioConfig cfg, Ledger::Sink sink = {}, bool retain_events = false)
      : cfg_(std::move(cfg)),
        ledger_(std::move(sink), retain_events),
        schedule_(cfg_.schedule()),
        network_(cfg_.network()),
        price_(cfg_.trading.initial_price),
        business_rng_(cfg_.seed, StreamTag::BusinessTrip, 0),
        delivery_rng_(cfg_.seed, StreamTag::Delivery, 0),
        trading_rng_(cfg_.seed, StreamTag::Trading, 0) {
    const std::size_t n_modes = cfg_.modes.size();
    demand_prev_.assign(n_modes, 0.0);
    year_trips_.assign(n_modes, 0);
    build_population();
    for (std::uint32_t i = 0; i < cfg_.employment.employers; ++i) ledger_.open_account(AccountId::employer(i));
    for (std::uint32_t i = 0; i < cfg_.deliveries.merchants; ++i) ledger_.open_account(AccountId::merchant(i));
    employer_outflow_.assign(cfg_.employment.employers, Cents{});
    merchant_outflow_.assign(cfg_.deliveries.merchants, Cents{});

    std::vector<std::size_t> n_opts(agents_.size());
    for (std::size_t i = 0; i < agents_.size(); ++i) n_opts[i] = agents_[i].profile.options.size();
    year_total_ = total_entitlement(n_opts, cfg_.allocation);
    start_year();
  }

  const ScenarioConfig& config() const { return cfg_; }
  const Ledger& ledger() const { return ledger_; }
  const NetworkState& network() const { return network_; }
  std::vector<AgentProfile> profiles() const {
    std::vector<AgentProfile> out;
    for (const auto& a : agents_) out.push_back(a.profile);
    return out;
  }
  PriceTicks market_price() const { return price_; }
  Cents agency_reserve() const { return reserve_; }
  Cents year_total() const { return year_total_; }
  const FlowStats& flow_stats() const { return stats_; }
  const std::vector<MarketRow>& market_rows() const { return market_rows_; }
  const std::vector<VotingRow>& voting_rows() const { return voting_rows_; }
  const std::vector<YearSummary>& years() const { return years_; }
  const IntegrityReport& integrity() const { return integrity_; }
  std::int32_t day() const { return day_; }
  std::int32_t total_days() const { return cfg_.horizon_years * cfg_.allocation.period_days; }
  bool finished() const { return day_ >= total_days(); }

  /// Replaces one mode's rates from the next settled trip on.
  void set_rate(ModeIndex m, const ModeRate& r) {
    if (m >= schedule_.rates.size()) throw UnknownMode("#" + std::to_string(m));
    schedule_.rates[m] = r;
  }
  const PriceSchedule& schedule() const { return schedule_; }

  MetricsRow run_day() {
    const std::int32_t d = day_;
    const std::size_t n_modes = cfg_.modes.size();
    MetricsRow row;
    row.day = d;
    row.split.assign(n_modes, 0.0);
    const std::int64_t forced_before = stats_.forced_purchases;

    // 1. traffic state from yesterday's demand
    std::vector<TrafficState> traffic(n_modes);
    std::vector<double> ratio(n_modes);
    for (ModeIndex m = 0; m < n_modes; ++m) {
      traffic[m] = traffic_state(network_, m, demand_prev_[m]);
      ratio[m] = delay_ratio(network_.modes[m], demand_prev_[m]);
    }

    Settler settler(ledger_, reserve_, cfg_.market, price_, d, stats_);
    std::vector<std::int64_t> trips(n_modes, 0);

    // 2. persons
    for (std::size_t i = 0; i < agents_.size(); ++i) {
      Agent& a = agents_[i];
      const AccountId who = a.profile.account;
      utilities_.clear();
      choices_.clear();
      for (const auto& opt : a.profile.options) {
        const ModeSupply& sup = network_.modes[opt.mode];
        if (!sup.available) continue;
        const double minutes = opt.base_minutes * sup.travel_time_factor * ratio[opt.mode];
        const TripQuery q{opt.mode, opt.distance_km, minutes, cfg_.modes[opt.mode].occupancy, traffic[opt.mode]};
        const Cents p = trip_price(q, schedule_);
        choices_.push_back(Choice{opt.mode, p, opt.distance_km});
        utilities_.push_back(
            option_utility(opt.asc, a.profile.beta_time, a.profile.beta_cost, minutes, p, price_));
      }
      const Cents allowance = wfh_allowance(a);
      if (a.profile.wfh_eligible) {
        choices_.push_back(Choice{kWfh, Cents{}, 0.0});
        utilities_.push_back(a.profile.wfh_asc + a.profile.beta_cost * fiat_cost(allowance, price_));
      }
      if (choices_.empty()) {
        (void)a.rng.next_u32();  // keep the stream aligned across scenario variants
        continue;
      }
      probs_.resize(utilities_.size());
      choice_probabilities(utilities_, a.profile.logit_scale, probs_);
      const Choice& pick = choices_[sample_choice(probs_, a.rng)];

      memo_ = "trip:" + std::to_string(i);
      if (pick.mode == kWfh) {
        ++row.wfh;
        track_outflow(settler.settle_commute(who, WorkFromHome{}, a.contract, a.cap, cfg_.e_max, memo_));
      } else {
        ++trips[pick.mode];
        ++a.trips[pick.mode];
        row.emissions_g += pick.distance_km * cfg_.modes[pick.mode].mode.emission_factor;
        track_outflow(settler.settle_commute(who, Commute{pick.price}, a.contract, a.cap, cfg_.e_max, memo_));
      }

      if (a.contract && cfg_.employment.business_trip_rate > 0.0 &&
          business_rng_.bernoulli(cfg_.employment.business_trip_rate)) {
        const ModeIndex m = cfg_.employment.business_mode;
        const double dist = cfg_.employment.business_distance_km;
        const double minutes = network_.modes[m].base_time * network_.modes[m].travel_time_factor * ratio[m] *
                               dist / cfg_.population.reference_distance_km;
        const Cents p = trip_price(TripQuery{m, dist, minutes, cfg_.modes[m].occupancy, traffic[m]}, schedule_);
        ++trips[m];
        ++a.trips[m];
        row.emissions_g += dist * cfg_.modes[m].mode.emission_factor;
        memo_ = "business:" + std::to_string(i);
        track_outflow(settler.settle_business_trip(who, p, *a.contract, a.cap, cfg_.e_max, memo_));
      }
    }

    // 3. deliveries
    const auto& dspec = cfg_.deliveries;
    if (dspec.rate_per_person_day > 0.0 && dspec.merchants > 0) {
      for (std::size_t i = 0; i < agents_.size(); ++i) {
        if (!delivery_rng_.bernoulli(dspec.rate_per_person_day)) continue;
        DeliveryQuery q;
        q.customer = agents_[i].profile.account;
        q.merchant = AccountId::merchant(static_cast<std::uint32_t>(delivery_rng_.below(dspec.merchants)));
        q.distance_km = dspec.distance_km.sample(delivery_rng_.uniform());
        q.weight_kg = dspec.weight_kg.sample(delivery_rng_.uniform());
        q.volume_l = dspec.volume_l.sample(delivery_rng_.uniform());
        const Cents p = delivery_price(q, dspec.coefficients);
        memo_ = "delivery:" + std::to_string(i);
        const auto legs = settler.settle_delivery(q, dspec.model, p, memo_);
        for (const auto& l : legs)
          if (l.kind == EventKind::DeliveryCharge && l.from.kind == AccountKind::Merchant)
            merchant_outflow_[l.from.index] += l.amount;
      }
    }

    // 4. market session
    row.clearing_price = price_;
    if (d % cfg_.market.session_every == cfg_.market.session_every - 1) {
      const auto r = run_session(d);
      row.clearing_price = r.clearing_price;
      row.volume = r.volume;
    }

    // 5. metrics
    for (ModeIndex m = 0; m < n_modes; ++m) {
      row.trips += trips[m];
      year_trips_[m] += trips[m];
      demand_prev_[m] = static_cast<double>(trips[m]);
    }
    if (row.trips > 0)
      for (ModeIndex m = 0; m < n_modes; ++m)
        row.split[m] = static_cast<double>(trips[m]) / static_cast<double>(row.trips);
    row.supply = -ledger_.balance(AccountId::agency());
    row.forced_purchases = stats_.forced_purchases - forced_before;
    {
      const auto persons = ledger_.balances().of_kind(AccountKind::Person);
      std::vector<double> v(persons.size());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(persons[i].value);
      row.gini = gini(std::move(v));
    }
    check_integrity();

    ++day_;
    if (day_ % cfg_.allocation.period_days == 0) end_year(day_ / cfg_.allocation.period_days - 1);
    return row;
  }

 private:
  static constexpr ModeIndex kWfh = static_cast<ModeIndex>(-1);

  struct Agent {
    AgentProfile profile;
    std::optional<EmploymentContract> contract;
    Rng rng;
    EarnCapState cap;
    std::vector<std::int64_t> trips;  // this year, per mode
  };

  struct Choice {
    ModeIndex mode;
    Cents price;
    double distance_km;
  };

  Cents wfh_allowance(const Agent& a) const {
    if (!a.contract) return Cents{};
    const auto* w = std::get_if<WfhAllowance>(&a.contract->commute_policy);
    return w ? w->per_day : Cents{};
  }

  void build_population() {
    const auto& pop = cfg_.population;
    const auto& emp = cfg_.employment;
    const std::size_t n_modes = cfg_.modes.size();
    if (!pop.agents.empty()) {
      for (std::size_t i = 0; i < pop.agents.size(); ++i) {
        const auto& ex = pop.agents[i];
        Agent a = make_agent(i);
        a.profile.options = ex.options;
        a.profile.beta_time = ex.beta_time;
        a.profile.beta_cost = ex.beta_cost;
        a.profile.logit_scale = ex.logit_scale;
        a.profile.wfh_asc = ex.wfh_asc;
        if (ex.employer) {
          a.profile.employer = AccountId::employer(*ex.employer);
          a.contract = EmploymentContract{*a.profile.employer, ex.policy};
          a.profile.wfh_eligible = ex.wfh_eligible;
        }
        agents_.push_back(std::move(a));
      }
      return;
    }
    Rng rng(cfg_.seed, StreamTag::Population, 0);
    for (std::size_t i = 0; i < pop.count; ++i) {
      Agent a = make_agent(i);
      const double dist = pop.distance_km.sample(rng.uniform());
      const double scale = dist / pop.reference_distance_km;
      for (ModeIndex m = 0; m < n_modes; ++m) {
        const auto& ms = cfg_.modes[m];
        const double u_avail = rng.uniform();
        const double u_asc = rng.uniform();
        if (u_avail >= ms.availability) continue;
        a.profile.options.push_back(ModeOption{m, dist * ms.distance_factor, ms.supply.base_time * scale,
                                               ms.asc + pop.asc_jitter * (2.0 * u_asc - 1.0)});
      }
      if (a.profile.options.empty()) {
        // Everyone keeps at least the most widely available mode.
        ModeIndex best = 0;
        for (ModeIndex m = 1; m < n_modes; ++m)
          if (cfg_.modes[m].availability > cfg_.modes[best].availability) best = m;
        a.profile.options.push_back(ModeOption{best, dist * cfg_.modes[best].distance_factor,
                                               cfg_.modes[best].supply.base_time * scale, cfg_.modes[best].asc});
      }
      a.profile.beta_time = pop.beta_time;
      a.profile.beta_cost = pop.beta_cost;
      a.profile.logit_scale = pop.logit_scale;
      a.profile.wfh_asc = emp.wfh_asc;
      const double u_emp = rng.uniform();
      const double u_pol = rng.uniform();
      const double u_wfh = rng.uniform();
      const std::uint64_t employer = emp.employers > 0 ? rng.below(emp.employers) : 0;
      if (emp.employers > 0 && u_emp < emp.employed_share) {
        CommutePolicy policy = NoReimbursement{};
        if (u_pol < emp.share_job_ticket) policy = JobTicket{};
        else if (u_pol < emp.share_job_ticket + emp.share_wfh_allowance) policy = WfhAllowance{emp.wfh_allowance};
        a.profile.employer = AccountId::employer(static_cast<std::uint32_t>(employer));
        a.contract = EmploymentContract{*a.profile.employer, policy};
        a.profile.wfh_eligible = u_wfh < emp.wfh_eligible_share;
      }
      agents_.push_back(std::move(a));
    }
  }

  Agent make_agent(std::size_t i) {
    Agent a;
    a.profile.account = AccountId::person(static_cast<std::uint32_t>(i));
    a.rng = Rng(cfg_.seed, StreamTag::Choice, i);
    a.cap.agent = a.profile.account;
    a.cap.day = -1;
    a.trips.assign(cfg_.modes.size(), 0);
    ledger_.open_account(a.profile.account);
    return a;
  }

  void track_outflow(const std::vector<Transfer>& legs) {
    for (const auto& l : legs)
      if (l.from.kind == AccountKind::Employer &&
          (l.kind == EventKind::Reimbursement || l.kind == EventKind::Allowance))
        employer_outflow_[l.from.index] += l.amount;
  }

  ClearingResult run_session(std::int32_t d) {
    const auto& rules = cfg_.market;
    OrderBook book;
    const OrderBook::Backing backing = [this](AccountId id) -> std::optional<Cents> {
      if (id.is_agency()) return reserve_;
      if (id.index >= ledger_.balances().count(id.kind)) return std::nullopt;
      return ledger_.balance(id);
    };
    const auto whole_up = [](Cents c) { return Cents{(c.value + 99) / 100 * 100}; };
    const auto whole_down = [](Cents c) { return Cents{c.value / 100 * 100}; };

    const auto replenish = [&](AccountId id, Cents& outflow) {
      if (auto o = employer_replenishment(id, ledger_.balance(id), outflow, rules, d)) {
        o->quantity = whole_up(o->quantity);
        book.submit(*o, rules, backing);
      }
      outflow = Cents{};
    };
    for (std::uint32_t e = 0; e < employer_outflow_.size(); ++e) replenish(AccountId::employer(e), employer_outflow_[e]);
    for (std::uint32_t m = 0; m < merchant_outflow_.size(); ++m) replenish(AccountId::merchant(m), merchant_outflow_[m]);

    const auto& tr = cfg_.trading;
    for (const auto& a : agents_) {
      const AccountId who = a.profile.account;
      const Cents bal = ledger_.balance(who);
      const double u = trading_rng_.uniform();
      const double skew = tr.limit_spread * (2.0 * u - 1.0);
      const PriceTicks limit{round_half_away(static_cast<double>(price_.value) * (1.0 + skew))};
      if (bal < tr.low_balance) {
        book.submit(Order{0, who, Side::Buy, whole_up(tr.low_balance - bal), limit, d}, rules, backing);
      } else if (bal > tr.high_balance) {
        Cents q = min(whole_down(bal - tr.high_balance), whole_down(rules.sell_limit));
        while (q.value > 0 && q + fee_headroom(q, rules.fee_rate) > bal) q -= Cents::coins(1);
        if (q.value > 0) book.submit(Order{0, who, Side::Sell, q, limit, d}, rules, backing);
      }
    }
    Cents agency_offer = min(tr.agency_sell_per_session, whole_down(reserve_));
    while (agency_offer.value > 0 && agency_offer + fee_headroom(agency_offer, rules.fee_rate) > reserve_)
      agency_offer -= Cents::coins(1);
    if (agency_offer.value > 0)
      book.submit(Order{0, AccountId::agency(), Side::Sell, agency_offer, price_, d}, rules, backing);

    const ClearingResult r = clear_session(book.orders(), rules, price_);
    const auto legs = settlement_transfers(r, d);
    ledger_.commit(d, legs);
    for (const auto& l : legs) {
      if (l.from.is_agency()) reserve_ -= l.amount;
      if (l.to.is_agency()) reserve_ += l.amount;
    }
    if (r.volume.value > 0) price_ = r.clearing_price;
    market_rows_.push_back(MarketRow{d, r.clearing_price, r.volume, r.fees_collected, book.orders().size()});
    return r;
  }

  void start_year() {
    const int year = day_ / cfg_.allocation.period_days;
    std::vector<std::size_t> n_opts(agents_.size());
    for (std::size_t i = 0; i < agents_.size(); ++i) n_opts[i] = agents_[i].profile.options.size();
    const auto legs = allocate(n_opts, cfg_.allocation, year_total_, year);
    ledger_.commit(day_, legs);
    reserve_ += Cents{round_half_away(cfg_.allocation.reserve_fraction * static_cast<double>(year_total_.value))};
    allocated_this_year_ = year_total_;
    check_integrity();
  }

  void end_year(int year) {
    const auto& vs = cfg_.voting;
    const std::int32_t last_day = day_ - 1;

    // Voting on year-end balances.
    const auto weights = voting_weights(ledger_.balances(), vs.weight_rule);
    std::vector<Ballot> ballots;
    for (std::size_t i = 0; i < agents_.size(); ++i) {
      if (weights[i] <= 0) continue;
      ballots.push_back(make_ballot(agents_[i], weights[i]));
    }
    std::vector<int> selected;
    if (vs.mode == VotingSpec::Mode::Split) {
      const auto tally = tally_split(ballots, vs.measures, vs.budget);
      for (const auto& s : tally.ranking) voting_rows_.push_back(VotingRow{year, s.id, format_score(s.score), s.selected});
      selected = tally.selected;
    } else if (const auto winner = tally_bundle(ballots, vs.bundles)) {
      for (const auto& b : vs.bundles) {
        __int128 total = 0;
        for (const auto& bal : ballots)
          if (bal.bundle == b.id) total += static_cast<__int128>(bal.weight) * kFractionOne;
        for (int mid : b.measures) voting_rows_.push_back(VotingRow{year, mid, format_score(total), b.id == *winner});
        if (b.id == *winner) selected = b.measures;
      }
    }
    std::vector<Measure> chosen;
    for (const auto& m : vs.measures)
      if (std::find(selected.begin(), selected.end(), m.id) != selected.end()) chosen.push_back(m);
    network_ = apply_measures(std::move(network_), chosen);

    if (cfg_.allocation.expire_at_year_end) ledger_.commit(last_day, year_end_expiry(ledger_.balances(), year));

    std::vector<double> split(cfg_.modes.size(), 0.0);
    const std::int64_t total = std::accumulate(year_trips_.begin(), year_trips_.end(), std::int64_t{0});
    if (total > 0)
      for (std::size_t m = 0; m < split.size(); ++m)
        split[m] = static_cast<double>(year_trips_[m]) / static_cast<double>(total);
    else
      split = cfg_.controller.target_split;
    const Cents next = adjust_supply(split, cfg_.controller, year_total_);
    years_.push_back(YearSummary{year, allocated_this_year_, split, next, selected});

    std::fill(year_trips_.begin(), year_trips_.end(), 0);
    for (auto& a : agents_) std::fill(a.trips.begin(), a.trips.end(), 0);
    year_total_ = next;
    check_integrity();
    if (!finished()) start_year();
  }

  // A person's split ballot: fractions proportional to how many of this year's
  // trips used a mode each measure improves. Bundle ballots pick the bundle
  // with the largest summed benefit (lowest id on ties).
  Ballot make_ballot(const Agent& a, std::int64_t weight) const {
    const auto& vs = cfg_.voting;
    Ballot b;
    b.voter = a.profile.account;
    b.weight = weight;
    std::vector<std::int64_t> benefit(vs.measures.size(), 0);
    for (std::size_t k = 0; k < vs.measures.size(); ++k)
      for (const auto& e : vs.measures[k].effects) {
        const bool improves = (e.param == EffectParam::TravelTimeFactor && e.factor < 1.0) ||
                              (e.param == EffectParam::CapacityFactor && e.factor > 1.0) ||
                              (e.param == EffectParam::Availability && e.available);
        if (improves) benefit[k] += a.trips[e.mode];
      }
    if (vs.mode == VotingSpec::Mode::Split) {
      const auto ppm = largest_remainder(kFractionOne, benefit);
      for (std::size_t k = 0; k < ppm.size(); ++k)
        if (ppm[k] > 0) b.split.emplace_back(vs.measures[k].id, ppm[k]);
    } else {
      std::int64_t best = 0;
      for (const auto& bundle : vs.bundles) {
        std::int64_t sum = 0;
        for (int mid : bundle.measures)
          for (std::size_t k = 0; k < vs.measures.size(); ++k)
            if (vs.measures[k].id == mid) sum += benefit[k];
        if (sum > best) {
          best = sum;
          b.bundle = bundle.id;
        }
      }
    }
    return b;
  }

  void check_integrity() {
    const auto& bal = ledger_.balances();
    Cents held;
    bool non_negative = true;
    bal.for_each([&](AccountId id, Cents c) {
      if (id.is_agency()) return;
      held += c;
      if (c.value < 0) non_negative = false;
    });
    integrity_.conservation = integrity_.conservation && conservation_check(bal);
    integrity_.supply_matches_agency = integrity_.supply_matches_agency && held == -bal.get(AccountId::agency());
    integrity_.non_negative = integrity_.non_negative && non_negative;
  }

 private:
  ScenarioConfig cfg_;
  Ledger ledger_;
  PriceSchedule schedule_;
  NetworkState network_;
  std::vector<Agent> agents_;
  PriceTicks price_;
  Cents reserve_;
  Cents year_total_;
  Cents allocated_this_year_;
  FlowStats stats_;
  Rng business_rng_;
  Rng delivery_rng_;
  Rng trading_rng_;
  std::vector<double> demand_prev_;
  std::vector<std::int64_t> year_trips_;
  std::vector<Cents> employer_outflow_;
  std::vector<Cents> merchant_outflow_;
  std::vector<MarketRow> market_rows_;
  std::vector<VotingRow> voting_rows_;
  std::vector<YearSummary> years_;
  IntegrityReport integrity_;
  std::int32_t day_{0};

  std::vector<double> utilities_;
  std::vector<double> probs_;
  std::vector<Choice> choices_;
  std::string memo_;
};

}  // namespace mobcoin

#pragma once

// Whole-run driver and output artifacts:
//   events.jsonl  ledger events, one JSON object per line, seq order
//   metrics.csv   one row per day
//   market.csv    one row per market session
//   voting.csv    one row per measure and year
//   summary.json  config hash, seed, final-year KPIs, integrity checks

#include <mobcoin/io.hpp>
#include <mobcoin/simulation.hpp>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <string>
#include <vector>

namespace mobcoin {

inline std::string format_price(PriceTicks p) {
  const std::int64_t v = p.value;
  const std::int64_t mag = v < 0 ? -v : v;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%lld.%02lld", v < 0 ? "-" : "", static_cast<long long>(mag / 100),
                static_cast<long long>(mag % 100));
  return buf;
}

inline std::string format_fixed(double x, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, x);
  return buf;
}

inline std::string metrics_header(const ScenarioConfig& cfg) {
  std::string h = "day,trips,wfh";
  for (const auto& m : cfg.modes) h += ",share_" + m.mode.id;
  h += ",clearing_price,volume_cents,supply_cents,emissions_g,gini,forced_purchases\n";
  return h;
}

inline std::string metrics_line(const MetricsRow& r) {
  std::string s = std::to_string(r.day) + "," + std::to_string(r.trips) + "," + std::to_string(r.wfh);
  for (double x : r.split) s += "," + format_fixed(x, 9);
  s += "," + format_price(r.clearing_price) + "," + std::to_string(r.volume.value) + "," +
       std::to_string(r.supply.value) + "," + format_fixed(r.emissions_g, 3) + "," + format_fixed(r.gini, 6) + "," +
       std::to_string(r.forced_purchases) + "\n";
  return s;
}

/// Canonical config digest: SHA-256 of the sorted-key JSON dump.
inline std::string config_hash(const ScenarioConfig& cfg) { return sha256_hex(cfg.source.dump()); }

/// Replaces the scenario seed (the CLI's --seed), keeping the hash in sync.
inline ScenarioConfig with_seed(ScenarioConfig cfg, std::uint64_t seed) {
  cfg.seed = seed;
  cfg.source["seed"] = seed;
  return cfg;
}

struct RunResult {
  std::filesystem::path out_dir;
  std::string events_sha256;
  std::uint64_t event_count{0};
  bool ok{false};
  IntegrityReport integrity;
  nlohmann::json summary;
};

namespace detail {

inline nlohmann::json build_summary(const ScenarioConfig& cfg, const Simulation& sim,
                                    const std::vector<double>& year_avg_split,
                                    const std::vector<double>& final_day_split, const std::string& events_sha,
                                    std::uint64_t events, const std::string& status, const std::string& error) {
  nlohmann::json s;
  s["status"] = status;
  if (!error.empty()) s["error"] = error;
  s["config_hash"] = config_hash(cfg);
  s["seed"] = cfg.seed;
  s["days_simulated"] = sim.day();
  s["persons"] = cfg.population_size();
  s["events"] = {{"count", events}, {"sha256", events_sha}};

  nlohmann::json kpi;
  nlohmann::json split = nlohmann::json::object();
  nlohmann::json last = nlohmann::json::object();
  for (std::size_t m = 0; m < cfg.modes.size(); ++m) {
    split[cfg.modes[m].mode.id] = m < year_avg_split.size() ? year_avg_split[m] : 0.0;
    last[cfg.modes[m].mode.id] = m < final_day_split.size() ? final_day_split[m] : 0.0;
  }
  kpi["modal_split_year"] = split;
  kpi["modal_split_last_day"] = last;
  kpi["market_price_fiat_cents"] = sim.market_price().as_fiat_cents();
  kpi["supply_cents"] = -sim.ledger().balance(AccountId::agency()).value;
  kpi["agency_balance_cents"] = sim.ledger().balance(AccountId::agency()).value;
  kpi["agency_reserve_cents"] = sim.agency_reserve().value;
  kpi["forced_purchases"] = sim.flow_stats().forced_purchases;
  kpi["forced_purchase_fiat_cents"] = sim.flow_stats().forced_fiat;
  kpi["penalty_fiat_cents"] = sim.flow_stats().penalty_fiat;
  kpi["earn_cap_saturations"] = sim.flow_stats().earn_saturations;
  s["final_year"] = kpi;

  nlohmann::json years = nlohmann::json::array();
  for (const auto& y : sim.years()) {
    nlohmann::json obs = nlohmann::json::object();
    for (std::size_t m = 0; m < cfg.modes.size(); ++m) obs[cfg.modes[m].mode.id] = y.observed_split[m];
    years.push_back({{"year", y.year},
                     {"allocated_cents", y.allocated.value},
                     {"observed_split", obs},
                     {"next_total_cents", y.next_total.value},
                     {"selected_measures", y.selected_measures}});
  }
  s["years"] = years;

  const auto& in = sim.integrity();
  s["integrity"] = {{"conservation", in.conservation},
                    {"supply_matches_agency", in.supply_matches_agency},
                    {"non_negative", in.non_negative},
                    {"passed", in.ok()}};
  return s;
}

}  // namespace detail

/// Runs the whole horizon and writes all artifacts into `out_dir`. On a
/// runtime error the partial outputs are flushed, summary.json carries
/// status "failed", and the exception is rethrown.
inline RunResult run(const ScenarioConfig& cfg, const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  EventLogWriter events((out_dir / "events.jsonl").string());
  std::ofstream metrics(out_dir / "metrics.csv", std::ios::binary);
  std::ofstream market(out_dir / "market.csv", std::ios::binary);
  std::ofstream voting(out_dir / "voting.csv", std::ios::binary);
  if (!metrics || !market || !voting) throw std::runtime_error("cannot create outputs in " + out_dir.string());
  metrics << metrics_header(cfg);
  market << "day,clearing_price,volume_cents,fees_cents,n_orders\n";
  voting << "year,measure_id,score,selected\n";

  Simulation sim(cfg, [&events](const LedgerEvent& e) { events.write(e); });
  std::vector<std::int64_t> year_trips(cfg.modes.size(), 0);
  std::vector<double> year_avg(cfg.modes.size(), 0.0), last_split(cfg.modes.size(), 0.0);
  std::size_t market_written = 0, voting_written = 0;

  const auto drain_rows = [&] {
    const auto& mr = sim.market_rows();
    for (; market_written < mr.size(); ++market_written) {
      const auto& r = mr[market_written];
      market << r.day << ',' << format_price(r.clearing_price) << ',' << r.volume.value << ',' << r.fees.value << ','
             << r.n_orders << '\n';
    }
    const auto& vr = sim.voting_rows();
    for (; voting_written < vr.size(); ++voting_written) {
      const auto& r = vr[voting_written];
      voting << r.year << ',' << r.measure_id << ',' << r.score << ',' << (r.selected ? 1 : 0) << '\n';
    }
  };

  const auto write_summary = [&](const std::string& status, const std::string& error) {
    drain_rows();
    metrics.flush();
    market.flush();
    voting.flush();
    RunResult res;
    res.out_dir = out_dir;
    res.event_count = events.count();
    res.events_sha256 = events.finish();
    res.integrity = sim.integrity();
    res.ok = status == "ok" && res.integrity.ok();
    res.summary = detail::build_summary(cfg, sim, year_avg, last_split, res.events_sha256, res.event_count, status,
                                        error);
    std::ofstream(out_dir / "summary.json") << res.summary.dump(2) << '\n';
    return res;
  };

  try {
    std::string line;
    while (!sim.finished()) {
      const MetricsRow row = sim.run_day();
      metrics << metrics_line(row);
      for (std::size_t m = 0; m < row.split.size(); ++m)
        year_trips[m] += static_cast<std::int64_t>(std::llround(row.split[m] * static_cast<double>(row.trips)));
      if (row.trips > 0) last_split = row.split;
      if (sim.day() % cfg.allocation.period_days == 0) {
        const auto total = std::accumulate(year_trips.begin(), year_trips.end(), std::int64_t{0});
        for (std::size_t m = 0; m < year_trips.size(); ++m)
          year_avg[m] = total > 0 ? static_cast<double>(year_trips[m]) / static_cast<double>(total) : 0.0;
        std::fill(year_trips.begin(), year_trips.end(), 0);
      }
      drain_rows();
    }
  } catch (const std::exception& e) {
    write_summary("failed", e.what());
    throw;
  }
  return write_summary("ok", "");
}

}  // namespace mobcoin

// mobcoin: run, validate, replay and report scenarios.
//
// Exit codes: 0 success, 1 validation error, 2 runtime error,
// 3 replay integrity failure.

#include <mobcoin/config.hpp>
#include <mobcoin/io.hpp>
#include <mobcoin/run.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace mobcoin;

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kRuntime = 2;
constexpr int kIntegrity = 3;

int report_config_error(const ConfigError& e) {
  std::cerr << "error: " << to_string(e.kind) << ": " << e.what() << '\n';
  return kValidation;
}

int cmd_validate(const std::string& path) {
  try {
    const auto cfg = load_config(path);
    std::cout << "ok: " << cfg.modes.size() << " modes, " << cfg.population_size() << " persons, "
              << cfg.horizon_years << " year(s)\n";
    return kOk;
  } catch (const ConfigError& e) {
    return report_config_error(e);
  }
}

int cmd_run(const std::string& path, const std::string& out, std::optional<std::uint64_t> seed) {
  ScenarioConfig cfg;
  try {
    cfg = load_config(path);
  } catch (const ConfigError& e) {
    return report_config_error(e);
  }
  if (seed) cfg = with_seed(std::move(cfg), *seed);
  try {
    const auto res = run(cfg, out);
    std::cout << "wrote " << res.event_count << " events to " << (fs::path(out) / "events.jsonl").string() << '\n'
              << "events sha256 " << res.events_sha256 << '\n';
    if (!res.integrity.ok()) {
      std::cerr << "error: integrity checks failed, see summary.json\n";
      return kRuntime;
    }
    return kOk;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
}

int cmd_replay(const std::string& path) {
  std::vector<LedgerEvent> events;
  try {
    events = read_events(path);
  } catch (const EventParseError& e) {
    std::cerr << "integrity failure: " << e.what() << '\n';
    return kIntegrity;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntime;
  }
  AuditReport audit = audit_events(events);

  // Cross-check against the run's summary when it sits next to the log.
  const fs::path summary_path = fs::path(path).parent_path() / "summary.json";
  if (fs::exists(summary_path)) {
    try {
      std::ifstream in(summary_path);
      const auto s = nlohmann::json::parse(in);
      const auto& ev = s.at("events");
      if (ev.at("count").get<std::uint64_t>() != events.size())
        audit.problems.emplace_back("event count differs from summary.json");
      if (ev.at("sha256").get<std::string>() != sha256_file(path))
        audit.problems.emplace_back("events sha256 differs from summary.json");
      if (s.at("final_year").at("agency_balance_cents").get<std::int64_t>() !=
          audit.balances.get(AccountId::agency()).value)
        audit.problems.emplace_back("agency balance differs from summary.json");
    } catch (const nlohmann::json::exception& e) {
      audit.problems.emplace_back(std::string("unreadable summary.json: ") + e.what());
    }
  }

  std::cout << "events " << audit.events << '\n';
  std::size_t zero = 0;
  audit.balances.for_each([&](AccountId id, Cents c) {
    if (c.value == 0 && id.kind == AccountKind::Person) {
      ++zero;
      return;
    }
    std::cout << id.to_string() << ' ' << format_coins(c) << '\n';
  });
  if (zero > 0) std::cout << zero << " person accounts at 0.00\n";
  std::cout << "total " << format_coins(audit.balances.total()) << '\n';

  if (!audit.ok()) {
    for (const auto& p : audit.problems) std::cerr << "integrity failure: " << p << '\n';
    return kIntegrity;
  }
  std::cout << "integrity ok\n";
  return kOk;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

int cmd_report(const std::string& dir) {
  const fs::path base(dir);
  std::ifstream metrics(base / "metrics.csv");
  std::ifstream summary_in(base / "summary.json");
  if (!metrics || !summary_in) {
    std::cerr << "error: " << dir << " does not hold metrics.csv and summary.json\n";
    return kRuntime;
  }
  std::string header, line, last;
  std::getline(metrics, header);
  while (std::getline(metrics, line))
    if (!line.empty()) last = line;
  nlohmann::json s;
  try {
    s = nlohmann::json::parse(summary_in);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: summary.json: " << e.what() << '\n';
    return kRuntime;
  }

  std::cout << "status        " << s.value("status", "?") << '\n'
            << "seed          " << s.value("seed", std::uint64_t{0}) << '\n'
            << "config hash   " << s.value("config_hash", "") << '\n'
            << "days          " << s.value("days_simulated", 0) << '\n';
  if (!last.empty()) {
    const auto cols = split_csv(header);
    const auto vals = split_csv(last);
    std::cout << "\nmodal split (day " << vals.at(0) << ")\n";
    for (std::size_t i = 0; i < cols.size() && i < vals.size(); ++i)
      if (cols[i].rfind("share_", 0) == 0) std::printf("  %-10s %s\n", cols[i].substr(6).c_str(), vals[i].c_str());
  }
  if (s.contains("final_year")) {
    const auto& k = s["final_year"];
    std::cout << "\nmarket price  " << k.value("market_price_fiat_cents", 0.0) << " fiat-cents per coin\n"
              << "supply        " << format_coins(Cents{k.value("supply_cents", std::int64_t{0})}) << " coins\n"
              << "forced buys   " << k.value("forced_purchases", std::int64_t{0}) << '\n';
  }
  if (s.contains("integrity")) std::cout << "integrity     " << (s["integrity"].value("passed", false) ? "ok" : "FAILED") << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"MobilityCoin scenario simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir, events_path, report_dir;
  std::optional<std::uint64_t> seed;

  auto* run_cmd = app.add_subcommand("run", "Run a scenario and write its artifacts");
  run_cmd->add_option("config", config_path, "Scenario JSON")->required();
  run_cmd->add_option("--out", out_dir, "Output directory")->required();
  run_cmd->add_option("--seed", seed, "Override the scenario seed");

  auto* validate_cmd = app.add_subcommand("validate", "Check a scenario file");
  validate_cmd->add_option("config", config_path, "Scenario JSON")->required();

  auto* replay_cmd = app.add_subcommand("replay", "Rebuild balances from an event log and verify it");
  replay_cmd->add_option("events", events_path, "events.jsonl")->required();

  auto* report_cmd = app.add_subcommand("report", "Summarize a run directory");
  report_cmd->add_option("out_dir", report_dir, "Run output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kValidation;
  }

  if (*run_cmd) return cmd_run(config_path, out_dir, seed);
  if (*validate_cmd) return cmd_validate(config_path);
  if (*replay_cmd) return cmd_replay(events_path);
  return cmd_report(report_dir);
}

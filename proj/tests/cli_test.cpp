#include <mobcoin/io.hpp>

#include <gtest/gtest.h>

#include "support.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <sstream>

using namespace mobcoin;
using namespace mobcoin::testing;

namespace {

struct Result {
  int code{-1};
  std::string out;
};

Result cli(const std::string& args, const std::filesystem::path& dir) {
  const auto out = dir / "stdout.txt";
  const std::string cmd = std::string(MOBCOIN_CLI) + " " + args + " > " + out.string() + " 2> " +
                          (dir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  Result r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  return r;
}

std::filesystem::path small_config(const std::filesystem::path& dir) {
  auto j = reference_json();
  j["population"]["count"] = 40;
  const auto p = dir / "small.json";
  std::ofstream(p) << j.dump(2);
  return p;
}

std::vector<std::string> lines(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::string> v;
  std::string l;
  while (std::getline(in, l)) v.push_back(l);
  return v;
}

}  // namespace

TEST(Cli, ValidateReference) {
  const auto dir = scratch_dir("cli_validate");
  const auto r = cli("validate " + reference_path().string(), dir);
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("5 modes"), std::string::npos);
}

TEST(Cli, EveryShippedScenarioValidates) {
  const auto dir = scratch_dir("cli_scenarios");
  int n = 0;
  for (const auto& entry : std::filesystem::directory_iterator(source_dir() / "scenarios")) {
    if (entry.path().extension() != ".json") continue;
    ++n;
    EXPECT_EQ(cli("validate " + entry.path().string(), dir).code, 0) << entry.path();
  }
  EXPECT_GE(n, 2);
}

TEST(Cli, InvalidConfigExitsOne) {
  const auto dir = scratch_dir("cli_invalid");
  auto j = reference_json();
  j["supply_controller"]["controlled_mode"] = "zeppelin";
  std::ofstream(dir / "bad.json") << j.dump();
  EXPECT_EQ(cli("validate " + (dir / "bad.json").string(), dir).code, 1);
  EXPECT_EQ(cli("run " + (dir / "bad.json").string() + " --out " + (dir / "out").string(), dir).code, 1);
  const auto err = lines(dir / "stderr.txt");
  ASSERT_FALSE(err.empty());
  EXPECT_NE(err[0].find("dangling reference"), std::string::npos);
  EXPECT_EQ(cli("frobnicate", dir).code, 1);
}

TEST(Cli, RunReportReplay) {
  const auto dir = scratch_dir("cli_run");
  const auto out = dir / "out";
  ASSERT_EQ(cli("run " + small_config(dir).string() + " --out " + out.string() + " --seed 9", dir).code, 0);

  const auto report = cli("report " + out.string(), dir);
  ASSERT_EQ(report.code, 0);
  EXPECT_NE(report.out.find("seed          9"), std::string::npos);
  // The modal split printed by report is the last metrics.csv row.
  const auto metrics = lines(out / "metrics.csv");
  std::vector<std::string> header, last;
  {
    std::stringstream h(metrics.front()), l(metrics.back());
    std::string cell;
    while (std::getline(h, cell, ',')) header.push_back(cell);
    while (std::getline(l, cell, ',')) last.push_back(cell);
  }
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i].rfind("share_", 0) == 0) {
      char expect[128];
      std::snprintf(expect, sizeof expect, "  %-10s %s\n", header[i].substr(6).c_str(), last[i].c_str());
      EXPECT_NE(report.out.find(expect), std::string::npos) << expect;
    }

  const auto replay = cli("replay " + (out / "events.jsonl").string(), dir);
  EXPECT_EQ(replay.code, 0);
  EXPECT_NE(replay.out.find("integrity ok"), std::string::npos);
}

TEST(Cli, TamperedLogFailsReplay) {
  const auto dir = scratch_dir("cli_tamper");
  const auto out = dir / "out";
  ASSERT_EQ(cli("run " + small_config(dir).string() + " --out " + out.string(), dir).code, 0);
  auto events = read_events((out / "events.jsonl").string());
  // Change one TripCharge amount by a single coin-cent.
  for (auto& e : events)
    if (e.kind == EventKind::TripCharge) {
      e.amount.value += 1;
      break;
    }
  {
    std::ofstream f(out / "events.jsonl", std::ios::binary);
    for (const auto& e : events) f << event_line(e);
  }
  EXPECT_EQ(cli("replay " + (out / "events.jsonl").string(), dir).code, 3);

  // Same edit with the summary removed is still caught by the log itself.
  std::filesystem::remove(out / "summary.json");
  EXPECT_EQ(cli("replay " + (out / "events.jsonl").string(), dir).code, 3);
}

TEST(Cli, MalformedLogFailsReplay) {
  const auto dir = scratch_dir("cli_malformed");
  std::ofstream(dir / "events.jsonl") << "{\"seq\":0,\n";
  EXPECT_EQ(cli("replay " + (dir / "events.jsonl").string(), dir).code, 3);
}

// Copyright 2026 The mpteleport Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "catch_amalgamated.hpp"
#include "json.hpp"
#include "run_config.hpp"

namespace {

struct Result {
  int status;
  std::string out;
  std::string log;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "mpteleport");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, log;
  const int status = mpt::cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, log);
  return {status, out.str(), log.str()};
}

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line[0] != '#') lines.push_back(line);
  }
  return lines;
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "mpteleport_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("optimal-n", "[cli]") {
  const auto r = run_cli({"optimal-n", "--eta", "0.05"});
  REQUIRE(r.status == 0);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "eta_M,n_opt");
  CHECK(lines[1].substr(lines[1].find(',') + 1) == "4");
}

TEST_CASE("success probability sweep", "[cli]") {
  const auto r = run_cli({"sweep", "--figure", "4", "--n", "1,2,3,4"});
  REQUIRE(r.status == 0);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 52);
  CHECK(lines[0] == "eta_M,P_N1,P_N2,P_N3,P_N4");
  CHECK(lines[1] == "0,0.5,0.75,0.875,0.9375");
}

TEST_CASE("thresholds table", "[cli]") {
  const auto r = run_cli({"thresholds", "--targets", "0.999,0.99,0.90"});
  REQUIRE(r.status == 0);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 16);
  CHECK(lines[0] == "target_fidelity,channel,eta_max,eta_max_2sf,fidelity_at_threshold,iterations");
  CHECK(r.out.find("# command = thresholds") != std::string::npos);
}

TEST_CASE("json output", "[cli]") {
  const auto r = run_cli({"sweep", "--figure", "2", "--eta-m-grid", "0:0.2:3", "--eta-c-grid", "0:0.4:5", "--format", "json"});
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j.at("meta").at("command") == "sweep");
  CHECK(j.at("axes").size() == 2);
  CHECK(j.at("values").size() == 15 * j.at("series").size());
}

TEST_CASE("usage errors exit with status 2", "[cli]") {
  CHECK(run_cli({"bogus"}).status == 2);
  CHECK(run_cli({}).status == 2);
  CHECK(run_cli({"thresholds", "--no-such-flag"}).status == 2);
  CHECK(run_cli({"sweep", "--eta-m-grid", "1:0:3"}).status == 2);
  CHECK(run_cli({"sweep", "--eta-m-grid", "0:1"}).status == 2);
  CHECK(run_cli({"sweep", "--figure", "5"}).status == 2);
  CHECK(run_cli({"thresholds", "--format", "xml"}).status == 2);
  CHECK(run_cli({"optimal-n"}).status == 2);
  CHECK(run_cli({"verify", "--cases", "0"}).status == 2);
}

TEST_CASE("verify passes on a small seeded run", "[cli]") {
  const auto r = run_cli({"verify", "--cases", "1", "--n", "1", "--carrier", "psp"});
  CHECK(r.status == 0);
  CHECK(r.out.find("fidelity/psp") != std::string::npos);
}

TEST_CASE("verify reports a runtime failure with status 1", "[cli]") {
  // Truncation too small for alpha = 1.6: the oracle refuses to run.
  const auto r = run_cli({"verify", "--cases", "1", "--n", "1", "--carrier", "cs", "--alpha", "1.6", "--fock-dim", "8"});
  CHECK(r.status == 1);
  CHECK_FALSE(r.log.empty());
}

TEST_CASE("identical configs give byte-identical files", "[cli][property]") {
  const auto a = scratch("a.csv"), b = scratch("b.csv");
  const std::vector<std::string> common{"sweep", "--figure", "3", "--eta-c-grid", "0:0.5:6", "--quad-order", "16"};
  auto args_a = common, args_b = common;
  args_a.insert(args_a.end(), {"--out", a.string()});
  args_b.insert(args_b.end(), {"--out", b.string()});
  REQUIRE(run_cli(args_a).status == 0);
  REQUIRE(run_cli(args_b).status == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK_FALSE(slurp(a).empty());

  const auto va = scratch("va.csv"), vb = scratch("vb.csv");
  REQUIRE(run_cli({"verify", "--cases", "2", "--n", "1", "--seed", "99", "--out", va.string()}).status == 0);
  REQUIRE(run_cli({"verify", "--cases", "2", "--n", "1", "--seed", "99", "--out", vb.string()}).status == 0);
  CHECK(slurp(va) == slurp(vb));
}

TEST_CASE("config file with flag override", "[cli]") {
  const auto cfg = scratch("run.ini");
  {
    std::ofstream f(cfg);
    f << "command = optimal-n\n" << "eta-m = 0.5\n";
  }
  auto r = run_cli({"--config", cfg.string()});
  REQUIRE(r.status == 0);
  CHECK(data_lines(r.out).back().substr(data_lines(r.out).back().find(',') + 1) == "1");

  r = run_cli({"--config", cfg.string(), "--eta-m", "0.05"});
  REQUIRE(r.status == 0);
  CHECK(data_lines(r.out).back().substr(data_lines(r.out).back().find(',') + 1) == "4");

  const auto sweep_cfg = scratch("sweep.ini");
  {
    std::ofstream f(sweep_cfg);
    f << "command = sweep\nfigure = 4\nn-photons = 1,3\neta-m-grid = 0:1:3\n";
  }
  r = run_cli({"--config", sweep_cfg.string()});
  REQUIRE(r.status == 0);
  const auto lines = data_lines(r.out);
  REQUIRE(lines.size() == 4);
  CHECK(lines[0] == "eta_M,P_N1,P_N3");
  CHECK(lines[1] == "0,0.5,0.875");

  const auto bad_cfg = scratch("bad.ini");
  {
    std::ofstream f(bad_cfg);
    f << "command = sweep\nno-such-key = 3\n";
  }
  CHECK(run_cli({"--config", bad_cfg.string()}).status == 2);
}

TEST_CASE("grid parsing", "[cli]") {
  const auto g = mpt::cli::parse_grid("0:0.5:11");
  CHECK(g.min == 0.0);
  CHECK(g.max == 0.5);
  CHECK(g.count == 11);
  CHECK_THROWS_AS(mpt::cli::parse_grid("0:0.5"), mpt::cli::UsageError);
  CHECK_THROWS_AS(mpt::cli::parse_grid("a:b:c"), mpt::cli::UsageError);
}

#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "coreproj/command.hpp"
#include "coreproj/errors.hpp"
#include "coreproj/json_io.hpp"
#include "instances.hpp"

using namespace coreproj;
using namespace coreproj::cli;

namespace {

const std::filesystem::path kData = COREPROJ_TEST_DATA;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(CommandRequest req) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = execute(req, out, err);
  return {code, out.str(), err.str()};
}

CommandRequest on_game(Subcommand sub, const std::string& file) {
  CommandRequest req;
  req.subcommand = sub;
  req.game_path = kData / file;
  return req;
}

/// Runs the installed binary through the shell; returns exit code and stdout.
std::pair<int, std::string> shell(const std::string& args) {
  const std::string cmd = std::string(COREPROJ_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (const std::size_t got = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("subcommand names round-trip") {
  for (auto s : {Subcommand::check, Subcommand::project, Subcommand::failure, Subcommand::reallocate,
                 Subcommand::least_core, Subcommand::chebyshev, Subcommand::market_game}) {
    CHECK(parse_subcommand(subcommand_name(s)) == s);
  }
  CHECK_FALSE(parse_subcommand("nucleolus"));
}

TEST_CASE("vector parsing") {
  CHECK(parse_vector("1,0,0") == std::vector{1.0, 0.0, 0.0});
  CHECK(parse_vector(" 0.5, -1e-3 ,2") == std::vector{0.5, -1e-3, 2.0});
  CHECK_THROWS_AS(parse_vector("1,,2"), ParseError);
  CHECK_THROWS_AS(parse_vector("1,x"), ParseError);
  CHECK_THROWS_AS(parse_vector(""), ParseError);
  CHECK_THROWS_AS(parse_vector("1,inf"), ParseError);
}

TEST_CASE("check reports an unbalanced game") {
  const Run r = run(on_game(Subcommand::check, "g_ex1.json"));
  CHECK(r.code == kExitOk);
  const Json doc = Json::parse(r.out);
  CHECK(doc["balanced"] == false);
  CHECK(doc["max_balanced_worth"].get<double>() == 1.2);
  CHECK(doc["grand_worth"].get<double>() == 1.0);
  CHECK(doc["witness"] == Json::parse(R"({"a,b": 0.5, "a,c": 0.5, "b,c": 0.5})"));
  CHECK(doc["exact_coalitions"].is_null());
  CHECK(doc["schema"] == 1);
}

TEST_CASE("check lists exact coalitions of a balanced game") {
  const Json doc = Json::parse(run(on_game(Subcommand::check, "g_point.json")).out);
  CHECK(doc["balanced"] == true);
  CHECK(doc["exact_coalitions"] == Json::array({"a,b", "a,c", "b,c", "a,b,c"}));
}

TEST_CASE("project") {
  auto req = on_game(Subcommand::project, "g_bal.json");
  req.x = {1.0, 0.0, 0.0};
  const Run r = run(req);
  REQUIRE(r.code == kExitOk);
  const Json doc = Json::parse(r.out);
  CHECK(doc["point"] == Json::array({0.4, 0.3, 0.3}));
  CHECK(doc["distance"].get<double>() == 0.734846922835);
  CHECK(doc["gamma"] == Json::parse(R"({"b,c": 0.9})"));
  CHECK(doc["side_payment"] == Json::array({-0.6, 0.3, 0.3}));
  CHECK(doc["collection"] == Json::array({"b,c"}));
  CHECK(doc["in_core"] == false);

  req.x = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  const Json inside = Json::parse(run(req).out);
  CHECK(inside["in_core"] == true);
  CHECK(inside["distance"] == 0.0);
}

TEST_CASE("domain errors exit with 2") {
  auto req = on_game(Subcommand::project, "g_ex1.json");
  req.x = {1.0, 0.0, 0.0};
  const Run r = run(req);
  CHECK(r.code == kExitDomain);
  CHECK(r.out.empty());
  CHECK(r.err.find("empty core") != std::string::npos);

  auto bad = on_game(Subcommand::failure, "g_bal.json");
  bad.x = {1.0, 1.0, 1.0};
  const Run p = run(bad);
  CHECK(p.code == kExitDomain);
  CHECK(p.err.find("not a preimputation") != std::string::npos);
}

TEST_CASE("input errors exit with 1") {
  CHECK(run(on_game(Subcommand::check, "missing.json")).code == kExitInput);
  auto wrong_len = on_game(Subcommand::project, "g_bal.json");
  wrong_len.x = {1.0, 0.0};
  CHECK(run(wrong_len).code == kExitInput);
  CHECK(run(on_game(Subcommand::project, "g_bal.json")).code == kExitInput);
  CommandRequest none;
  CHECK(run(none).code == kExitInput);
  auto both = on_game(Subcommand::check, "g_bal.json");
  both.market_path = kData / "market2.json";
  CHECK(run(both).code == kExitInput);
  CommandRequest mg;
  mg.subcommand = Subcommand::market_game;
  mg.game_path = kData / "g_bal.json";
  CHECK(run(mg).code == kExitInput);
  const auto broken = temp_file("coreproj_broken.json", R"({"players": ["a","b"], "worth": {"a,a": 1}})");
  CommandRequest parse;
  parse.game_path = broken;
  const Run r = run(parse);
  CHECK(r.code == kExitInput);
  CHECK(r.err.find("a,a") != std::string::npos);
}

TEST_CASE("missing coalitions produce warnings") {
  const Run r = run(on_game(Subcommand::check, "sparse.json"));
  CHECK(r.code == kExitOk);
  const Json doc = Json::parse(r.out);
  CHECK(doc["warnings"].size() == 5);
  CHECK(r.err.find("missing; worth set to 0") != std::string::npos);
}

TEST_CASE("failure, reallocate, least-core and chebyshev reports") {
  auto f = on_game(Subcommand::failure, "g_bal.json");
  f.x = {1.0, 0.0, 0.0};
  const Json fail = Json::parse(run(f).out);
  CHECK(fail["value"].get<double>() == 0.734846922835);
  CHECK(fail["reallocation"] == Json::array({-0.6, 0.3, 0.3}));
  REQUIRE(fail["line_items"].size() == 1);
  CHECK(fail["line_items"][0]["coalition"] == "b,c");
  CHECK(fail["line_items"][0]["collect_per_player"].get<double>() == 0.6);

  f.subcommand = Subcommand::reallocate;
  const Json re = Json::parse(run(f).out);
  CHECK(re["reallocation"] == Json::array({-0.6, 0.3, 0.3}));
  CHECK(re["nearest_point"] == Json::array({0.4, 0.3, 0.3}));

  const Json lc = Json::parse(run(on_game(Subcommand::least_core, "g_ex1.json")).out);
  CHECK(lc["epsilon0"].get<double>() == 0.133333333333);
  CHECK(lc["tight_coalitions"] == Json::array({"a,b", "a,c", "b,c"}));

  const Json ch = Json::parse(run(on_game(Subcommand::chebyshev, "g_ex1.json")).out);
  CHECK(ch["value"].get<double>() == 0.163299316186);
  CHECK(ch["optimizer"] == Json::array({0.333333333333, 0.333333333333, 0.333333333333}));
}

TEST_CASE("market-game emits a game file") {
  CommandRequest req;
  req.subcommand = Subcommand::market_game;
  req.market_path = kData / "market2.json";
  const Run r = run(req);
  REQUIRE(r.code == kExitOk);
  CHECK(Json::parse(r.out) == Json::parse(R"({"players": ["a", "b"], "worth": {"a": 2.0, "b": 1.0, "a,b": 4.0}})"));
}

TEST_CASE("text output") {
  auto req = on_game(Subcommand::failure, "g_bal.json");
  req.x = {1.0, 0.0, 0.0};
  req.output = OutputFormat::text;
  const Run r = run(req);
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("value: 0.734846922835\n") != std::string::npos);
  CHECK(r.out.find("reallocation: (-0.6, 0.3, 0.3)\n") != std::string::npos);
  CHECK(r.out.find("schema") == std::string::npos);
}

TEST_CASE("tolerance override") {
  // Shifted off the tight pair by 1e-6: inside the core only with a loose tolerance.
  auto req = on_game(Subcommand::project, "g_bal.json");
  req.x = {0.4 + 2e-6, 0.3 - 1e-6, 0.3 - 1e-6};
  CHECK(Json::parse(run(req).out)["in_core"] == false);
  req.tol = 1e-5;
  CHECK(Json::parse(run(req).out)["in_core"] == true);
  req.tol = -1.0;
  CHECK(run(req).code == kExitInput);
}

TEST_CASE("market-game output checks as balanced") {
  instances::Rng rng(81);
  for (int t = 0; t < 20; ++t) {
    const Market m = instances::random_market(2 + t % 3, 1 + t % 3, rng);
    Json doc;
    doc["players"] = m.players;
    doc["commodities"] = m.commodities;
    for (std::size_t i = 0; i < m.players.size(); ++i) {
      doc["endowments"][m.players[i]] = m.endowments[i];
      doc["utilities"][m.players[i]] = m.utility_coeffs[i];
    }
    CommandRequest gen;
    gen.subcommand = Subcommand::market_game;
    gen.market_path = temp_file("coreproj_market.json", doc.dump());
    const Run g = run(gen);
    REQUIRE(g.code == kExitOk);
    CommandRequest check;
    check.game_path = temp_file("coreproj_market_game.json", g.out);
    const Run c = run(check);
    REQUIRE(c.code == kExitOk);
    CHECK(Json::parse(c.out)["balanced"] == true);
  }
}

TEST_CASE("output bytes are deterministic across runs and execution modes") {
  auto req = on_game(Subcommand::failure, "g_point.json");
  req.x = {0.9, -0.2, 0.3};
  const std::string first = run(req).out;
  CHECK(run(req).out == first);
  req.execution = Execution::serial;
  CHECK(run(req).out == first);
}

TEST_CASE("executable end to end") {
  const std::string bal = (kData / "g_bal.json").string();
  const std::string ex1 = (kData / "g_ex1.json").string();
  auto [code, out] = shell("check --game " + ex1);
  CHECK(code == 0);
  CHECK(Json::parse(out)["max_balanced_worth"].get<double>() == 1.2);

  std::tie(code, out) = shell("project --game " + bal + " --x 1,0,0");
  CHECK(code == 0);
  CHECK(Json::parse(out)["distance"].get<double>() == 0.734846922835);

  std::tie(code, out) = shell("project --game " + ex1 + " --x 1,0,0");
  CHECK(code == 2);
  CHECK(out.empty());

  CHECK(shell("project --game " + bal + " --x 1,zero,0").first == 1);
  CHECK(shell("nucleolus --game " + bal).first == 1);
  CHECK(shell("check --game " + bal + " --market " + bal).first == 1);
  CHECK(shell("check --game " + bal + " --output yaml").first == 1);
  CHECK(shell("--help").first == 0);

  std::tie(code, out) = shell("failure --serial --output text --game " + bal + " --x 1,0,0");
  CHECK(code == 0);
  CHECK(out.find("value: 0.734846922835") != std::string::npos);
}

}  // TEST_SUITE

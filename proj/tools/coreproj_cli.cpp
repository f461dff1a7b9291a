// coreproj: core projections, balancedness and failure measures for TU games.
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "coreproj/command.hpp"
#include "coreproj/errors.hpp"

namespace cli = coreproj::cli;

int main(int argc, char** argv) {
  CLI::App app{"Core projections and failure measures for cooperative games"};
  app.set_version_flag("--version", "coreproj 0.1.0");

  std::string subcommand;
  std::string game_path;
  std::string market_path;
  std::string x_text;
  std::string output = "json";
  double tol = 0.0;
  bool serial = false;

  app.add_option("subcommand", subcommand,
                 "check | project | failure | reallocate | least-core | chebyshev | market-game")
      ->required();
  auto* game_opt = app.add_option("--game", game_path, "game JSON file");
  auto* market_opt = app.add_option("--market", market_path, "market JSON file");
  auto* x_opt = app.add_option("--x", x_text, "payoff vector, comma separated (e.g. 1,0,0)");
  app.add_option("--output", output, "report format")->check(CLI::IsMember({"json", "text"}));
  auto* tol_opt = app.add_option("--tol", tol, "face and efficiency tolerance");
  app.add_flag("--serial", serial, "disable the parallel kernels");
  game_opt->excludes(market_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? cli::kExitOk : cli::kExitInput;
  }

  cli::CommandRequest req;
  const auto sub = cli::parse_subcommand(subcommand);
  if (!sub) {
    std::cerr << "error: unknown subcommand '" << subcommand << "'\n";
    return cli::kExitInput;
  }
  req.subcommand = *sub;
  if (*game_opt) req.game_path = game_path;
  if (*market_opt) req.market_path = market_path;
  if (*x_opt) {
    try {
      req.x = cli::parse_vector(x_text);
    } catch (const coreproj::ParseError& e) {
      std::cerr << "error: --x: " << e.what() << '\n';
      return cli::kExitInput;
    }
  }
  if (*tol_opt) req.tol = tol;
  req.output = output == "text" ? cli::OutputFormat::text : cli::OutputFormat::json;
  req.execution = serial ? coreproj::Execution::serial : coreproj::Execution::parallel;

  return cli::execute(req, std::cout, std::cerr);
}

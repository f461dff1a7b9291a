#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "coreproj/game.hpp"
#include "coreproj/market.hpp"

namespace coreproj {

using Json = nlohmann::ordered_json;

struct LoadedGame {
  Game game;
  /// One entry per coalition missing from the file (its worth defaults to 0).
  std::vector<std::string> warnings;
};

/// Game file: {"players": ["a","b","c"], "worth": {"a": 0, "a,b": 0.8, ...}}.
/// Keys are comma-joined player names in any order. Throws ParseError on
/// malformed input, unknown or repeated players in a key, or two keys naming
/// the same coalition.
LoadedGame parse_game(const std::string& text);
LoadedGame load_game(const std::filesystem::path& path);

/// Market file: {"players": [...], "commodities": m, "endowments": {"a": [...]},
/// "utilities": {"a": [...]}}.
Market parse_market(const std::string& text);
Market load_market(const std::filesystem::path& path);

/// Game in the file format above; coalitions ascending by mask.
Json game_to_json(const Game& game);

/// Rounds to 12 significant digits so that serialized reals stay short and
/// stable across platforms; -0 becomes 0.
double round12(double v);
Json round12(const std::vector<double>& v);

std::string read_file(const std::filesystem::path& path);

}  // namespace coreproj

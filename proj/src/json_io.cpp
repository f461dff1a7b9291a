#include "coreproj/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "coreproj/errors.hpp"

namespace coreproj {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

std::vector<std::string> parse_players(const Json& doc) {
  if (!doc.is_object() || !doc.contains("players") || !doc["players"].is_array()) {
    throw ParseError("expected an object with a \"players\" array");
  }
  std::vector<std::string> players;
  for (const auto& p : doc["players"]) {
    if (!p.is_string()) throw ParseError("player names must be strings");
    players.push_back(p.get<std::string>());
  }
  return players;
}

std::unordered_map<std::string, std::size_t> index_players(const std::vector<std::string>& players) {
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < players.size(); ++i) {
    if (players[i].empty() || players[i].find(',') != std::string::npos) {
      throw ParseError("invalid player name '" + players[i] + "'");
    }
    if (!index.emplace(players[i], i).second) throw ParseError("duplicate player '" + players[i] + "'");
  }
  return index;
}

double as_real(const Json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw ParseError(where + ": non-finite number");
  return d;
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

LoadedGame parse_game(const std::string& text) {
  const Json doc = parse_json(text);
  const auto players = parse_players(doc);
  const auto index = index_players(players);
  const std::size_t n = players.size();
  if (n < 2 || n > kMaxPlayers) {
    throw ParseError("game needs between 2 and " + std::to_string(kMaxPlayers) + " players");
  }
  if (!doc.contains("worth") || !doc["worth"].is_object()) throw ParseError("expected a \"worth\" object");

  std::vector<double> worth(std::size_t{1} << n, 0.0);
  std::vector<char> seen(worth.size(), 0);
  for (const auto& [key, value] : doc["worth"].items()) {
    Mask mask = 0;
    std::stringstream parts(key);
    std::string name;
    bool any = false;
    while (std::getline(parts, name, ',')) {
      name = trim(name);
      const auto it = index.find(name);
      if (it == index.end()) throw ParseError("worth key '" + key + "': unknown player '" + name + "'");
      const Mask bit = Mask{1} << it->second;
      if (mask & bit) throw ParseError("worth key '" + key + "': player '" + name + "' repeated");
      mask |= bit;
      any = true;
    }
    if (!any || mask == 0) throw ParseError("worth key '" + key + "' names no player");
    if (seen[mask]) throw ParseError("worth key '" + key + "' names a coalition given twice");
    seen[mask] = 1;
    worth[mask] = as_real(value, "worth of '" + key + "'");
  }

  std::vector<std::string> warnings;
  for (std::size_t m = 1; m < worth.size(); ++m) {
    if (!seen[m]) {
      warnings.push_back("coalition '" + coalition_name(Coalition(static_cast<Mask>(m)), players) +
                         "' missing; worth set to 0");
    }
  }
  return {Game(players, std::move(worth)), std::move(warnings)};
}

LoadedGame load_game(const std::filesystem::path& path) { return parse_game(read_file(path)); }

Market parse_market(const std::string& text) {
  const Json doc = parse_json(text);
  Market market;
  market.players = parse_players(doc);
  index_players(market.players);
  if (market.players.size() < 2 || market.players.size() > kMaxPlayers) {
    throw ParseError("market needs between 2 and " + std::to_string(kMaxPlayers) + " players");
  }
  if (!doc.contains("commodities") || !doc["commodities"].is_number_unsigned()) {
    throw ParseError("expected a nonnegative integer \"commodities\"");
  }
  market.commodities = doc["commodities"].get<std::size_t>();

  auto per_player = [&](const char* field) {
    if (!doc.contains(field) || !doc[field].is_object()) throw ParseError(std::string("expected a \"") + field + "\" object");
    const Json& obj = doc[field];
    std::vector<std::vector<double>> out;
    for (const auto& p : market.players) {
      if (!obj.contains(p) || !obj[p].is_array()) throw ParseError(std::string(field) + ": missing array for '" + p + "'");
      std::vector<double> row;
      for (const auto& v : obj[p]) row.push_back(as_real(v, std::string(field) + " of '" + p + "'"));
      if (row.size() != market.commodities) {
        throw ParseError(std::string(field) + " of '" + p + "' has " + std::to_string(row.size()) + " entries, expected " +
                         std::to_string(market.commodities));
      }
      out.push_back(std::move(row));
    }
    if (obj.size() != market.players.size()) throw ParseError(std::string(field) + ": entries for unknown players");
    return out;
  };
  market.endowments = per_player("endowments");
  market.utility_coeffs = per_player("utilities");
  try {
    market.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return market;
}

Market load_market(const std::filesystem::path& path) { return parse_market(read_file(path)); }

double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

Json round12(const std::vector<double>& v) {
  Json out = Json::array();
  for (double d : v) out.push_back(round12(d));
  return out;
}

Json game_to_json(const Game& game) {
  Json doc;
  doc["players"] = game.players();
  Json worth = Json::object();
  for (Coalition s : all_coalitions(game.n())) worth[coalition_name(s, game.players())] = round12(game.worth(s));
  doc["worth"] = std::move(worth);
  return doc;
}

}  // namespace coreproj

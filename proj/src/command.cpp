#include "coreproj/command.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "coreproj/core_solver.hpp"
#include "coreproj/errors.hpp"
#include "coreproj/json_io.hpp"
#include "coreproj/market.hpp"
#include "coreproj/solutions.hpp"

namespace coreproj::cli {

namespace {

constexpr int kSchemaVersion = 1;

struct Entry {
  Subcommand sub;
  std::string_view name;
};

constexpr Entry kSubcommands[] = {
    {Subcommand::check, "check"},           {Subcommand::project, "project"},
    {Subcommand::failure, "failure"},       {Subcommand::reallocate, "reallocate"},
    {Subcommand::least_core, "least-core"}, {Subcommand::chebyshev, "chebyshev"},
    {Subcommand::market_game, "market-game"},
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool needs_point(Subcommand s) {
  return s == Subcommand::project || s == Subcommand::failure || s == Subcommand::reallocate;
}

Json names(const Game& game, const CoalitionCollection& q) {
  Json out = Json::array();
  for (Coalition s : q) out.push_back(coalition_name(s, game.players()));
  return out;
}

Json weight_map(const Game& game, const WeightMap& w) {
  Json out = Json::object();
  for (const auto& [s, v] : w) out[coalition_name(s, game.players())] = round12(v);
  return out;
}

Json line_items(const Game& game, const std::vector<ReallocationItem>& items) {
  Json out = Json::array();
  for (const auto& it : items) {
    Json item;
    item["coalition"] = coalition_name(it.coalition, game.players());
    item["gamma"] = round12(it.gamma);
    item["collect_per_player"] = round12(it.collect_per_player);
    item["give_per_member"] = round12(it.give_per_member);
    out.push_back(std::move(item));
  }
  return out;
}

/// Proper coalitions whose (scaled) excess at x is within 1e-7 of the optimum.
template <typename Scale>
Json tight_coalitions(const Game& game, const Payoff& x, double value, Scale&& scale) {
  Json out = Json::array();
  for (Coalition s : all_coalitions(game.n(), false)) {
    if (std::abs(excess(game, s, x) / scale(s) - value) <= 1e-7) out.push_back(coalition_name(s, game.players()));
  }
  return out;
}

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", round12(v));
  return buf;
}

std::string render_scalar(const Json& v) {
  if (v.is_number()) return format_real(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "-";
  return v.dump();
}

std::string render_inline(const Json& v) {
  if (!v.is_array()) return render_scalar(v);
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += render_scalar(v[i]);
  }
  return s + ")";
}

void render_text(const Json& doc, std::ostream& out) {
  for (const auto& [key, value] : doc.items()) {
    if (key == "schema") continue;
    if (value.is_object()) {
      out << key << ":\n";
      for (const auto& [k, v] : value.items()) out << "  " << k << ": " << render_inline(v) << '\n';
    } else if (value.is_array() && !value.empty() && value[0].is_object()) {
      out << key << ":\n";
      for (const auto& item : value) {
        out << " ";
        for (const auto& [k, v] : item.items()) out << ' ' << k << '=' << render_inline(v);
        out << '\n';
      }
    } else {
      out << key << ": " << render_inline(value) << '\n';
    }
  }
}

Game load_subject(const CommandRequest& req, std::vector<std::string>& warnings) {
  if (req.game_path) {
    LoadedGame loaded = load_game(*req.game_path);
    warnings = std::move(loaded.warnings);
    return std::move(loaded.game);
  }
  return market_game(load_market(*req.market_path), req.execution);
}

Json run(const CommandRequest& req, SearchOptions opts, std::vector<std::string>& warnings) {
  Json doc;
  if (req.subcommand == Subcommand::market_game) {
    doc = game_to_json(market_game(load_market(*req.market_path), req.execution));
    return doc;
  }

  const Game game = load_subject(req, warnings);
  Payoff x;
  if (needs_point(req.subcommand)) {
    x = *req.x;
    if (x.size() != game.n()) {
      throw ParseError("--x has " + std::to_string(x.size()) + " entries but the game has " +
                       std::to_string(game.n()) + " players");
    }
    require_preimputation(game, x, opts.tol);
  }

  switch (req.subcommand) {
    case Subcommand::check: {
      const BalancednessReport rep = is_balanced_game(game, opts.tol);
      doc["balanced"] = rep.balanced;
      doc["max_balanced_worth"] = round12(rep.max_balanced_worth);
      doc["grand_worth"] = round12(game.grand_worth());
      doc["witness"] = weight_map(game, rep.witness);
      doc["exact_coalitions"] = rep.balanced ? names(game, exact_coalitions(game, opts.tol, req.execution)) : Json();
      break;
    }
    case Subcommand::project: {
      ProjectionResult proj;
      bool inside = false;
      std::size_t explored = 0;
      bool widened = false;
      if (!is_balanced_game(game, opts.tol).balanced) throw EmptyCoreError("empty core: the game is not balanced");
      if (in_core(game, x, opts.tol)) {
        inside = true;
        proj.point = x;
        proj.side_payment.assign(x.size(), 0.0);
      } else {
        ReachingSearchResult found = minimal_reaching_collection(game, x, opts);
        proj = std::move(found.projection);
        explored = found.explored;
        widened = found.widened;
      }
      doc["point"] = round12(proj.point);
      doc["gamma"] = weight_map(game, proj.gamma);
      doc["side_payment"] = round12(proj.side_payment);
      doc["distance"] = round12(proj.distance);
      doc["collection"] = names(game, proj.collection);
      doc["in_core"] = inside;
      doc["explored"] = explored;
      doc["widened"] = widened;
      break;
    }
    case Subcommand::failure: {
      const FailureReport rep = failure(game, x, opts);
      doc["value"] = round12(rep.value);
      doc["nearest_point"] = round12(rep.nearest_point);
      doc["reallocation"] = round12(rep.reallocation);
      doc["collection"] = names(game, rep.collection);
      doc["line_items"] = line_items(game, reallocation_items(game.n(), rep.gamma));
      break;
    }
    case Subcommand::reallocate: {
      const FailureReport rep = failure(game, x, opts);
      const Reallocation realloc = optimal_reallocation(game, x, opts);
      Payoff target = x;
      for (std::size_t i = 0; i < x.size(); ++i) target[i] += realloc.side_payment[i];
      doc["value"] = round12(rep.value);
      doc["nearest_point"] = round12(target);
      doc["reallocation"] = round12(realloc.side_payment);
      doc["line_items"] = line_items(game, realloc.items);
      break;
    }
    case Subcommand::least_core: {
      const LeastCoreReport rep = least_core(game);
      doc["epsilon0"] = round12(rep.epsilon0);
      doc["optimizer"] = round12(rep.optimizer);
      doc["tight_coalitions"] = tight_coalitions(game, rep.optimizer, rep.epsilon0, [](Coalition) { return 1.0; });
      break;
    }
    case Subcommand::chebyshev: {
      const ChebyshevReport rep = chebyshev_core(game);
      const std::size_t n = game.n();
      doc["value"] = round12(rep.value);
      doc["optimizer"] = round12(rep.optimizer);
      doc["tight_coalitions"] = tight_coalitions(game, rep.optimizer, rep.value,
                                                 [n](Coalition s) { return std::sqrt(eta_norm_sq(n, s)); });
      break;
    }
    case Subcommand::market_game:
      break;
  }
  return doc;
}

void validate_request(const CommandRequest& req) {
  if (req.game_path && req.market_path) throw UsageError("give either --game or --market, not both");
  if (req.subcommand == Subcommand::market_game) {
    if (!req.market_path) throw UsageError("market-game needs --market");
  } else if (!req.game_path && !req.market_path) {
    throw UsageError(std::string(subcommand_name(req.subcommand)) + " needs --game or --market");
  }
  if (needs_point(req.subcommand) && !req.x) {
    throw UsageError(std::string(subcommand_name(req.subcommand)) + " needs --x");
  }
  if (req.tol && !(*req.tol > 0.0)) throw UsageError("--tol must be positive");
}

}  // namespace

std::optional<Subcommand> parse_subcommand(std::string_view name) {
  for (const auto& e : kSubcommands) {
    if (e.name == name) return e.sub;
  }
  return std::nullopt;
}

std::string_view subcommand_name(Subcommand s) {
  for (const auto& e : kSubcommands) {
    if (e.sub == s) return e.name;
  }
  return "?";
}

std::vector<double> parse_vector(std::string_view text) {
  std::vector<double> out;
  std::stringstream parts{std::string(text)};
  std::string item;
  while (std::getline(parts, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    while (end && (*end == ' ' || *end == '\t')) ++end;
    if (item.find_first_not_of(" \t") == std::string::npos || end == item.c_str() || *end != '\0' ||
        !std::isfinite(v)) {
      throw ParseError("cannot parse '" + item + "' as a real number");
    }
    out.push_back(v);
  }
  if (out.empty()) throw ParseError("empty vector");
  return out;
}

int execute(const CommandRequest& request, std::ostream& out, std::ostream& err) {
  SearchOptions opts;
  opts.execution = request.execution;
  if (request.tol) {
    opts.tol.face = *request.tol;
    opts.tol.eq = *request.tol;
  }
  std::vector<std::string> warnings;
  try {
    validate_request(request);
    Json doc = run(request, opts, warnings);
    if (request.subcommand != Subcommand::market_game) {
      if (!warnings.empty()) doc["warnings"] = warnings;
      doc["schema"] = kSchemaVersion;
    }
    for (const auto& w : warnings) err << "warning: " << w << '\n';
    std::ostringstream buf;
    if (request.output == OutputFormat::json) {
      buf << doc.dump(2) << '\n';
    } else {
      render_text(doc, buf);
    }
    out << buf.str();
    return kExitOk;
  } catch (const EmptyCoreError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const NotPreimputationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const AlreadyInCoreError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const SingularCollectionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
}

}  // namespace coreproj::cli

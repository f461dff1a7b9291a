#include "coreproj/game.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <unordered_set>

#include "coreproj/errors.hpp"

namespace coreproj {

Game::Game(std::vector<std::string> players, std::vector<double> worth)
    : players_(std::move(players)), worth_(std::move(worth)) {
  const std::size_t n = players_.size();
  if (n < 2 || n > kMaxPlayers) {
    throw std::invalid_argument("game needs between 2 and " + std::to_string(kMaxPlayers) + " players, got " +
                                std::to_string(n));
  }
  if (worth_.size() != (std::size_t{1} << n)) {
    throw std::invalid_argument("worth table must have 2^n entries");
  }
  std::unordered_set<std::string> seen;
  for (const auto& p : players_) {
    if (p.empty() || p.find(',') != std::string::npos) {
      throw std::invalid_argument("invalid player name '" + p + "'");
    }
    if (!seen.insert(p).second) throw std::invalid_argument("duplicate player '" + p + "'");
  }
  for (double w : worth_) {
    if (!std::isfinite(w)) throw std::invalid_argument("worths must be finite");
  }
  worth_[0] = 0.0;
}

Game Game::restrict_to(Coalition t) const {
  const auto idx = members(t);
  std::vector<std::string> sub_players;
  for (std::size_t i : idx) sub_players.push_back(players_[i]);
  return Game::from_function(std::move(sub_players), [&](Coalition sub) {
    Mask original = 0;
    for (std::size_t k : members(sub)) original |= Mask{1} << idx[k];
    return worth_[original];
  });
}

std::vector<std::string> default_player_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("p" + std::to_string(i + 1));
  return out;
}

double excess(const Game& game, Coalition s, std::span<const double> x) {
  if (s.empty()) throw std::invalid_argument("excess: empty coalition");
  return game.worth(s) - payment(s, x);
}

CoalitionCollection region_of(const Game& game, std::span<const double> x) {
  std::vector<Coalition> out;
  for (Coalition s : all_coalitions(game.n(), false)) {
    if (excess(game, s, x) > 0.0) out.push_back(s);
  }
  return CoalitionCollection(std::move(out));
}

bool dominates(const Game& game, std::span<const double> x, std::span<const double> y, Coalition s,
               const Tolerances& tol) {
  if (s.empty()) throw std::invalid_argument("dominates: empty coalition");
  // Affordability is a weak inequality, so it gets the efficiency tolerance; a
  // projection onto A_S pays S v(S) only up to rounding.
  if (payment(s, x) > game.worth(s) + tol.eq) return false;
  for (std::size_t i : members(s)) {
    if (!(x[i] > y[i])) return false;
  }
  return true;
}

bool is_preimputation(const Game& game, std::span<const double> vec, const Tolerances& tol) {
  if (vec.size() != game.n()) {
    throw std::invalid_argument("payment vector has " + std::to_string(vec.size()) + " entries, game has " +
                                std::to_string(game.n()) + " players");
  }
  const double sum = std::accumulate(vec.begin(), vec.end(), 0.0);
  return std::abs(sum - game.grand_worth()) <= tol.eq;
}

void require_preimputation(const Game& game, std::span<const double> vec, const Tolerances& tol) {
  if (!is_preimputation(game, vec, tol)) {
    const double sum = std::accumulate(vec.begin(), vec.end(), 0.0);
    throw NotPreimputationError("not a preimputation: payments sum to " + std::to_string(sum) + " but v(N) = " +
                                std::to_string(game.grand_worth()));
  }
}

std::vector<double> coalition_payments(std::span<const double> x) {
  std::vector<double> pay(std::size_t{1} << x.size(), 0.0);
  for (std::size_t m = 1; m < pay.size(); ++m) {
    const auto low = static_cast<std::size_t>(std::countr_zero(m));
    pay[m] = pay[m & (m - 1)] + x[low];
  }
  return pay;
}

double max_excess(const Game& game, std::span<const double> x, bool include_grand) {
  const auto pay = coalition_payments(x);
  const auto worth = game.worth_table();
  const std::size_t last = include_grand ? pay.size() : pay.size() - 1;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t m = 1; m < last; ++m) best = std::max(best, worth[m] - pay[m]);
  return best;
}

}  // namespace coreproj

#include "coreproj/market.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coreproj {

void Market::validate() const {
  const std::size_t n = players.size();
  if (endowments.size() != n || utility_coeffs.size() != n) {
    throw std::invalid_argument("market: need one endowment and one utility vector per player");
  }
  auto check = [&](const std::vector<double>& v, const std::string& what, const std::string& who) {
    if (v.size() != commodities) {
      throw std::invalid_argument("market: " + what + " of " + who + " has " + std::to_string(v.size()) +
                                  " entries, expected " + std::to_string(commodities));
    }
    for (double a : v) {
      if (!std::isfinite(a) || a < 0.0) throw std::invalid_argument("market: " + what + " of " + who + " must be finite and >= 0");
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    check(endowments[i], "endowment", players[i]);
    check(utility_coeffs[i], "utility", players[i]);
  }
}

Game market_game(const Market& market, Execution exec) {
  market.validate();
  const std::size_t n = market.players.size();
  const std::size_t m = market.commodities;
  std::vector<double> worth(std::size_t{1} << n, 0.0);
  const auto count = static_cast<std::ptrdiff_t>(worth.size());
  const bool parallel = exec == Execution::parallel;

#pragma omp parallel for schedule(static) if (parallel)
  for (std::ptrdiff_t mask = 1; mask < count; ++mask) {
    const Coalition s(static_cast<Mask>(mask));
    double total = 0.0;
    for (std::size_t g = 0; g < m; ++g) {
      double pooled = 0.0;
      double best = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (!s.contains(i)) continue;
        pooled += market.endowments[i][g];
        best = std::max(best, market.utility_coeffs[i][g]);
      }
      total += pooled * best;
    }
    worth[static_cast<std::size_t>(mask)] = total;
  }
  return Game(market.players, std::move(worth));
}

FailureReport market_failure(const Market& market, std::span<const double> x, const SearchOptions& opts) {
  const Game game = market_game(market, opts.execution);
  require_preimputation(game, x, opts.tol);
  return failure(game, x, opts);
}

}  // namespace coreproj

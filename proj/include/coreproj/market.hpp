#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "coreproj/execution.hpp"
#include "coreproj/game.hpp"
#include "coreproj/solutions.hpp"

namespace coreproj {

/// An exchange economy with linear utilities: player i holds endowment a^i
/// and values a bundle y at c^i . y.
struct Market {
  std::vector<std::string> players;
  std::size_t commodities = 0;
  std::vector<std::vector<double>> endowments;
  std::vector<std::vector<double>> utility_coeffs;

  /// Throws std::invalid_argument on size mismatches and on negative or
  /// non-finite entries.
  void validate() const;
};

/// v(S) = sum over commodities g of (pooled S endowment of g) * max_{i in S} c^i_g.
Game market_game(const Market& market, Execution exec = Execution::parallel);

/// failure() of the generated game. Throws NotPreimputationError when x does
/// not distribute v(N) of that game.
FailureReport market_failure(const Market& market, std::span<const double> x, const SearchOptions& opts = {});

}  // namespace coreproj

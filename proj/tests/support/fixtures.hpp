#pragma once

#include <cmath>
#include <span>
#include <vector>

#include "coreproj/game.hpp"
#include "coreproj/market.hpp"

namespace fixtures {

/// Three players a, b, c; singletons 0, every pair `pair`, v(N) = 1.
inline coreproj::Game pair_game(double pair) {
  return coreproj::Game({"a", "b", "c"}, {0, 0, 0, pair, 0, pair, pair, 1.0});
}

/// Pairs 0.8: the pair collection is worth 1.2 > 1, so the core is empty.
inline coreproj::Game g_ex1() { return pair_game(0.8); }
/// Pairs 0.6: the core is a triangle around the barycenter.
inline coreproj::Game g_bal() { return pair_game(0.6); }
/// Pairs 2/3: the core is the single point (1/3, 1/3, 1/3).
inline coreproj::Game g_point() { return pair_game(2.0 / 3.0); }

/// Singletons 0, pairs -1, v(N) = 1: the core is the simplex.
inline coreproj::Game two_singletons() { return coreproj::Game({"a", "b", "c"}, {0, 0, 0, -1.0, 0, -1.0, -1.0, 1.0}); }

/// v(S) = sum of w_i over S.
inline coreproj::Game additive(std::vector<double> w) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < w.size(); ++i) names.push_back("p" + std::to_string(i + 1));
  return coreproj::Game::from_function(names, [&](coreproj::Coalition s) { return coreproj::payment(s, w); });
}

/// 2 players, 1 commodity, endowments (1, 1), utilities (2, 1).
inline coreproj::Market two_player_market() {
  return coreproj::Market{{"a", "b"}, 1, {{1.0}, {1.0}}, {{2.0}, {1.0}}};
}

/// 3 players, 2 commodities.
inline coreproj::Market three_player_market() {
  return coreproj::Market{{"a", "b", "c"}, 2, {{1, 0}, {0, 1}, {1, 1}}, {{1, 2}, {2, 1}, {1, 1}}};
}

inline coreproj::Coalition set(std::initializer_list<std::size_t> members) {
  coreproj::Mask m = 0;
  for (std::size_t i : members) m |= coreproj::Mask{1} << i;
  return coreproj::Coalition(m);
}

inline double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace fixtures

#pragma once

#include <span>
#include <vector>

#include "coreproj/core_solver.hpp"
#include "coreproj/game.hpp"

namespace coreproj {

/// Signed distance from x to the boundary of the core: positive outside the
/// core, zero on its boundary, negative inside.
///
/// Outside the core, `nearest_point` is the core projection, `reallocation`
/// the side payment reaching it and `collection`/`gamma` the reaching
/// collection behind it. Inside, `nearest_point` is the projection onto the
/// nearest facet hyperplane (collection holds that single coalition).
struct FailureReport {
  double value = 0.0;
  Payoff nearest_point;
  SidePayment reallocation;
  CoalitionCollection collection;
  WeightMap gamma;
};

/// Throws EmptyCoreError ("failure undefined: empty core") for unbalanced games.
FailureReport failure(const Game& game, std::span<const double> x, const SearchOptions& opts = {});

struct LeastCoreReport {
  double epsilon0 = 0.0;
  Payoff optimizer;
};

/// epsilon_0 = min over X(v) of max over proper S of e_S(x), with one optimizer.
LeastCoreReport least_core(const Game& game);

/// max over proper S of e_S(x) <= eps + tol.eq.
bool epsilon_core_contains(const Game& game, double eps, std::span<const double> x, const Tolerances& tol = {});

struct ChebyshevReport {
  double value = 0.0;
  Payoff optimizer;
};

/// min over X(v) of max over proper S of e_S(x)/||eta^S||, with one optimizer.
/// Defined for every game, balanced or not.
ChebyshevReport chebyshev_core(const Game& game);

/// gamma_S(x) = e_S(x)/||eta^S|| maximized over proper coalitions.
double max_scaled_excess(const Game& game, std::span<const double> x);

/// One coalition's share of the optimal reallocation: every player pays
/// `collect_per_player` = (|S|/n) gamma_S and every member of S receives
/// `give_per_member` = gamma_S.
struct ReallocationItem {
  Coalition coalition;
  double gamma = 0.0;
  double collect_per_player = 0.0;
  double give_per_member = 0.0;
};

struct Reallocation {
  SidePayment side_payment;
  std::vector<ReallocationItem> items;
};

/// The side payment from x to its core projection (zero inside the core),
/// broken down per coalition of the reaching collection.
Reallocation optimal_reallocation(const Game& game, std::span<const double> x, const SearchOptions& opts = {});

/// Line items for a coefficient map.
std::vector<ReallocationItem> reallocation_items(std::size_t n, const WeightMap& gamma);

}  // namespace coreproj

#include "coreproj/solutions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "coreproj/errors.hpp"
#include "coreproj/lp.hpp"
#include "coreproj/projection.hpp"

namespace coreproj {

FailureReport failure(const Game& game, std::span<const double> x, const SearchOptions& opts) {
  if (x.size() != game.n()) throw std::invalid_argument("payment vector length does not match the player count");
  if (!is_balanced_game(game, opts.tol).balanced) throw EmptyCoreError("failure undefined: empty core");

  FailureReport report;
  if (!in_core(game, x, opts.tol)) {
    const auto found = minimal_reaching_collection(game, x, opts);
    report.value = found.projection.distance;
    report.nearest_point = found.projection.point;
    report.reallocation = found.projection.side_payment;
    report.collection = found.collection;
    report.gamma = found.projection.gamma;
    return report;
  }

  // Inside the core the nearest boundary point lies on a facet hyperplane:
  // distance |e_S|/||eta^S||, so the signed value is max_S e_S/||eta^S|| <= 0.
  const std::size_t n = game.n();
  double best = -std::numeric_limits<double>::infinity();
  Coalition arg;
  for (Coalition s : all_coalitions(n, false)) {
    const double g = excess(game, s, x) / std::sqrt(eta_norm_sq(n, s));
    if (g > best) {
      best = g;
      arg = s;
    }
  }
  const ProjectionResult facet = project_single(game, arg, x);
  report.value = best;
  report.nearest_point = facet.point;
  report.reallocation = facet.side_payment;
  report.collection = facet.collection;
  report.gamma = facet.gamma;
  return report;
}

namespace {

// variables x_1..x_n free, t free; minimize t subject to
// v(S) - x(S) <= t * scale(S) for proper S and x(N) = v(N).
template <typename Scale>
LpOutcome minmax_excess(const Game& game, Scale&& scale) {
  const std::size_t n = game.n();
  LinearProgram lp;
  lp.objective.assign(n + 1, 0.0);
  lp.objective[n] = -1.0;
  LinearConstraint eff{std::vector<double>(n + 1, 1.0), game.grand_worth()};
  eff.row[n] = 0.0;
  lp.equalities.push_back(std::move(eff));
  for (Coalition s : all_coalitions(n, false)) {
    LinearConstraint row{std::vector<double>(n + 1, 0.0), -game.worth(s)};
    for (std::size_t i = 0; i < n; ++i) row.row[i] = s.contains(i) ? -1.0 : 0.0;
    row.row[n] = -scale(s);
    lp.inequalities.push_back(std::move(row));
  }
  lp.make_free();
  LpOutcome res = solve_lp(lp);
  if (res.status != LpStatus::optimal) throw std::runtime_error("min-max excess LP did not reach an optimum");
  return res;
}

}  // namespace

LeastCoreReport least_core(const Game& game) {
  const LpOutcome res = minmax_excess(game, [](Coalition) { return 1.0; });
  const std::size_t n = game.n();
  return {res.solution[n], Payoff(res.solution.begin(), res.solution.begin() + static_cast<std::ptrdiff_t>(n))};
}

bool epsilon_core_contains(const Game& game, double eps, std::span<const double> x, const Tolerances& tol) {
  if (x.size() != game.n()) throw std::invalid_argument("payment vector length does not match the player count");
  return max_excess(game, x, false) <= eps + tol.eq;
}

ChebyshevReport chebyshev_core(const Game& game) {
  const std::size_t n = game.n();
  const LpOutcome res = minmax_excess(game, [n](Coalition s) { return std::sqrt(eta_norm_sq(n, s)); });
  return {res.solution[n], Payoff(res.solution.begin(), res.solution.begin() + static_cast<std::ptrdiff_t>(n))};
}

double max_scaled_excess(const Game& game, std::span<const double> x) {
  const std::size_t n = game.n();
  double best = -std::numeric_limits<double>::infinity();
  for (Coalition s : all_coalitions(n, false)) {
    best = std::max(best, excess(game, s, x) / std::sqrt(eta_norm_sq(n, s)));
  }
  return best;
}

std::vector<ReallocationItem> reallocation_items(std::size_t n, const WeightMap& gamma) {
  std::vector<ReallocationItem> items;
  for (const auto& [s, g] : gamma) {
    items.push_back({s, g, static_cast<double>(s.size()) / static_cast<double>(n) * g, g});
  }
  return items;
}

Reallocation optimal_reallocation(const Game& game, std::span<const double> x, const SearchOptions& opts) {
  const ProjectionResult proj = project_onto_core(game, x, opts);
  return {proj.side_payment, reallocation_items(game.n(), proj.gamma)};
}

}  // namespace coreproj

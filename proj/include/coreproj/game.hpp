#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "coreproj/coalition.hpp"

namespace coreproj {

/// A payment vector indexed by players. Preimputations sum to v(N), side
/// payments sum to zero.
using Payoff = std::vector<double>;
using SidePayment = std::vector<double>;

/// Numerical tolerances shared by the solvers.
struct Tolerances {
  /// Efficiency checks: |x(N) - v(N)| and side-payment sums.
  double eq = 1e-9;
  /// "Lies on the face" / core membership: e_S(x) <= face.
  double face = 1e-8;
  /// Independence: residual norm of a Gram-Schmidt step.
  double rank = 1e-9;
  /// Strict positivity of LP certificates (balancing weights, witnesses).
  double pos = 1e-9;
};

/// A transferable-utility game (N, v). Immutable after construction; the
/// worth table is dense, indexed by coalition mask, with v(empty) = 0.
class Game {
 public:
  /// `worth` must have 2^n entries; entry 0 is forced to zero.
  Game(std::vector<std::string> players, std::vector<double> worth);

  /// Game built from a coalition function evaluated on every nonempty mask.
  template <typename Fn>
  static Game from_function(std::vector<std::string> players, Fn&& fn) {
    const std::size_t n = players.size();
    std::vector<double> worth(std::size_t{1} << n, 0.0);
    for (std::size_t m = 1; m < worth.size(); ++m) worth[m] = fn(Coalition(static_cast<Mask>(m)));
    return Game(std::move(players), std::move(worth));
  }

  std::size_t n() const { return players_.size(); }
  const std::vector<std::string>& players() const { return players_; }
  Coalition grand() const { return Coalition::grand(n()); }

  double worth(Coalition s) const { return worth_[s.mask]; }
  double grand_worth() const { return worth_[grand().mask]; }
  std::span<const double> worth_table() const { return worth_; }

  /// The subgame on the members of t, players renumbered in their original order.
  Game restrict_to(Coalition t) const;

 private:
  std::vector<std::string> players_;
  std::vector<double> worth_;
};

/// Player names "p1".."pn"; convenient for generated games.
std::vector<std::string> default_player_names(std::size_t n);

/// e_S(x) = v(S) - x(S). Throws std::invalid_argument for the empty coalition.
double excess(const Game& game, Coalition s, std::span<const double> x);

/// Coalitions with strictly positive excess at x (exact comparison). N is left
/// out: its excess at a preimputation is zero, up to rounding residue.
CoalitionCollection region_of(const Game& game, std::span<const double> x);

/// x dominates y via s: x(s) <= v(s) + tol.eq and x_i > y_i for every member
/// (the strict part compares exactly).
bool dominates(const Game& game, std::span<const double> x, std::span<const double> y, Coalition s,
               const Tolerances& tol = {});

bool is_preimputation(const Game& game, std::span<const double> vec, const Tolerances& tol = {});

/// Throws NotPreimputationError unless is_preimputation holds, and
/// std::invalid_argument on a length mismatch.
void require_preimputation(const Game& game, std::span<const double> vec, const Tolerances& tol = {});

/// max over every nonempty coalition of e_S(x), computed with one subset-sum pass.
double max_excess(const Game& game, std::span<const double> x, bool include_grand = true);

/// x(S) for every mask, by the recurrence x(S) = x(S \ {lowest}) + x_lowest.
std::vector<double> coalition_payments(std::span<const double> x);

}  // namespace coreproj

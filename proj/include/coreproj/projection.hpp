#pragma once

#include <span>
#include <utility>
#include <vector>

#include "coreproj/coalition.hpp"
#include "coreproj/game.hpp"
#include "coreproj/geometry.hpp"

namespace coreproj {

/// Projection of a preimputation onto A_Q = {y in X(v) : y(S) = v(S), S in Q}.
///
/// point = x + sum_S gamma_S eta^S, side_payment = point - x and
/// distance = ||side_payment||. `gamma` is listed in collection order.
struct ProjectionResult {
  Payoff point;
  WeightMap gamma;
  SidePayment side_payment;
  double distance = 0.0;
  CoalitionCollection collection;
};

/// Projection onto the single hyperplane A_S: x + (e_S(x)/||eta^S||^2) eta^S.
/// Throws std::invalid_argument for the empty coalition and for N.
ProjectionResult project_single(const Game& game, Coalition s, std::span<const double> x);

/// chi_S(T, x) = e_S(x)<eta^S, eta^T> - e_T(x)||eta^S||^2. Nonnegative iff the
/// projection onto A_S pays T at least v(T).
double chi_single(const Game& game, Coalition s, Coalition t, std::span<const double> x);

/// Normal-equation route: gamma solves G gamma = e_Q(x) by Cholesky.
/// Throws SingularCollectionError for a dependent q (checked before factoring).
ProjectionResult project_collection(const Game& game, const CoalitionCollection& q, std::span<const double> x,
                                    const Tolerances& tol = {});

/// Coefficients by Cramer's rule: gamma_S = det G^S_x / det G, where G^S_x is G
/// with the column of S replaced by the excess vector.
WeightMap gamma_cramer(const Game& game, const CoalitionCollection& q, std::span<const double> x,
                       const Tolerances& tol = {});

/// Dual-basis route: x + sum_S e_S(x) h^S.
ProjectionResult project_collection_dual(const Game& game, const CoalitionCollection& q, std::span<const double> x,
                                         const Tolerances& tol = {});

/// Orthonormal route: x - V V^T (x - y) with V from the incremental Gram-Schmidt
/// basis and y in A_Q taken from the dual-basis projection.
ProjectionResult project_collection_qr(const Game& game, const CoalitionCollection& q, std::span<const double> x,
                                       const Tolerances& tol = {});

/// e_T at the projection onto A_Q, by e_T(x) - sum_S gamma_S <eta^S, eta^T>.
/// Nonpositive iff the projection pays T at least v(T).
double excess_after_projection(const Game& game, const CoalitionCollection& q, Coalition t,
                               std::span<const double> x, const Tolerances& tol = {});

/// Builds the Gram-Schmidt state of q, throwing SingularCollectionError with
/// the dependent prefix when some normal falls in the span of the earlier ones.
GramState independent_state(std::size_t n, const CoalitionCollection& q, const Tolerances& tol = {});

namespace detail {
/// project_collection without the independence pre-check, for callers that
/// already hold a GramState for q. Throws SingularCollectionError if the
/// Cholesky factorization fails.
ProjectionResult project_collection_unchecked(const Game& game, const CoalitionCollection& q,
                                              std::span<const double> x);
}  // namespace detail

}  // namespace coreproj

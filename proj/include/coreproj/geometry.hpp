#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "coreproj/coalition.hpp"
#include "coreproj/game.hpp"
#include "coreproj/linalg.hpp"

namespace coreproj {

/// eta^S = 1^S - (|S|/n) 1^N: the side payment that raises the payment of S
/// fastest, and the normal of the hyperplane x(S) = v(S) inside X(v).
struct NormalVector {
  Coalition coalition;
  std::vector<double> coords;
};

NormalVector normal_vector(std::size_t n, Coalition s);

/// <eta^S, eta^T> = |S & T| - |S||T|/n, evaluated combinatorially.
double eta_inner(std::size_t n, Coalition s, Coalition t);

/// ||eta^S||^2 = |S|(n - |S|)/n.
inline double eta_norm_sq(std::size_t n, Coalition s) { return eta_inner(n, s, s); }

/// Gram matrix of the normals of q, rows in ascending mask order. Throws
/// std::invalid_argument if q is empty or holds the empty coalition or N.
Matrix gram_matrix(std::size_t n, const CoalitionCollection& q);

/// True iff the normals of q are linearly independent. Collections larger than
/// n - 1 are rejected without any matrix work (dim of the side payments).
bool is_independent(std::size_t n, const CoalitionCollection& q);

using WeightMap = std::vector<std::pair<Coalition, double>>;

/// Positive weights lambda with sum lambda_S 1^S = 1^N if q is balanced.
std::optional<WeightMap> is_balanced_collection(std::size_t n, const CoalitionCollection& q,
                                                const Tolerances& tol = {});

/// A side payment sigma with sigma(S) > 0 for every S in q, normalized to
/// |sigma_i| <= 1, when q is unbalanced; nullopt when q holds a balanced
/// subcollection.
std::optional<SidePayment> unbalanced_witness(std::size_t n, const CoalitionCollection& q,
                                              const Tolerances& tol = {});

/// Side payments h^S biorthogonal to the normals: <h^{S_i}, eta^{S_j}> = delta_ij.
/// `coefficients[j]` expresses h^{S_j} in the normals: column j of G^{-1}.
struct DualBasis {
  CoalitionCollection collection;
  std::vector<std::vector<double>> vectors;
  std::vector<std::vector<double>> coefficients;
};

/// Throws SingularCollectionError for dependent q.
DualBasis dual_basis(std::size_t n, const CoalitionCollection& q);

/// Incrementally maintained orthonormal basis of span{eta^S : S in collection}
/// together with the Gramian det G of the collection.
struct GramState {
  std::size_t n = 0;
  CoalitionCollection collection;
  std::vector<std::vector<double>> orthobasis;
  double gramian = 1.0;
  /// Coalitions offered to update_gramian whose normal was already in the span.
  std::vector<Coalition> dependent;

  static GramState empty(std::size_t n) { return GramState{n, {}, {}, 1.0, {}}; }
};

/// Norm of the part of eta^S left after removing its components along the
/// basis; the quantity update_gramian compares against tol.rank. No checks on S.
double residual_norm(const GramState& state, Coalition s);

/// One Gram-Schmidt step. When eta^S leaves a residual of norm > tol.rank the
/// normalized residual v joins the basis and the Gramian is multiplied by
/// v(S)^2; otherwise S is recorded in `dependent` and nothing else changes.
/// Throws std::invalid_argument for S = N, the empty set, or a duplicate.
GramState update_gramian(const GramState& state, Coalition s, const Tolerances& tol = {});

/// True when the last update_gramian call on `before` produced `after` by
/// adding a coalition to the collection.
inline bool grew(const GramState& before, const GramState& after) {
  return after.collection.size() > before.collection.size();
}

}  // namespace coreproj

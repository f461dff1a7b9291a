#pragma once

#include <cstddef>
#include <span>

#include "coreproj/coalition.hpp"
#include "coreproj/execution.hpp"
#include "coreproj/game.hpp"
#include "coreproj/geometry.hpp"
#include "coreproj/projection.hpp"

namespace coreproj {

/// Outcome of the Bondareva-Shapley test. `max_balanced_worth` is the largest
/// sum lambda_S v(S) over balanced weights on proper coalitions; the core is
/// nonempty iff it does not exceed v(N). `witness` is the support of one
/// optimal weight vector.
struct BalancednessReport {
  bool balanced = false;
  double max_balanced_worth = 0.0;
  WeightMap witness;
};

BalancednessReport is_balanced_game(const Game& game, const Tolerances& tol = {});

/// Coalitions S with C(v) inside the hyperplane x(S) = v(S); N is always one.
/// Throws EmptyCoreError for unbalanced games.
CoalitionCollection exact_coalitions(const Game& game, const Tolerances& tol = {},
                                     Execution exec = Execution::parallel);

/// e_S(x) <= tol.face for every nonempty coalition.
bool in_core(const Game& game, std::span<const double> x, const Tolerances& tol = {});

struct SearchOptions {
  Tolerances tol;
  Execution execution = Execution::parallel;
};

struct ReachingSearchResult {
  CoalitionCollection collection;
  ProjectionResult projection;
  /// Candidate collections whose projection was evaluated.
  std::size_t explored = 0;
  /// True when no reaching collection drawn from region_of(x) passed, and the
  /// search had to range over every proper coalition.
  bool widened = false;
};

/// Breadth-first search for an inclusion-minimal reaching collection.
///
/// Candidates are independent collections grown one coalition at a time in
/// ascending cardinality, lexicographic mask order; independence is tracked
/// with update_gramian along each path. A candidate T is accepted when its
/// projection lies in the core (max_S e_S <= tol.face over every coalition) and
/// every gamma_S >= -tol.face, so that x - pi(x) lies in the normal cone of the
/// core at pi(x); that makes pi(x) the core projection. Among the accepted
/// candidates of the first successful level the nearest wins, ties broken by
/// the lexicographically smallest mask sequence.
///
/// The search first draws coalitions from region_of(x). When the nearest core
/// point needs a constraint that x already satisfies (possible whenever two
/// normals meet at an obtuse angle) no such candidate exists, and the search is
/// repeated over every proper coalition.
///
/// Throws AlreadyInCoreError if x is in the core and EmptyCoreError if the
/// game is not balanced.
ReachingSearchResult minimal_reaching_collection(const Game& game, std::span<const double> x,
                                                 const SearchOptions& opts = {});

namespace reference {
/// Serial FIFO-queue version of minimal_reaching_collection, kept as the
/// reference the level-parallel kernel is tested against.
ReachingSearchResult minimal_reaching_collection(const Game& game, std::span<const double> x,
                                                 const SearchOptions& opts = {});
}  // namespace reference

/// Euclidean projection of x onto the core: x itself (zero side payment, empty
/// collection) when x is already in the core, otherwise the projection found by
/// minimal_reaching_collection. Throws EmptyCoreError for unbalanced games.
ProjectionResult project_onto_core(const Game& game, std::span<const double> x, const SearchOptions& opts = {});

namespace detail {

/// Candidate state shared by both search implementations.
struct SearchNode {
  GramState state;
  Coalition last;
};

struct Evaluation {
  bool accepted = false;
  ProjectionResult projection;
};

Evaluation evaluate_candidate(const Game& game, const SearchNode& node, std::span<const double> x,
                              const Tolerances& tol);

/// Throws the documented errors when the search preconditions fail.
void check_search_preconditions(const Game& game, std::span<const double> x, const Tolerances& tol);

/// Proper coalitions used as the candidate pool at the given stage.
std::vector<Coalition> search_pool(const Game& game, std::span<const double> x, bool widened);

/// True if a is preferred over b: smaller distance, then lexicographic masks.
bool better(const ProjectionResult& a, const ProjectionResult& b);

}  // namespace detail

}  // namespace coreproj

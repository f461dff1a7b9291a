#include <deque>
#include <optional>
#include <stdexcept>

#include "coreproj/core_solver.hpp"

namespace coreproj::reference {

namespace {

// Literal queue form: pop a candidate, test it, enqueue its extensions. Once a
// candidate is accepted the rest of its cardinality level is still evaluated so
// the selection rule matches the level-parallel kernel.
std::optional<ReachingSearchResult> queue_search(const Game& game, std::span<const double> x,
                                                 const std::vector<Coalition>& pool, const Tolerances& tol,
                                                 std::size_t& explored) {
  const std::size_t n = game.n();
  std::deque<detail::SearchNode> queue;
  const GramState root = GramState::empty(n);
  for (Coalition s : pool) queue.push_back({update_gramian(root, s, tol), s});

  std::optional<ReachingSearchResult> best;
  std::size_t accepted_level = 0;
  while (!queue.empty()) {
    detail::SearchNode node = std::move(queue.front());
    queue.pop_front();
    const std::size_t size = node.state.collection.size();
    if (best && size > accepted_level) break;

    ++explored;
    detail::Evaluation ev = detail::evaluate_candidate(game, node, x, tol);
    if (ev.accepted) {
      if (!best || detail::better(ev.projection, best->projection)) {
        best = ReachingSearchResult{ev.projection.collection, std::move(ev.projection), 0, false};
      }
      accepted_level = size;
      continue;
    }
    if (best || size >= n - 1) continue;
    for (Coalition s : pool) {
      if (s.mask <= node.last.mask) continue;
      GramState grown = update_gramian(node.state, s, tol);
      if (grew(node.state, grown)) queue.push_back({std::move(grown), s});
    }
  }
  return best;
}

}  // namespace

ReachingSearchResult minimal_reaching_collection(const Game& game, std::span<const double> x,
                                                 const SearchOptions& opts) {
  detail::check_search_preconditions(game, x, opts.tol);
  std::size_t explored = 0;
  for (bool widened : {false, true}) {
    const auto pool = detail::search_pool(game, x, widened);
    if (auto found = queue_search(game, x, pool, opts.tol, explored)) {
      found->explored = explored;
      found->widened = widened;
      return *found;
    }
  }
  throw std::runtime_error("no reaching collection found (numerical tolerance too tight?)");
}

}  // namespace coreproj::reference

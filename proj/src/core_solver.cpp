#include "coreproj/core_solver.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "coreproj/errors.hpp"
#include "coreproj/lp.hpp"

namespace coreproj {

bool openmp_enabled() {
#ifdef COREPROJ_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

BalancednessReport is_balanced_game(const Game& game, const Tolerances& tol) {
  const std::size_t n = game.n();
  const auto proper = all_coalitions(n, false);
  const std::size_t k = proper.size();

  LinearProgram lp;
  lp.objective.resize(k);
  for (std::size_t j = 0; j < k; ++j) lp.objective[j] = game.worth(proper[j]);
  for (std::size_t i = 0; i < n; ++i) {
    LinearConstraint row{std::vector<double>(k, 0.0), 1.0};
    for (std::size_t j = 0; j < k; ++j) row.row[j] = proper[j].contains(i) ? 1.0 : 0.0;
    lp.equalities.push_back(std::move(row));
  }
  const LpOutcome res = solve_lp(lp);
  if (res.status != LpStatus::optimal) throw std::runtime_error("balancedness LP did not reach an optimum");

  BalancednessReport report;
  report.max_balanced_worth = res.value;
  report.balanced = res.value <= game.grand_worth() + tol.eq;
  for (std::size_t j = 0; j < k; ++j) {
    if (res.solution[j] > tol.pos) report.witness.emplace_back(proper[j], res.solution[j]);
  }
  return report;
}

namespace {

// Core constraints: x(T) >= v(T) for proper T, x(N) = v(N), x free.
LinearProgram core_program(const Game& game) {
  const std::size_t n = game.n();
  LinearProgram lp;
  lp.objective.assign(n, 0.0);
  lp.equalities.push_back({std::vector<double>(n, 1.0), game.grand_worth()});
  for (Coalition t : all_coalitions(n, false)) {
    LinearConstraint row{std::vector<double>(n, 0.0), -game.worth(t)};
    for (std::size_t i = 0; i < n; ++i) row.row[i] = t.contains(i) ? -1.0 : 0.0;
    lp.inequalities.push_back(std::move(row));
  }
  lp.make_free();
  return lp;
}

}  // namespace

CoalitionCollection exact_coalitions(const Game& game, const Tolerances& tol, Execution exec) {
  if (!is_balanced_game(game, tol).balanced) throw EmptyCoreError("exact coalitions undefined: empty core");
  const std::size_t n = game.n();
  const auto proper = all_coalitions(n, false);
  const LinearProgram base = core_program(game);
  std::vector<char> exact(proper.size(), 0);
  std::vector<char> failed(proper.size(), 0);
  const bool parallel = exec == Execution::parallel;
  const auto count = static_cast<std::ptrdiff_t>(proper.size());

#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::ptrdiff_t j = 0; j < count; ++j) {
    const Coalition s = proper[static_cast<std::size_t>(j)];
    LinearProgram lp = base;
    for (std::size_t i = 0; i < n; ++i) lp.objective[i] = s.contains(i) ? 1.0 : 0.0;
    try {
      const LpOutcome res = solve_lp(lp);
      if (res.status != LpStatus::optimal) {
        failed[static_cast<std::size_t>(j)] = 1;
      } else {
        exact[static_cast<std::size_t>(j)] = std::abs(res.value - game.worth(s)) <= tol.face ? 1 : 0;
      }
    } catch (...) {
      failed[static_cast<std::size_t>(j)] = 1;
    }
  }

  std::vector<Coalition> out;
  for (std::size_t j = 0; j < proper.size(); ++j) {
    if (failed[j]) throw std::runtime_error("core LP failed for coalition mask " + std::to_string(proper[j].mask));
    if (exact[j]) out.push_back(proper[j]);
  }
  out.push_back(game.grand());
  return CoalitionCollection(std::move(out));
}

bool in_core(const Game& game, std::span<const double> x, const Tolerances& tol) {
  if (x.size() != game.n()) throw std::invalid_argument("payment vector length does not match the player count");
  return max_excess(game, x) <= tol.face;
}

namespace detail {

namespace {

// Same arithmetic as cholesky + cholesky_solve on the Gram matrix, without the
// allocations. Most candidates die on a negative gamma, so this runs first.
bool gamma_sign_ok(const Game& game, std::span<const Coalition> q, std::span<const double> x, const Tolerances& tol) {
  thread_local std::vector<double> l;
  thread_local std::vector<double> y;
  const std::size_t n = game.n();
  const std::size_t k = q.size();
  l.assign(k * k, 0.0);
  y.resize(k);
  for (std::size_t j = 0; j < k; ++j) {
    double diag = eta_inner(n, q[j], q[j]);
    for (std::size_t p = 0; p < j; ++p) diag -= l[j * k + p] * l[j * k + p];
    if (!(diag > 0.0)) return false;
    const double ljj = std::sqrt(diag);
    l[j * k + j] = ljj;
    for (std::size_t i = j + 1; i < k; ++i) {
      double s = eta_inner(n, q[i], q[j]);
      for (std::size_t p = 0; p < j; ++p) s -= l[i * k + p] * l[j * k + p];
      l[i * k + j] = s / ljj;
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    y[i] = excess(game, q[i], x);
    for (std::size_t p = 0; p < i; ++p) y[i] -= l[i * k + p] * y[p];
    y[i] /= l[i * k + i];
  }
  for (std::size_t i = k; i-- > 0;) {
    for (std::size_t p = i + 1; p < k; ++p) y[i] -= l[p * k + i] * y[p];
    y[i] /= l[i * k + i];
    if (y[i] < -tol.face) return false;
  }
  return true;
}

}  // namespace

Evaluation evaluate_candidate(const Game& game, const SearchNode& node, std::span<const double> x,
                              const Tolerances& tol) {
  Evaluation ev;
  if (!gamma_sign_ok(game, node.state.collection.items(), x, tol)) return ev;
  try {
    ev.projection = project_collection_unchecked(game, node.state.collection, x);
  } catch (const SingularCollectionError&) {
    return ev;
  }
  for (const auto& [s, g] : ev.projection.gamma) {
    if (g < -tol.face) return ev;
  }
  ev.accepted = max_excess(game, ev.projection.point) <= tol.face;
  return ev;
}

void check_search_preconditions(const Game& game, std::span<const double> x, const Tolerances& tol) {
  if (x.size() != game.n()) throw std::invalid_argument("payment vector length does not match the player count");
  if (!is_balanced_game(game, tol).balanced) throw EmptyCoreError("empty core: the game is not balanced");
  if (in_core(game, x, tol)) throw AlreadyInCoreError("already in core");
}

std::vector<Coalition> search_pool(const Game& game, std::span<const double> x, bool widened) {
  if (widened) return all_coalitions(game.n(), false);
  const auto region = region_of(game, x);
  return {region.begin(), region.end()};
}

bool better(const ProjectionResult& a, const ProjectionResult& b) {
  const double scale = std::max({1.0, a.distance, b.distance});
  if (std::abs(a.distance - b.distance) > 1e-12 * scale) return a.distance < b.distance;
  return a.collection < b.collection;
}

}  // namespace detail

namespace {

using detail::Evaluation;
using detail::SearchNode;

// Children of one node, evaluated as they are made. Only accepted candidates
// are returned; the nodes themselves are kept only when another level follows.
struct Brood {
  std::vector<SearchNode> kids;
  std::vector<Evaluation> accepted;
  std::size_t evaluated = 0;
};

void raise_brood(const Game& game, std::span<const double> x, const SearchNode& parent,
                 const std::vector<Coalition>& pool, const Tolerances& tol, bool keep, Brood& out) {
  const auto base = parent.state.collection.items();
  std::vector<Coalition> q(base.begin(), base.end());
  q.push_back(Coalition{});
  for (Coalition s : pool) {
    if (s.mask <= parent.last.mask) continue;
    if (keep) {
      SearchNode child{update_gramian(parent.state, s, tol), s};
      if (!grew(parent.state, child.state)) continue;
      ++out.evaluated;
      Evaluation ev = detail::evaluate_candidate(game, child, x, tol);
      if (ev.accepted) out.accepted.push_back(std::move(ev));
      out.kids.push_back(std::move(child));
      continue;
    }
    // Last level: nothing is kept, so skip building the child state unless the
    // cheap tests pass. s has the largest mask, so appending keeps q sorted.
    if (!(residual_norm(parent.state, s) > tol.rank)) continue;
    ++out.evaluated;
    q.back() = s;
    if (!detail::gamma_sign_ok(game, q, x, tol)) continue;
    Evaluation ev = detail::evaluate_candidate(game, {update_gramian(parent.state, s, tol), s}, x, tol);
    if (ev.accepted) out.accepted.push_back(std::move(ev));
  }
}

std::optional<ReachingSearchResult> level_search(const Game& game, std::span<const double> x,
                                                 const std::vector<Coalition>& pool, const SearchOptions& opts,
                                                 std::size_t& explored) {
  const std::size_t n = game.n();
  const bool parallel = opts.execution == Execution::parallel;
  // The root's last mask is 0, so every pool coalition is offered at depth 1.
  std::vector<SearchNode> parents{SearchNode{GramState::empty(n), Coalition{}}};

  for (std::size_t depth = 1; depth <= n - 1 && !parents.empty(); ++depth) {
    const bool keep = depth < n - 1;
    std::vector<Brood> broods(parents.size());
    const auto count = static_cast<std::ptrdiff_t>(parents.size());

#pragma omp parallel for schedule(dynamic, 4) if (parallel)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
      const auto idx = static_cast<std::size_t>(i);
      raise_brood(game, x, parents[idx], pool, opts.tol, keep, broods[idx]);
    }

    // level barrier: scan accepted candidates in generation order
    std::optional<Evaluation> best;
    for (auto& b : broods) {
      explored += b.evaluated;
      for (auto& ev : b.accepted) {
        if (!best || detail::better(ev.projection, best->projection)) best = std::move(ev);
      }
    }
    if (best) {
      ReachingSearchResult out;
      out.collection = best->projection.collection;
      out.projection = std::move(best->projection);
      return out;
    }
    if (!keep) break;
    std::vector<SearchNode> next;
    for (auto& b : broods) {
      for (auto& kid : b.kids) next.push_back(std::move(kid));
    }
    parents = std::move(next);
  }
  return std::nullopt;
}

}  // namespace

ReachingSearchResult minimal_reaching_collection(const Game& game, std::span<const double> x,
                                                 const SearchOptions& opts) {
  detail::check_search_preconditions(game, x, opts.tol);
  std::size_t explored = 0;
  for (bool widened : {false, true}) {
    const auto pool = detail::search_pool(game, x, widened);
    if (auto found = level_search(game, x, pool, opts, explored)) {
      found->explored = explored;
      found->widened = widened;
      return *found;
    }
  }
  throw std::runtime_error("no reaching collection found (numerical tolerance too tight?)");
}

ProjectionResult project_onto_core(const Game& game, std::span<const double> x, const SearchOptions& opts) {
  if (x.size() != game.n()) throw std::invalid_argument("payment vector length does not match the player count");
  if (!is_balanced_game(game, opts.tol).balanced) throw EmptyCoreError("empty core: the game is not balanced");
  if (in_core(game, x, opts.tol)) {
    ProjectionResult out;
    out.point.assign(x.begin(), x.end());
    out.side_payment.assign(x.size(), 0.0);
    return out;
  }
  return minimal_reaching_collection(game, x, opts).projection;
}

}  // namespace coreproj

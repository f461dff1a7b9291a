#include "coreproj/projection.hpp"

#include <stdexcept>

#include "coreproj/errors.hpp"
#include "coreproj/linalg.hpp"

namespace coreproj {

namespace {

std::vector<double> excess_vector(const Game& game, const CoalitionCollection& q, std::span<const double> x) {
  std::vector<double> e;
  e.reserve(q.size());
  for (Coalition s : q) e.push_back(excess(game, s, x));
  return e;
}

ProjectionResult assemble(std::size_t n, const CoalitionCollection& q, std::span<const double> x,
                          std::span<const double> gamma) {
  ProjectionResult out;
  out.collection = q;
  out.side_payment.assign(n, 0.0);
  for (std::size_t k = 0; k < q.size(); ++k) {
    const auto eta = normal_vector(n, q[k]).coords;
    for (std::size_t i = 0; i < n; ++i) out.side_payment[i] += gamma[k] * eta[i];
    out.gamma.emplace_back(q[k], gamma[k]);
  }
  out.point.assign(x.begin(), x.end());
  for (std::size_t i = 0; i < n; ++i) out.point[i] += out.side_payment[i];
  out.distance = norm(out.side_payment);
  return out;
}

ProjectionResult from_point(const CoalitionCollection& q, std::span<const double> x, Payoff point, WeightMap gamma) {
  ProjectionResult out;
  out.collection = q;
  out.gamma = std::move(gamma);
  out.side_payment.resize(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.side_payment[i] = point[i] - x[i];
  out.point = std::move(point);
  out.distance = norm(out.side_payment);
  return out;
}

void check_length(const Game& game, std::span<const double> x) {
  if (x.size() != game.n()) throw std::invalid_argument("payment vector length does not match the player count");
}

}  // namespace

GramState independent_state(std::size_t n, const CoalitionCollection& q, const Tolerances& tol) {
  if (q.empty()) throw std::invalid_argument("projection: empty collection");
  for (Coalition s : q) {
    if (!s.is_proper(n)) throw std::invalid_argument("projection: collection must hold proper nonempty coalitions");
  }
  if (q.size() > n - 1) {
    throw SingularCollectionError("collection has more coalitions than the side-payment space has dimensions",
                                  std::vector<Coalition>(q.begin(), q.end()));
  }
  GramState state = GramState::empty(n);
  for (Coalition s : q) {
    GramState next = update_gramian(state, s, tol);
    if (!grew(state, next)) {
      std::vector<Coalition> dep(state.collection.begin(), state.collection.end());
      dep.push_back(s);
      throw SingularCollectionError("collection is not independent", std::move(dep));
    }
    state = std::move(next);
  }
  return state;
}

ProjectionResult project_single(const Game& game, Coalition s, std::span<const double> x) {
  check_length(game, x);
  if (!s.is_proper(game.n())) {
    throw std::invalid_argument("project_single: coalition must be nonempty and different from N");
  }
  const double gamma = excess(game, s, x) / eta_norm_sq(game.n(), s);
  const double g[] = {gamma};
  return assemble(game.n(), CoalitionCollection{s}, x, g);
}

double chi_single(const Game& game, Coalition s, Coalition t, std::span<const double> x) {
  check_length(game, x);
  if (!s.is_proper(game.n())) throw std::invalid_argument("chi_single: coalition must be nonempty and different from N");
  const std::size_t n = game.n();
  return excess(game, s, x) * eta_inner(n, s, t) - excess(game, t, x) * eta_norm_sq(n, s);
}

ProjectionResult project_collection(const Game& game, const CoalitionCollection& q, std::span<const double> x,
                                    const Tolerances& tol) {
  check_length(game, x);
  independent_state(game.n(), q, tol);
  return detail::project_collection_unchecked(game, q, x);
}

ProjectionResult detail::project_collection_unchecked(const Game& game, const CoalitionCollection& q,
                                                      std::span<const double> x) {
  const auto lower = cholesky(gram_matrix(game.n(), q));
  if (!lower) throw SingularCollectionError("Gram matrix is not positive definite", {});
  const auto gamma = cholesky_solve(*lower, excess_vector(game, q, x));
  return assemble(game.n(), q, x, gamma);
}

WeightMap gamma_cramer(const Game& game, const CoalitionCollection& q, std::span<const double> x,
                       const Tolerances& tol) {
  check_length(game, x);
  independent_state(game.n(), q, tol);
  const Matrix g = gram_matrix(game.n(), q);
  const double det = determinant(g);
  const auto e = excess_vector(game, q, x);
  WeightMap out;
  for (std::size_t col = 0; col < q.size(); ++col) {
    Matrix gs = g;
    for (std::size_t row = 0; row < q.size(); ++row) gs(row, col) = e[row];
    out.emplace_back(q[col], determinant(std::move(gs)) / det);
  }
  return out;
}

ProjectionResult project_collection_dual(const Game& game, const CoalitionCollection& q, std::span<const double> x,
                                         const Tolerances& tol) {
  check_length(game, x);
  independent_state(game.n(), q, tol);
  const DualBasis dual = dual_basis(game.n(), q);
  const auto e = excess_vector(game, q, x);
  Payoff point(x.begin(), x.end());
  for (std::size_t k = 0; k < q.size(); ++k) {
    for (std::size_t i = 0; i < game.n(); ++i) point[i] += e[k] * dual.vectors[k][i];
  }
  WeightMap gamma;
  for (std::size_t i = 0; i < q.size(); ++i) {
    double g = 0.0;
    for (std::size_t k = 0; k < q.size(); ++k) g += dual.coefficients[k][i] * e[k];
    gamma.emplace_back(q[i], g);
  }
  return from_point(q, x, std::move(point), std::move(gamma));
}

ProjectionResult project_collection_qr(const Game& game, const CoalitionCollection& q, std::span<const double> x,
                                       const Tolerances& tol) {
  check_length(game, x);
  const GramState state = independent_state(game.n(), q, tol);
  const ProjectionResult anchor = project_collection_dual(game, q, x, tol);
  const std::size_t n = game.n();
  std::vector<double> diff(n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = x[i] - anchor.point[i];
  Payoff point(x.begin(), x.end());
  for (const auto& v : state.orthobasis) {
    const double c = dot(v, diff);
    for (std::size_t i = 0; i < n; ++i) point[i] -= c * v[i];
  }
  return from_point(q, x, std::move(point), anchor.gamma);
}

double excess_after_projection(const Game& game, const CoalitionCollection& q, Coalition t,
                               std::span<const double> x, const Tolerances& tol) {
  const ProjectionResult proj = project_collection(game, q, x, tol);
  double e = excess(game, t, x);
  for (auto [s, g] : proj.gamma) e -= g * eta_inner(game.n(), s, t);
  return e;
}

}  // namespace coreproj

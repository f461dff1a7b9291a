#include "coreproj/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "coreproj/errors.hpp"
#include "coreproj/lp.hpp"

namespace coreproj {

NormalVector normal_vector(std::size_t n, Coalition s) {
  NormalVector out{s, std::vector<double>(n, 0.0)};
  if (s.empty() || s.is_grand(n)) return out;
  const double share = static_cast<double>(s.size()) / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) out.coords[i] = (s.contains(i) ? 1.0 : 0.0) - share;
  return out;
}

double eta_inner(std::size_t n, Coalition s, Coalition t) {
  return static_cast<double>((s & t).size()) -
         static_cast<double>(s.size()) * static_cast<double>(t.size()) / static_cast<double>(n);
}

namespace {

void require_proper(std::size_t n, const CoalitionCollection& q, const char* who) {
  if (q.empty()) throw std::invalid_argument(std::string(who) + ": empty collection");
  for (Coalition s : q) {
    if (!s.is_proper(n)) {
      throw std::invalid_argument(std::string(who) + ": collection contains " +
                                  (s.empty() ? std::string("the empty coalition") : std::string("N")));
    }
  }
}

}  // namespace

Matrix gram_matrix(std::size_t n, const CoalitionCollection& q) {
  require_proper(n, q, "gram_matrix");
  const std::size_t k = q.size();
  Matrix g(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      g(i, j) = g(j, i) = eta_inner(n, q[i], q[j]);
    }
  }
  return g;
}

bool is_independent(std::size_t n, const CoalitionCollection& q) {
  require_proper(n, q, "is_independent");
  if (q.size() > n - 1) return false;
  GramState state = GramState::empty(n);
  for (Coalition s : q) {
    GramState next = update_gramian(state, s);
    if (!grew(state, next)) return false;
    state = std::move(next);
  }
  return true;
}

std::optional<WeightMap> is_balanced_collection(std::size_t n, const CoalitionCollection& q, const Tolerances& tol) {
  if (q.empty()) throw std::invalid_argument("is_balanced_collection: empty collection");
  const std::size_t k = q.size();
  // variables: lambda_1..lambda_k >= 0, t free; maximize t with t <= lambda_S.
  LinearProgram lp;
  lp.objective.assign(k + 1, 0.0);
  lp.objective[k] = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    LinearConstraint row{std::vector<double>(k + 1, 0.0), 1.0};
    for (std::size_t j = 0; j < k; ++j) row.row[j] = q[j].contains(i) ? 1.0 : 0.0;
    lp.equalities.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < k; ++j) {
    LinearConstraint row{std::vector<double>(k + 1, 0.0), 0.0};
    row.row[j] = -1.0;
    row.row[k] = 1.0;
    lp.inequalities.push_back(std::move(row));
  }
  lp.lower.assign(k + 1, 0.0);
  lp.lower[k] = -kInf;
  lp.upper.assign(k + 1, kInf);

  const LpOutcome res = solve_lp(lp);
  if (res.status != LpStatus::optimal || res.value <= tol.pos) return std::nullopt;
  WeightMap weights;
  for (std::size_t j = 0; j < k; ++j) weights.emplace_back(q[j], res.solution[j]);
  return weights;
}

std::optional<SidePayment> unbalanced_witness(std::size_t n, const CoalitionCollection& q, const Tolerances& tol) {
  if (q.empty()) throw std::invalid_argument("unbalanced_witness: empty collection");
  // variables: sigma_1..sigma_n in [-1, 1], t free; maximize t with t <= sigma(S).
  LinearProgram lp;
  lp.objective.assign(n + 1, 0.0);
  lp.objective[n] = 1.0;
  LinearConstraint zero_sum{std::vector<double>(n + 1, 1.0), 0.0};
  zero_sum.row[n] = 0.0;
  lp.equalities.push_back(std::move(zero_sum));
  for (Coalition s : q) {
    LinearConstraint row{std::vector<double>(n + 1, 0.0), 0.0};
    for (std::size_t i = 0; i < n; ++i) row.row[i] = s.contains(i) ? -1.0 : 0.0;
    row.row[n] = 1.0;
    lp.inequalities.push_back(std::move(row));
  }
  lp.lower.assign(n + 1, -1.0);
  lp.upper.assign(n + 1, 1.0);
  lp.lower[n] = -kInf;
  lp.upper[n] = kInf;

  const LpOutcome res = solve_lp(lp);
  if (res.status != LpStatus::optimal || res.value <= tol.pos) return std::nullopt;
  return SidePayment(res.solution.begin(), res.solution.begin() + static_cast<std::ptrdiff_t>(n));
}

DualBasis dual_basis(std::size_t n, const CoalitionCollection& q) {
  if (!is_independent(n, q)) {
    throw SingularCollectionError("dual_basis: collection is not independent",
                                  std::vector<Coalition>(q.begin(), q.end()));
  }
  const Matrix g = gram_matrix(n, q);
  const auto lower = cholesky(g);
  if (!lower) throw SingularCollectionError("dual_basis: Gram matrix is not positive definite", {});

  const std::size_t k = q.size();
  std::vector<std::vector<double>> normals;
  for (Coalition s : q) normals.push_back(normal_vector(n, s).coords);

  DualBasis out{q, {}, {}};
  for (std::size_t j = 0; j < k; ++j) {
    std::vector<double> unit(k, 0.0);
    unit[j] = 1.0;
    const auto coeffs = cholesky_solve(*lower, unit);
    std::vector<double> h(n, 0.0);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t p = 0; p < n; ++p) h[p] += coeffs[i] * normals[i][p];
    }
    out.vectors.push_back(std::move(h));
    out.coefficients.push_back(coeffs);
  }
  return out;
}

namespace {

void fill_residual(const GramState& state, Coalition s, std::vector<double>& w) {
  const std::size_t n = state.n;
  w = normal_vector(n, s).coords;
  // For a unit side payment v, the component of eta^S along v is v(S) v.
  for (const auto& v : state.orthobasis) {
    const double c = payment(s, v);
    for (std::size_t i = 0; i < n; ++i) w[i] -= c * v[i];
  }
  // second pass against cancellation
  for (const auto& v : state.orthobasis) {
    const double c = dot(w, v);
    for (std::size_t i = 0; i < n; ++i) w[i] -= c * v[i];
  }
}

}  // namespace

double residual_norm(const GramState& state, Coalition s) {
  thread_local std::vector<double> w;
  fill_residual(state, s, w);
  return norm(w);
}

GramState update_gramian(const GramState& state, Coalition s, const Tolerances& tol) {
  const std::size_t n = state.n;
  if (!s.is_proper(n)) throw std::invalid_argument("update_gramian: coalition must be proper and nonempty");
  if (state.collection.contains(s)) throw std::invalid_argument("update_gramian: coalition already in collection");

  std::vector<double> w;
  fill_residual(state, s, w);

  GramState out = state;
  const double len = norm(w);
  if (!(len > tol.rank)) {
    out.dependent.push_back(s);
    return out;
  }
  for (double& wi : w) wi /= len;
  const double vs = payment(s, w);
  out.gramian *= vs * vs;
  out.orthobasis.push_back(std::move(w));
  out.collection = state.collection.with(s);
  return out;
}

}  // namespace coreproj

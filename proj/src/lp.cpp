#include "coreproj/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace coreproj {

void LinearProgram::make_free() {
  lower.assign(num_vars(), -kInf);
  upper.assign(num_vars(), kInf);
}

namespace {

// Original variable x_j = offset + sum(coeff * y_col) over its standard columns.
struct VarMap {
  double offset = 0.0;
  std::vector<std::pair<std::size_t, double>> terms;
};

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), a_((rows + 1) * (cols + 1), 0.0), basis_(rows) {}

  double& at(std::size_t i, std::size_t j) { return a_[i * (n_ + 1) + j]; }
  double at(std::size_t i, std::size_t j) const { return a_[i * (n_ + 1) + j]; }
  double& rhs(std::size_t i) { return at(i, n_); }
  double& cost(std::size_t j) { return at(m_, j); }
  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t p, std::size_t q) {
    const double piv = at(p, q);
    for (std::size_t j = 0; j <= n_; ++j) at(p, j) /= piv;
    at(p, q) = 1.0;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == p) continue;
      const double f = at(i, q);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= n_; ++j) at(i, j) -= f * at(p, j);
      at(i, q) = 0.0;
    }
    basis_[p] = q;
  }

  /// Loads `c` as the objective row and prices out the current basis.
  void set_objective(const std::vector<double>& c) {
    for (std::size_t j = 0; j <= n_; ++j) cost(j) = j < n_ ? c[j] : 0.0;
    for (std::size_t i = 0; i < m_; ++i) {
      const double cb = cost(basis_[i]);
      if (cb == 0.0) continue;
      for (std::size_t j = 0; j <= n_; ++j) cost(j) -= cb * at(i, j);
    }
  }

  double value() const { return -at(m_, n_); }

  enum class Result { optimal, unbounded };

  /// Primal simplex on the loaded objective (maximization) with Bland's rule.
  Result run(const std::vector<bool>& blocked, double tol) {
    const std::size_t max_iter = 50000 + 100 * (m_ + n_);
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
      std::size_t q = n_;
      for (std::size_t j = 0; j < n_; ++j) {
        if (!blocked[j] && cost(j) > tol) {
          q = j;
          break;
        }
      }
      if (q == n_) return Result::optimal;

      std::size_t p = m_;
      double best = kInf;
      for (std::size_t i = 0; i < m_; ++i) {
        const double aiq = at(i, q);
        if (aiq <= tol) continue;
        const double ratio = at(i, n_) / aiq;
        if (p == m_ || ratio < best - 1e-12 || (std::abs(ratio - best) <= 1e-12 && basis_[i] < basis_[p])) {
          best = ratio;
          p = i;
        }
      }
      if (p == m_) return Result::unbounded;
      pivot(p, q);
    }
    throw std::runtime_error("simplex: iteration limit reached");
  }

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<double> a_;
  std::vector<std::size_t> basis_;
};

void validate(const LinearProgram& lp) {
  const std::size_t nv = lp.num_vars();
  auto check_row = [&](const LinearConstraint& c, const char* kind) {
    if (c.row.size() != nv) {
      throw std::invalid_argument(std::string("lp: ") + kind + " row has " + std::to_string(c.row.size()) +
                                  " coefficients, expected " + std::to_string(nv));
    }
    for (double v : c.row) {
      if (!std::isfinite(v)) throw std::invalid_argument("lp: non-finite coefficient");
    }
    if (!std::isfinite(c.rhs)) throw std::invalid_argument("lp: non-finite right-hand side");
  };
  for (double v : lp.objective) {
    if (!std::isfinite(v)) throw std::invalid_argument("lp: non-finite objective coefficient");
  }
  for (const auto& c : lp.equalities) check_row(c, "equality");
  for (const auto& c : lp.inequalities) check_row(c, "inequality");
  if (!lp.lower.empty() && lp.lower.size() != nv) throw std::invalid_argument("lp: lower bounds size mismatch");
  if (!lp.upper.empty() && lp.upper.size() != nv) throw std::invalid_argument("lp: upper bounds size mismatch");
  for (std::size_t j = 0; j < nv; ++j) {
    const double lo = lp.lower.empty() ? 0.0 : lp.lower[j];
    const double hi = lp.upper.empty() ? kInf : lp.upper[j];
    if (std::isnan(lo) || std::isnan(hi) || lo > hi || lo == kInf || hi == -kInf) {
      throw std::invalid_argument("lp: invalid bounds for variable " + std::to_string(j));
    }
  }
}

}  // namespace

LpOutcome solve_lp(const LinearProgram& lp, double pivot_tol) {
  validate(lp);
  const std::size_t nv = lp.num_vars();

  // Rewrite every variable in terms of nonnegative standard columns.
  std::vector<VarMap> vars(nv);
  std::vector<LinearConstraint> ineqs = lp.inequalities;
  std::size_t ncols = 0;
  std::vector<std::pair<std::size_t, double>> range_rows;  // (standard column, width)
  for (std::size_t j = 0; j < nv; ++j) {
    const double lo = lp.lower.empty() ? 0.0 : lp.lower[j];
    const double hi = lp.upper.empty() ? kInf : lp.upper[j];
    if (std::isfinite(lo)) {
      vars[j].offset = lo;
      vars[j].terms.emplace_back(ncols, 1.0);
      if (std::isfinite(hi)) range_rows.emplace_back(ncols, hi - lo);
      ++ncols;
    } else if (std::isfinite(hi)) {
      vars[j].offset = hi;
      vars[j].terms.emplace_back(ncols++, -1.0);
    } else {
      vars[j].terms.emplace_back(ncols++, 1.0);
      vars[j].terms.emplace_back(ncols++, -1.0);
    }
  }
  const std::size_t nstd = ncols;

  auto to_standard = [&](const LinearConstraint& c) {
    LinearConstraint out{std::vector<double>(nstd, 0.0), c.rhs};
    for (std::size_t j = 0; j < nv; ++j) {
      if (c.row[j] == 0.0) continue;
      out.rhs -= c.row[j] * vars[j].offset;
      for (auto [col, coeff] : vars[j].terms) out.row[col] += c.row[j] * coeff;
    }
    return out;
  };

  std::vector<LinearConstraint> eq_rows;
  std::vector<LinearConstraint> le_rows;
  for (const auto& c : lp.equalities) eq_rows.push_back(to_standard(c));
  for (const auto& c : ineqs) le_rows.push_back(to_standard(c));
  for (auto [col, width] : range_rows) {
    LinearConstraint r{std::vector<double>(nstd, 0.0), width};
    r.row[col] = 1.0;
    le_rows.push_back(std::move(r));
  }

  const std::size_t m = eq_rows.size() + le_rows.size();
  const std::size_t nslack = le_rows.size();
  // Artificial columns: every equality row, and inequality rows with negative rhs.
  std::size_t nart = eq_rows.size();
  for (const auto& r : le_rows) nart += r.rhs < 0.0 ? 1 : 0;

  const std::size_t total = nstd + nslack + nart;
  Tableau t(m, total);
  std::vector<bool> is_art(total, false);
  double bmax = 0.0;

  std::size_t art = nstd + nslack;
  for (std::size_t i = 0; i < eq_rows.size(); ++i) {
    const double sign = eq_rows[i].rhs < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < nstd; ++j) t.at(i, j) = sign * eq_rows[i].row[j];
    t.rhs(i) = sign * eq_rows[i].rhs;
    t.at(i, art) = 1.0;
    is_art[art] = true;
    t.basis()[i] = art++;
    bmax = std::max(bmax, std::abs(t.rhs(i)));
  }
  for (std::size_t k = 0; k < le_rows.size(); ++k) {
    const std::size_t i = eq_rows.size() + k;
    const std::size_t slack = nstd + k;
    const double sign = le_rows[k].rhs < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < nstd; ++j) t.at(i, j) = sign * le_rows[k].row[j];
    t.at(i, slack) = sign;
    t.rhs(i) = sign * le_rows[k].rhs;
    if (sign < 0.0) {
      t.at(i, art) = 1.0;
      is_art[art] = true;
      t.basis()[i] = art++;
    } else {
      t.basis()[i] = slack;
    }
    bmax = std::max(bmax, std::abs(t.rhs(i)));
  }

  LpOutcome out;
  std::vector<bool> blocked(total, false);

  if (nart > 0) {
    std::vector<double> phase1(total, 0.0);
    for (std::size_t j = 0; j < total; ++j) phase1[j] = is_art[j] ? -1.0 : 0.0;
    t.set_objective(phase1);
    t.run(blocked, pivot_tol);
    if (t.value() < -1e-8 * (1.0 + bmax)) {
      out.status = LpStatus::infeasible;
      return out;
    }
    // Drive remaining (zero-level) artificials out of the basis; rows where
    // that is impossible are redundant and stay inert.
    for (std::size_t i = 0; i < m; ++i) {
      if (!is_art[t.basis()[i]]) continue;
      for (std::size_t j = 0; j < total; ++j) {
        if (!is_art[j] && std::abs(t.at(i, j)) > pivot_tol) {
          t.pivot(i, j);
          break;
        }
      }
    }
    for (std::size_t j = 0; j < total; ++j) blocked[j] = is_art[j];
  }

  std::vector<double> phase2(total, 0.0);
  {
    LinearConstraint obj{lp.objective, 0.0};
    auto std_obj = to_standard(obj);
    for (std::size_t j = 0; j < nstd; ++j) phase2[j] = std_obj.row[j];
  }
  t.set_objective(phase2);
  if (t.run(blocked, pivot_tol) == Tableau::Result::unbounded) {
    out.status = LpStatus::unbounded;
    return out;
  }

  std::vector<double> y(total, 0.0);
  for (std::size_t i = 0; i < m; ++i) y[t.basis()[i]] = t.rhs(i);
  out.status = LpStatus::optimal;
  out.solution.assign(nv, 0.0);
  out.value = 0.0;
  for (std::size_t j = 0; j < nv; ++j) {
    double v = vars[j].offset;
    for (auto [col, coeff] : vars[j].terms) v += coeff * y[col];
    out.solution[j] = v;
    out.value += lp.objective[j] * v;
  }
  return out;
}

}  // namespace coreproj

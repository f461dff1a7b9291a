#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "coreproj/errors.hpp"
#include "coreproj/projection.hpp"
#include "fixtures.hpp"
#include "instances.hpp"
#include "oracle.hpp"

using namespace coreproj;
using fixtures::max_abs_diff;
using fixtures::set;

namespace {

const Coalition A = set({0});
const Coalition B = set({1});
const Coalition BC = set({1, 2});

/// Random side payment that pays every coalition of q exactly zero.
SidePayment kernel_direction(std::size_t n, const CoalitionCollection& q, instances::Rng& rng) {
  SidePayment r = instances::random_side_payment(n, rng);
  // Gram-Schmidt on explicit normals, then remove their span from r.
  std::vector<oracle::Vec> basis;
  for (Coalition s : q) {
    oracle::Vec v = oracle::eta(n, s.mask);
    for (const auto& b : basis) {
      const double c = oracle::dot(v, b);
      for (std::size_t i = 0; i < n; ++i) v[i] -= c * b[i];
    }
    const double len = oracle::norm(v);
    for (double& c : v) c /= len;
    basis.push_back(v);
  }
  for (const auto& b : basis) {
    const double c = oracle::dot(r, b);
    for (std::size_t i = 0; i < n; ++i) r[i] -= c * b[i];
  }
  return r;
}

double gamma_of(const WeightMap& w, Coalition s) {
  for (const auto& [t, g] : w) {
    if (t == s) return g;
  }
  FAIL("coalition missing from gamma");
  return 0.0;
}

}  // namespace

TEST_SUITE("projection") {

TEST_CASE("single hyperplane projection") {
  const Game bal = fixtures::g_bal();
  const auto p = project_single(bal, BC, std::vector{1.0, 0.0, 0.0});
  CHECK(max_abs_diff(p.point, std::vector{0.4, 0.3, 0.3}) <= 1e-12);
  CHECK(gamma_of(p.gamma, BC) == doctest::Approx(0.9));
  CHECK(p.distance == doctest::Approx(0.9 * std::sqrt(2.0 / 3.0)));
  CHECK(max_abs_diff(p.side_payment, std::vector{-0.6, 0.3, 0.3}) <= 1e-12);
  CHECK(p.collection == CoalitionCollection{BC});

  const auto again = project_single(bal, BC, p.point);
  CHECK(std::abs(gamma_of(again.gamma, BC)) <= 1e-12);
  CHECK(again.distance <= 1e-12);
  CHECK(max_abs_diff(again.point, p.point) <= 1e-12);

  const double third = 1.0 / 3.0;
  const auto q = project_single(fixtures::g_point(), BC, std::vector{1.0, 0.0, 0.0});
  CHECK(max_abs_diff(q.point, std::vector{third, third, third}) <= 1e-12);

  CHECK_THROWS_AS(project_single(bal, Coalition(), std::vector{1.0, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(project_single(bal, Coalition::grand(3), std::vector{1.0, 0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("chi for a single coalition") {
  const Game bal = fixtures::g_bal();
  const std::vector x{1.0, 0.0, 0.0};
  CHECK(chi_single(bal, BC, B, x) == doctest::Approx(0.2));
  CHECK(chi_single(bal, B, BC, x) == doctest::Approx(-0.4));
  for (Coalition s : all_coalitions(3, false)) CHECK(std::abs(chi_single(bal, s, s, x)) <= 1e-15);
}

TEST_CASE("collection projection through the normal equations") {
  const Game g = fixtures::two_singletons();
  const std::vector x{-0.2, -0.1, 1.3};
  const auto p = project_collection(g, {A, B}, x);
  CHECK(max_abs_diff(p.point, std::vector{0.0, 0.0, 1.0}) <= 1e-12);
  CHECK(gamma_of(p.gamma, A) == doctest::Approx(0.5));
  CHECK(gamma_of(p.gamma, B) == doctest::Approx(0.4));

  const auto single = project_collection(fixtures::g_bal(), {BC}, std::vector{1.0, 0.0, 0.0});
  const auto direct = project_single(fixtures::g_bal(), BC, std::vector{1.0, 0.0, 0.0});
  CHECK(max_abs_diff(single.point, direct.point) <= 1e-12);

  const auto fixed = project_collection(g, {A, B}, p.point);
  CHECK(max_abs_diff(fixed.point, p.point) <= 1e-12);
  for (const auto& [s, gamma] : fixed.gamma) CHECK(std::abs(gamma) <= 1e-12);

  try {
    project_collection(g, {A, BC}, x);
    FAIL("expected a singular collection");
  } catch (const SingularCollectionError& e) {
    CHECK(e.dependent().size() == 2);
  }
}

TEST_CASE("Cramer coefficients") {
  const Game g = fixtures::two_singletons();
  const auto gamma = gamma_cramer(g, {A, B}, std::vector{-0.2, -0.1, 1.3});
  CHECK(gamma_of(gamma, A) == doctest::Approx(0.5));
  CHECK(gamma_of(gamma, B) == doctest::Approx(0.4));
  const auto single = gamma_cramer(fixtures::g_bal(), {BC}, std::vector{1.0, 0.0, 0.0});
  CHECK(gamma_of(single, BC) == doctest::Approx(0.6 / (2.0 / 3.0)));
  const auto zero = gamma_cramer(g, {A, B}, std::vector{0.0, 0.0, 1.0});
  for (const auto& [s, v] : zero) CHECK(v == 0.0);
  CHECK_THROWS_AS(gamma_cramer(g, {A, BC}, std::vector{0.0, 0.0, 1.0}), SingularCollectionError);
}

TEST_CASE("dual-basis and orthonormal routes") {
  const Game g = fixtures::two_singletons();
  const std::vector x{-0.2, -0.1, 1.3};
  const auto dual = project_collection_dual(g, {A, B}, x);
  const auto qr = project_collection_qr(g, {A, B}, x);
  CHECK(max_abs_diff(dual.point, std::vector{0.0, 0.0, 1.0}) <= 1e-12);
  CHECK(max_abs_diff(qr.point, std::vector{0.0, 0.0, 1.0}) <= 1e-9);

  const Game bal = fixtures::g_bal();
  const std::vector y{1.0, 0.0, 0.0};
  const auto single = project_single(bal, BC, y);
  CHECK(max_abs_diff(project_collection_dual(bal, {BC}, y).point, single.point) <= 1e-12);
  CHECK(max_abs_diff(project_collection_qr(bal, {BC}, y).point, single.point) <= 1e-12);

  const std::vector on_face{0.0, 0.0, 1.0};
  CHECK(max_abs_diff(project_collection_dual(g, {A, B}, on_face).point, on_face) <= 1e-12);
  CHECK(max_abs_diff(project_collection_qr(g, {A, B}, on_face).point, on_face) <= 1e-12);
  CHECK_THROWS_AS(project_collection_dual(g, {A, BC}, x), SingularCollectionError);
  CHECK_THROWS_AS(project_collection_qr(g, {A, BC}, x), SingularCollectionError);
}

TEST_CASE("excess after projection") {
  const Game bal = fixtures::g_bal();
  const std::vector x{1.0, 0.0, 0.0};
  CHECK(excess_after_projection(bal, {BC}, B, x) == doctest::Approx(-0.3));
  CHECK(excess_after_projection(bal, {BC}, A, x) == doctest::Approx(-0.4));
  CHECK(std::abs(excess_after_projection(bal, {BC}, BC, x)) <= 1e-12);
}

TEST_CASE("formulations agree on random collections") {
  instances::Rng rng(31);
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 2 + t % 5;
    const Game g = instances::random_game(n, rng);
    const auto q = instances::random_independent_collection(n, rng);
    const Payoff x = instances::random_preimputation(g, rng, 2.0);
    const auto chol = project_collection(g, q, x);
    const auto dual = project_collection_dual(g, q, x);
    const auto qr = project_collection_qr(g, q, x);
    const auto cramer = gamma_cramer(g, q, x);
    CHECK(max_abs_diff(chol.point, dual.point) <= 1e-9);
    CHECK(max_abs_diff(chol.point, qr.point) <= 1e-9);
    for (std::size_t j = 0; j < q.size(); ++j) {
      const double a = chol.gamma[j].second;
      CHECK(std::abs(cramer[j].second - a) <= 1e-8 * std::max(1.0, std::abs(a)));
    }
    const auto oracle_point = oracle::affine_projection(instances::worths(g), n,
                                                        [&] {
                                                          std::vector<oracle::Mask> m;
                                                          for (Coalition s : q) m.push_back(s.mask);
                                                          return m;
                                                        }(),
                                                        x);
    REQUIRE(oracle_point);
    CHECK(max_abs_diff(chol.point, *oracle_point) <= 1e-9);
  }
}

TEST_CASE("projection properties") {
  instances::Rng rng(32);
  for (int t = 0; t < 600; ++t) {
    const std::size_t n = 2 + t % 5;
    const Game g = instances::random_game(n, rng);
    const auto q = instances::random_independent_collection(n, rng);
    const Payoff x = instances::random_preimputation(g, rng, 2.0);
    const auto p = project_collection(g, q, x);

    CHECK(project_collection(g, q, p.point).distance <= 1e-9);
    for (Coalition s : q) CHECK(std::abs(payment(s, p.point) - g.worth(s)) <= 1e-8);
    CHECK(is_preimputation(g, p.point));
    CHECK(p.distance == doctest::Approx(oracle::norm(p.side_payment)));
    for (Coalition s : all_coalitions(n)) {
      CHECK(excess_after_projection(g, q, s, x) == doctest::Approx(excess(g, s, p.point)).epsilon(1e-9));
    }

    for (int k = 0; k < 5; ++k) {
      const SidePayment dir = kernel_direction(n, q, rng);
      Payoff z = p.point;
      for (std::size_t i = 0; i < n; ++i) z[i] += 3.0 * dir[i];
      double inner = 0.0;
      double dist = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        inner += (z[i] - p.point[i]) * (x[i] - p.point[i]);
        dist += (x[i] - z[i]) * (x[i] - z[i]);
      }
      CHECK(inner <= 1e-8);
      CHECK(std::sqrt(dist) >= p.distance - 1e-9);
    }
  }
}

TEST_CASE("single projections dominate via their coalition") {
  instances::Rng rng(33);
  int positive = 0;
  for (int t = 0; t < 4000; ++t) {
    const std::size_t n = 2 + t % 6;
    const Game g = instances::random_game(n, rng);
    const Payoff x = instances::random_preimputation(g, rng);
    const Coalition s = instances::random_proper(n, rng);
    if (!(excess(g, s, x) > 0.0)) continue;
    ++positive;
    CHECK(dominates(g, project_single(g, s, x).point, x, s));
  }
  CHECK(positive > 1000);
}

TEST_CASE("chi sign matches the excess at the projection") {
  instances::Rng rng(34);
  for (int t = 0; t < 2000; ++t) {
    const std::size_t n = 2 + t % 5;
    const Game g = instances::random_game(n, rng);
    const Payoff x = instances::random_preimputation(g, rng);
    const Coalition s = instances::random_proper(n, rng);
    const Coalition u = instances::random_proper(n, rng);
    const double chi = chi_single(g, s, u, x);
    const double after = excess(g, u, project_single(g, s, x).point);
    // chi = -||eta^S||^2 e_T(projection); skip knife-edge cases.
    if (std::abs(after) < 1e-9) continue;
    CHECK((chi >= 0.0) == (after <= 0.0));
    CHECK(chi == doctest::Approx(-eta_norm_sq(n, s) * after).epsilon(1e-9));
  }
}

}  // TEST_SUITE

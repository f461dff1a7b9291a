// Wall-clock timings of the search kernels, serial against OpenMP.
// usage: bench_core_projection [max_n] [instances]
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <vector>

#include "coreproj/core_solver.hpp"
#include "coreproj/market.hpp"

using namespace coreproj;

namespace {

std::vector<std::string> names(std::size_t n, char first) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(std::string(1, static_cast<char>(first + i)));
  return out;
}

// Worths sit below a random core point, so the core is never empty.
Game balanced_game(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> y(n);
  for (double& v : y) v = u(rng);
  return Game::from_function(names(n, 'a'), [&](Coalition s) {
    const double p = payment(s, y);
    return s.is_grand(n) ? p : p - 0.5 * u(rng);
  });
}

double time_it(const std::function<void()>& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t max_n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 5;
  const int count = argc > 2 ? std::atoi(argv[2]) : 20;
  std::printf("openmp: %s\n", openmp_enabled() ? "on" : "off");
  std::printf("%-22s %3s %12s %12s\n", "kernel", "n", "serial ms", "parallel ms");

  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (std::size_t n = 3; n <= max_n; ++n) {
    std::vector<Game> games;
    std::vector<Payoff> points;
    while (static_cast<int>(games.size()) < count) {
      Game g = balanced_game(n, rng);
      Payoff x(n);
      double sum = 0.0;
      for (double& v : x) sum += (v = u(rng));
      for (double& v : x) v += (g.worth(g.grand()) - sum) / static_cast<double>(n);
      if (in_core(g, x)) continue;
      games.push_back(std::move(g));
      points.push_back(std::move(x));
    }
    const auto search = [&](Execution mode) {
      return time_it([&] {
        for (std::size_t i = 0; i < games.size(); ++i) minimal_reaching_collection(games[i], points[i], {{}, mode});
      });
    };
    const auto exact = [&](Execution mode) {
      return time_it([&] {
        for (const Game& g : games) exact_coalitions(g, {}, mode);
      });
    };
    std::printf("%-22s %3zu %12.2f %12.2f\n", "reaching search", n, search(Execution::serial),
                search(Execution::parallel));
    std::printf("%-22s %3zu %12.2f %12.2f\n", "exact coalitions", n, exact(Execution::serial),
                exact(Execution::parallel));
  }

  std::uniform_real_distribution<double> pos(0.0, 2.0);
  for (std::size_t n : {8u, 12u, 14u}) {
    Market m;
    m.players = names(n, 'a');
    m.commodities = 3;
    m.endowments.assign(n, std::vector<double>(3));
    m.utility_coeffs.assign(n, std::vector<double>(3));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t g = 0; g < 3; ++g) {
        m.endowments[i][g] = pos(rng);
        m.utility_coeffs[i][g] = pos(rng);
      }
    }
    const double s = time_it([&] { market_game(m, Execution::serial); });
    const double p = time_it([&] { market_game(m, Execution::parallel); });
    std::printf("%-22s %3zu %12.2f %12.2f\n", "market game", n, s, p);
  }
  return 0;
}

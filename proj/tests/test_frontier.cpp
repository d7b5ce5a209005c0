#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "oracles.hpp"
#include "specpart/errors.hpp"
#include "specpart/frontier.hpp"
#include "specpart/linalg.hpp"
#include "specpart/rng.hpp"
#include "specpart/theory.hpp"

using namespace specpart;

TEST_CASE("chain-tight candidate structure") {
  const auto cc = chernoff_constants(200, 12, 8);
  for (int k : {0, 1, 17, 100, 199}) {
    auto x = chain_tight_candidate(cc, k);
    const int n = 200;
    // antisymmetric and unit
    for (int i = 0; i < n; ++i)
      CHECK(x[i] == doctest::Approx(-x[2 * n - 1 - i]).epsilon(1e-15));
    CHECK(norm2(x) == doctest::Approx(1.0).epsilon(1e-12));
    // zero middle
    for (int i = n - k; i < n + k; ++i) CHECK(x[i] == 0.0);
    // every upper decay ratio tight on the leading block
    for (int i = 1; i <= n - k - 1; ++i)
      CHECK(x[i] == doctest::Approx(cc.upper_ratios[i - 1] * x[i - 1])
                        .epsilon(1e-13));
  }
  CHECK_THROWS_AS(chain_tight_candidate(cc, 200), ParamError);
  CHECK_THROWS_AS(chain_tight_candidate(cc, -1), ParamError);
}

TEST_CASE("solver result contracts") {
  ChernoffProgram prog;
  prog.n = 100;
  prog.constants = chernoff_constants(100, 6, 4);
  for (int k : {0, 10, 25, 50, 99}) {
    prog.k = k;
    SolverResult sol = solve_chernoff_program(prog);
    CHECK(sol.x.size() == 200);
    // feasibility asserted post hoc, independent of solver internals
    CHECK(max_constraint_violation(prog, sol.x) <= 1e-8);
    CHECK(sol.kkt_residual <= 1e-9);
    CHECK(sol.iterations > 0);
    // the reported objective is the four-block evaluation of x
    CHECK(sol.objective ==
          doctest::Approx(cos_objective(sol.x, k)).epsilon(1e-10));
    // the closed-form candidate is feasible, so it lower-bounds the optimum
    auto cand = chain_tight_candidate(prog.constants, k);
    CHECK(sol.objective >= cos_objective(cand, k) - 1e-6);
    // relative gap to the candidate stays under 1%
    if (cos_objective(cand, k) > 0.0)
      CHECK((sol.objective - cos_objective(cand, k)) /
                cos_objective(cand, k) <=
            0.01);
  }
}

TEST_CASE("solver matches the brute-force oracle on tiny programs") {
  for (int n : {2, 3}) {
    ChernoffProgram prog;
    prog.n = n;
    prog.constants = chernoff_constants(n, 0.3 * n, 0.2 * n);
    for (int k = 0; k < n; ++k) {
      prog.k = k;
      SolverResult sol = solve_chernoff_program(prog);
      const double oracle = oracles::grid_search_objective(prog.constants, k);
      CHECK(std::abs(sol.objective - oracle) <= 1e-3);
    }
  }
}

TEST_CASE("extreme k keeps the objective small and nonnegative") {
  ChernoffProgram prog;
  prog.n = 50;
  prog.constants = chernoff_constants(50, 3, 2);
  prog.k = 49;
  SolverResult sol = solve_chernoff_program(prog);
  CHECK(sol.objective >= 0.0);
  CHECK(sol.objective <= std::sqrt(1.0 - 49.0 / 50.0) + 1e-9);
}

TEST_CASE("an unreachable certificate tolerance reports the best iterate") {
  ChernoffProgram prog;
  prog.n = 50;
  prog.constants = chernoff_constants(50, 3, 2);
  prog.k = 5;
  try {
    solve_chernoff_program(prog, 1e-20);
    FAIL("expected SolverError");
  } catch (const SolverError& e) {
    CHECK(e.best().x.size() == 100);
    CHECK(e.best().objective > 0.0);
  }
}

TEST_CASE("solver frontier shape") {
  const int n = 500;
  auto grid = default_k_grid(n);
  auto pts = chernoff_frontier(n, 30, 20, grid);
  REQUIRE(pts.size() == grid.size());
  // k = 0 is the leftmost point; gamma rises with sin theta along the grid
  CHECK(pts.front().k == 0);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    CHECK(pts[i].sin_theta >= pts.front().sin_theta);
    CHECK(pts[i].sin_theta >= pts[i - 1].sin_theta - 1e-12);
    CHECK(pts[i].gamma >= pts[i - 1].gamma);
  }
  // mid-range frontier sits strictly below the sharp quadratic curve
  for (const auto& p : pts)
    if (p.gamma >= 0.02 && p.gamma <= 0.3)
      CHECK(p.gamma <= p.sin_theta * p.sin_theta - 1e-6);
}

TEST_CASE("doubling n lifts the frontier at fixed gamma") {
  // at matched gamma the larger model needs a smaller angle, i.e. the curve
  // moved up at fixed sin theta
  for (double gamma : {0.05, 0.1, 0.2}) {
    const int k500 = int(gamma * 500), k1000 = int(gamma * 1000);
    std::vector<int> a{k500}, b{k1000};
    auto p500 = chernoff_frontier(500, 30, 20, a);
    auto p1000 = chernoff_frontier(1000, 60, 40, b);
    CHECK(p1000.front().sin_theta < p500.front().sin_theta);
  }
}

TEST_CASE("binomial difference sampling") {
  SUBCASE("degenerate probabilities are deterministic") {
    Xoshiro256ss rng(1);
    for (int t = 0; t < 50; ++t) CHECK(sample_Y(40, 40, 40, rng) == 0);
  }
  SUBCASE("moments at the reference parameters") {
    Xoshiro256ss rng(7);
    const int reps = 100000;
    double mean = 0.0, sq = 0.0;
    for (int i = 0; i < reps; ++i) {
      const double y = double(sample_Y(500, 30, 20, rng));
      mean += y;
      sq += y * y;
    }
    mean /= reps;
    const double var = sq / reps - mean * mean;
    const double expect_var = 500 * (0.06 * 0.94 + 0.04 * 0.96);
    const double se_mean = std::sqrt(expect_var / reps);
    CHECK(std::abs(mean - 10.0) <= 4.0 * se_mean);
    CHECK(std::abs(var - expect_var) / expect_var <= 0.05);
  }
}

TEST_CASE("Monte Carlo band") {
  const int n = 200;
  std::vector<int> grid{0, 10, 20, 40};
  SUBCASE("deterministic for a fixed seed") {
    auto b1 = mc_frontier(n, 12, 8, 5, 99, grid);
    auto b2 = mc_frontier(n, 12, 8, 5, 99, grid);
    REQUIRE(b1.size() == b2.size());
    for (std::size_t i = 0; i < b1.size(); ++i) {
      CHECK(b1[i].sin_theta == b2[i].sin_theta);
      CHECK(b1[i].gamma == b2[i].gamma);
      CHECK(b1[i].k == b2[i].k);
    }
  }
  SUBCASE("all points in range") {
    for (const auto& p : mc_frontier(n, 12, 8, 10, 3, grid)) {
      CHECK(p.sin_theta >= 0.0);
      CHECK(p.sin_theta <= 1.0);
      CHECK(p.gamma >= 0.0);
      CHECK(p.gamma <= 1.0);
      CHECK(p.cos_theta <= 1.0);
    }
  }
  SUBCASE("equal affinities: sorting noise still aligns at sqrt(2/pi)") {
    // with a = b the entries are symmetric noise; sorting alone yields
    // cos ~ E|Y|/sqrt(E Y^2), about 0.798 under the normal approximation
    // (not zero: the ordered sum always manufactures alignment)
    std::vector<int> zero{0};
    auto band = mc_frontier(n, 10, 10, 20, 5, zero);
    std::vector<double> coss;
    for (const auto& p : band) coss.push_back(p.cos_theta);
    std::sort(coss.begin(), coss.end());
    const double median = coss[coss.size() / 2];
    CHECK(median == doctest::Approx(std::sqrt(2.0 / M_PI)).epsilon(0.05));
  }
  SUBCASE("median band sits to the right of the solver frontier") {
    std::vector<int> ks{10, 20, 40};
    auto solver = chernoff_frontier(n, 12, 8, ks);
    auto band = mc_frontier(n, 12, 8, 10, 17, ks);
    std::map<int, std::vector<double>> by_k;
    for (const auto& p : band) by_k[p.k].push_back(p.sin_theta);
    for (const auto& s : solver) {
      auto& v = by_k[s.k];
      std::sort(v.begin(), v.end());
      CHECK(v[v.size() / 2] >= s.sin_theta + 1e-6);
    }
  }
}

TEST_CASE("default k grid") {
  auto g1 = default_k_grid(100);
  CHECK(g1.front() == 0);
  CHECK(g1.back() == 50);
  CHECK(g1.size() == 51);  // full resolution below the cap
  auto g2 = default_k_grid(1000);
  CHECK(g2.size() <= 200);
  CHECK(g2.front() == 0);
  for (std::size_t i = 1; i < g2.size(); ++i) CHECK(g2[i] > g2[i - 1]);
  CHECK(g2.back() <= 500);
  auto g3 = default_k_grid(1000, 1000);
  CHECK(g3.size() == 501);  // full resolution by flag
}

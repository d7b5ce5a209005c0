#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "specpart/errors.hpp"
#include "specpart/rng.hpp"
#include "specpart/sbm.hpp"
#include "specpart/theory.hpp"

using namespace specpart;

TEST_CASE("tail-bound constants at the reference parameters") {
  const auto cc = chernoff_constants(500, 30, 20);
  // long-double oracle for the optimal tilt
  const long double t_oracle =
      oracles::t_star_long(0.06L, 0.94L, 0.04L, 0.96L);
  CHECK(cc.t_star == doctest::Approx(double(t_oracle)).epsilon(1e-14));
  CHECK(cc.t_star == doctest::Approx(0.21326).epsilon(1e-4));
  CHECK(cc.ln_C > 0.0);

  CHECK_THROWS_AS(chernoff_constants(500, 20, 20), ParamError);
  CHECK_THROWS_AS(chernoff_constants(500, 20, 30), ParamError);
  CHECK_THROWS_AS(chernoff_constants(0, 3, 2), ParamError);
}

TEST_CASE("decay ratios are strict contractions and telescope") {
  const auto cc = chernoff_constants(500, 30, 20);
  for (double r : cc.upper_ratios) {
    CHECK(r > 0.0);
    CHECK(r < 1.0);
  }
  for (double s : cc.lower_ratios) {
    CHECK(s > 0.0);
    CHECK(s < 1.0);
  }
  // cumulative product of upper ratios telescopes to a ratio of tail budgets
  double prod = 1.0;
  for (int i = 1; i <= cc.n - 1; ++i) {
    prod *= cc.upper_ratios[i - 1];
    const double expect = cc.log_term(i + 1) / cc.log_term(1);
    CHECK(prod == doctest::Approx(expect).epsilon(1e-12));
  }
}

TEST_CASE("log MGF identities") {
  SUBCASE("value at zero is zero") {
    CHECK(log_mgf_Y(0.0, 500, 30, 20, BinomExponent::full) == 0.0);
    CHECK(log_mgf_Y(0.0, 500, 30, 20, BinomExponent::half) == 0.0);
    CHECK(log_mgf_X(0.0, 500, 30, 20, BinomExponent::full) ==
          doctest::Approx(0.0).epsilon(1e-15));
  }
  SUBCASE("derivative at zero equals the mean under each convention") {
    const double h = 1e-6;
    const double d_full = (log_mgf_Y(h, 500, 30, 20, BinomExponent::full) -
                           log_mgf_Y(-h, 500, 30, 20, BinomExponent::full)) /
                          (2.0 * h);
    CHECK(d_full == doctest::Approx(10.0).epsilon(1e-6));
    const double d_half = (log_mgf_Y(h, 500, 30, 20, BinomExponent::half) -
                           log_mgf_Y(-h, 500, 30, 20, BinomExponent::half)) /
                          (2.0 * h);
    CHECK(d_half == doctest::Approx(5.0).epsilon(1e-6));
  }
  SUBCASE("symmetrized MGF is even") {
    Xoshiro256ss rng(3);
    for (int t = 0; t < 20; ++t) {
      const double tt = 4.0 * rng.next_double() - 2.0;
      CHECK(log_mgf_X(tt, 500, 30, 20, BinomExponent::full) ==
            doctest::Approx(log_mgf_X(-tt, 500, 30, 20, BinomExponent::full))
                .epsilon(1e-12));
    }
  }
  SUBCASE("the concentration constant is the full-n symmetrized MGF at t*") {
    // the convention question: only the full-n exponent reproduces ln C
    const auto cc = chernoff_constants(500, 30, 20);
    const double full = log_mgf_X(cc.t_star, 500, 30, 20, BinomExponent::full);
    const double half = log_mgf_X(cc.t_star, 500, 30, 20, BinomExponent::half);
    CHECK(full == doctest::Approx(cc.ln_C).epsilon(1e-12));
    CHECK(std::abs(half - cc.ln_C) > 0.1);
  }
}

TEST_CASE("quadratic bound curves") {
  CHECK(quad_bound(0.0).bound == 0.0);
  CHECK(quad_bound(0.0).sharp == 0.0);
  CHECK(quad_bound(0.6).sharp == doctest::Approx(0.36).epsilon(1e-15));
  CHECK(quad_bound(0.6).bound == doctest::Approx(0.48).epsilon(1e-15));
  CHECK(quad_bound(1.0).sharp == doctest::Approx(1.0));
  CHECK(quad_bound(1.0).bound == 1.0);  // clipped
  CHECK_THROWS_AS(quad_bound(-0.1), ParamError);
  CHECK_THROWS_AS(quad_bound(1.1), ParamError);
}

TEST_CASE("extremal vector and the four-block objective") {
  SUBCASE("k = 0 reproduces the truth direction") {
    const int n = 50;
    auto x = sharpness_vector(n, 0);
    auto u2 = truth_vector_u2(n);
    for (int i = 0; i < 2 * n; ++i)
      CHECK(x[i] == doctest::Approx(u2[i]).epsilon(1e-15));
    CHECK(cos_objective(x, 0) == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("full scan at n = 50: unit norm and the closed-form value") {
    const int n = 50;
    for (int k = 0; k < n; ++k) {
      auto x = sharpness_vector(n, k);
      CHECK(norm2(x) == doctest::Approx(1.0).epsilon(1e-12));
      const double expect = std::sqrt(1.0 - double(k) / n);
      CHECK(std::abs(cos_objective(x, k) - expect) <= 1e-12);
    }
    CHECK_THROWS_AS(sharpness_vector(n, n), ParamError);
    CHECK_THROWS_AS(sharpness_vector(n, -1), ParamError);
  }
  SUBCASE("the objective is linear in its input") {
    // Negating a descending-sorted vector breaks the sort precondition, so
    // oddness is checked through scaling and the signed four-block sum
    // computed directly.
    const int n = 20;
    Xoshiro256ss rng(6);
    std::vector<double> x(2 * n);
    for (auto& v : x) v = 2.0 * rng.next_double() - 1.0;
    std::sort(x.begin(), x.end(), std::greater<>());
    const int k = 4;
    const double v = cos_objective(x, k);
    auto scaled = x;
    for (auto& e : scaled) e *= 2.5;
    CHECK(cos_objective(scaled, k) == doctest::Approx(2.5 * v).epsilon(1e-12));
    double manual = 0.0;
    for (int i = 0; i < 2 * n; ++i) {
      const bool plus = i < n - k || (i >= n && i < n + k);
      manual += (plus ? 1.0 : -1.0) * x[i];
    }
    manual /= std::sqrt(2.0 * n);
    CHECK(v == doctest::Approx(manual).epsilon(1e-13));
    CHECK(cos_objective(x, k) == doctest::Approx(-(-manual)).epsilon(1e-13));
  }
  SUBCASE("unsorted input is rejected") {
    std::vector<double> bad{0.1, 0.5, -0.2, -0.3};
    CHECK_THROWS_AS(cos_objective(bad, 0), ContractError);
    std::vector<double> odd{0.5, 0.1, -0.2};
    CHECK_THROWS_AS(cos_objective(odd, 0), ParamError);
  }
}

TEST_CASE("tail-bound prediction") {
  const auto cc = chernoff_constants(500, 30, 20);
  SUBCASE("closed form at gamma = 0") {
    // oracle: extended-precision evaluation of the formula
    const long double t = oracles::t_star_long(0.06L, 0.94L, 0.04L, 0.96L);
    const long double expect = std::sqrt(1000.0L) / t *
                               (cc.ln_C + 1.0L + std::log(2.002L));
    CHECK(chernoff_prediction(cc, 0.0) ==
          doctest::Approx(double(expect)).epsilon(1e-12));
  }
  SUBCASE("vanishes as gamma approaches one") {
    CHECK(chernoff_prediction(cc, 1.0 - 1e-12) <= 1e-8);
    CHECK_THROWS_AS(chernoff_prediction(cc, 1.0), ParamError);
    CHECK_THROWS_AS(chernoff_prediction(cc, -0.01), ParamError);
  }
  SUBCASE("strictly decreasing on [0, 0.9]") {
    double prev = chernoff_prediction(cc, 0.0);
    for (int i = 1; i <= 90; ++i) {
      const double cur = chernoff_prediction(cc, i / 100.0);
      CHECK(cur < prev);
      prev = cur;
    }
  }
}

TEST_CASE("normal prediction") {
  SUBCASE("gamma = 0 collapses the two density terms") {
    const int n = 500;
    const double denom = 2.0 + 1.0 / n;
    const double expect =
        2.0 / std::sqrt(2.0 * n) * (2.0 * n + 1.0) * phi(Phi_inv(1.0 / denom));
    CHECK(normal_prediction(n, 0.0) == doctest::Approx(expect).epsilon(1e-13));
  }
  SUBCASE("matches a bisection-quantile oracle at gamma = 0.1") {
    const int n = 500;
    const double denom = 2.0 + 1.0 / n;
    const double x_tail = -oracles::phi_inv_bisect(0.9 / denom);
    const double x_mid = -oracles::phi_inv_bisect(1.0 / denom);
    const double expect = 2.0 / std::sqrt(2.0 * n) * (2.0 * n + 1.0) *
                          (2.0 * phi(x_tail) - phi(x_mid));
    CHECK(normal_prediction(n, 0.1) == doctest::Approx(expect).epsilon(1e-9));
  }
  SUBCASE("strictly decreasing in gamma") {
    double prev = normal_prediction(500, 0.0);
    for (int i = 1; i <= 99; ++i) {
      const double cur = normal_prediction(500, i / 100.0);
      CHECK(cur < prev);
      prev = cur;
    }
    CHECK_THROWS_AS(normal_prediction(500, 1.0), ParamError);
  }
}

TEST_CASE("normal density, cdf and quantile") {
  // high-precision oracle for the density constant
  const long double inv_sqrt_2pi =
      1.0L / std::sqrt(2.0L * 3.14159265358979323846264338327950288L);
  CHECK(phi(0.0) == doctest::Approx(double(inv_sqrt_2pi)).epsilon(1e-15));
  CHECK(phi(0.0) == doctest::Approx(0.3989423).epsilon(1e-7));
  CHECK(Phi_inv(0.5) == 0.0);
  CHECK_THROWS_AS(Phi_inv(0.0), ParamError);
  CHECK_THROWS_AS(Phi_inv(1.0), ParamError);

  Xoshiro256ss rng(41);
  for (int t = 0; t < 1000; ++t) {
    const double p = rng.next_double() * 0.999998 + 1e-6;
    CHECK(std::abs(Phi(Phi_inv(p)) - p) <= 1e-9);
  }
  for (int t = 0; t < 100; ++t) {
    const double x = 8.0 * rng.next_double() - 4.0;
    CHECK(Phi(-x) == doctest::Approx(1.0 - Phi(x)).epsilon(1e-12));
  }
  // cross-check the rational approximation against bisection
  for (int t = 0; t < 50; ++t) {
    const double p = rng.next_double() * 0.9998 + 1e-4;
    CHECK(std::abs(Phi_inv(p) - oracles::phi_inv_bisect(p)) <= 1e-9);
  }
}

TEST_CASE("quantile partial sums track the density approximation") {
  // relative gap between sum_{j<=i} Phi_inv(1 - j/(2n+1)) and (2n+1) phi(x_i)
  // stays under 2% for i >= n/2 at n = 500
  const int n = 500;
  double partial = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double x = Phi_inv(1.0 - double(i) / (2 * n + 1));
    partial += x;
    if (i >= n / 2) {
      const double approx = (2.0 * n + 1.0) * phi(x);
      CHECK(std::abs(partial - approx) / approx <= 0.02);
    }
  }
}

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "specpart/errors.hpp"
#include "specpart/rng.hpp"
#include "specpart/theory.hpp"

namespace specpart {

enum class Method {
  quad,
  chernoff_opt,
  chernoff_pred,
  mc,
  normal_pred,
  algorithm,
};

std::string method_name(Method m);

/// One point of a (sin theta, gamma) frontier, tagged with the method and
/// generating parameters.
struct FrontierPoint {
  double sin_theta = 0.0;
  double gamma = 0.0;
  Method method = Method::quad;
  int n = 0;
  double a = 0.0;
  double b = 0.0;
  int k = -1;
  int rep = -1;
  double cos_theta = 0.0;
};

/// Maximize the four-block alignment objective over unit-ball vectors that
/// are sorted descending and obey the tail-bound decay ratios:
///   |x| <= 1
///   x_{i+1} <= x_i                 for all i
///   x_{i+1} <= r_i x_i             for i = 1..n-1
///   x_i     >= s_i x_{i+1}         for i = n+1..2n-1
struct ChernoffProgram {
  int n = 0;
  ChernoffConstants constants;
  int k = 0;

  /// The +/- 1/sqrt(2n) objective coefficients: n-k leading +, k -, k +,
  /// n-k trailing -.
  std::vector<double> objective_coefficients() const;
};

struct SolverResult {
  std::vector<double> x;
  double objective = 0.0;
  double kkt_residual = 0.0;
  int iterations = 0;
};

/// Thrown when the interior-point iteration cap is exceeded; carries the
/// best iterate reached.
class SolverError : public NumericalError {
 public:
  SolverError(const std::string& msg, SolverResult best)
      : NumericalError(msg, best.kkt_residual), best_(std::move(best)) {}
  const SolverResult& best() const { return best_; }

 private:
  SolverResult best_;
};

/// Closed-form feasible candidate with every upper decay ratio tight on the
/// leading block, zero middle, and the mirrored negative tail; unit norm.
std::vector<double> chain_tight_candidate(const ChernoffConstants& constants,
                                          int k);
std::vector<double> chain_tight_candidate(int n, double a, double b, int k);

/// Logarithmic-barrier interior-point solve of the program above. The
/// Newton systems are tridiagonal plus a rank-one ball term, so each step
/// is linear in n. Warm-started from a strictly feasible slack-decay chain.
SolverResult solve_chernoff_program(const ChernoffProgram& program,
                                    double tol = 1e-9);

/// Largest violation over every constraint of the program (0 when strictly
/// feasible); used to assert solver output feasibility post hoc.
double max_constraint_violation(const ChernoffProgram& program,
                                std::span<const double> x);

/// Frontier traced by the solver over a list of misclassification counts.
std::vector<FrontierPoint> chernoff_frontier(int n, double a, double b,
                                             std::span<const int> k_list);

/// One exact draw of Binomial(n, a/n) - Binomial(n, b/n) by Bernoulli
/// summation; no normal shortcut.
long sample_Y(int n, double a, double b, Xoshiro256ss& rng);

/// Monte Carlo frontier band: per repetition draw n entries as Y and n as
/// -Y, sort, normalize, then trace the objective over the k grid. Every
/// repetition's points are returned. Streams derive from
/// (seed, n, rep), so the band is identical regardless of scheduling.
std::vector<FrontierPoint> mc_frontier(int n, double a, double b, int reps,
                                       std::uint64_t seed,
                                       std::span<const int> k_grid);
std::vector<FrontierPoint> mc_frontier(int n, double a, double b, int reps,
                                       std::uint64_t seed);

/// Every integer k in [0, n/2], subsampled evenly to at most max_points.
std::vector<int> default_k_grid(int n, int max_points = 200);

}  // namespace specpart

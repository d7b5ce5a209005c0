#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "specpart/csvio.hpp"

namespace specpart {

/// Experiment sweep configuration. a and b scale with n (a = a_frac * n).
struct SweepConfig {
  int n_min = 500;
  int n_max = 1000;
  int n_step = 25;
  double a_frac = 0.06;
  double b_frac = 0.04;
  int reps = 10;
  std::uint64_t master_seed = 1;
  /// Subset of {algorithm-simplified, algorithm-original, algorithm-full,
  /// quad, chernoff-opt, chernoff-pred, mc, normal-pred}. Empty selects all.
  std::vector<std::string> methods;
  int mc_reps = 10;     // band repetitions per n inside a sweep
  int k_max_points = 200;

  void validate() const;
  std::vector<std::string> resolved_methods() const;
};

struct SweepOutcome {
  std::vector<CsvRow> rows;
  std::vector<std::string> cell_failures;
  std::string summary;
};

/// Runs all requested per-cell algorithm measurements and per-n curves.
/// Deterministic for a given config: every cell stream derives from
/// (master_seed, n, rep) only. A failing cell is recorded and skipped.
SweepOutcome run_sweep(const SweepConfig& cfg);

struct FitResult {
  std::string model;
  double constant = 0.0;
  double rss = 0.0;
  int point_count = 0;
};

struct FitPoint {
  double sin_theta = 0.0;
  double gamma = 0.0;
};

/// Fits the single scale s minimizing
///   sum_j (sin_theta_j - sqrt(1 - min(s*f(gamma_j), 1)^2))^2
/// by golden-section search over (0, s_max], where s_max makes the cap bind
/// at no fitted point. Points with gamma >= 1 are unusable; fewer than two
/// usable points raise ParamError.
FitResult fit_scale(const std::string& model_tag,
                    const std::function<double(double)>& raw_prediction,
                    const std::vector<FitPoint>& points);

/// Through-origin least squares of sin theta on (ln(2/gamma))^(-1/4).
/// Points with gamma <= 0 or gamma >= 2 are excluded.
FitResult fit_log_quarter(const std::vector<FitPoint>& points);

/// 1 - rss / total-sum-of-squares of the observed sin theta values.
double r_squared(double rss, const std::vector<FitPoint>& points);

/// Predicted sin theta under a fitted scale: sqrt(1 - min(s*f, 1)^2).
double scaled_sin_prediction(double s, double raw_prediction);

}  // namespace specpart

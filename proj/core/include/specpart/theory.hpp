#pragma once

#include <span>
#include <vector>

namespace specpart {

/// Exponent convention for the binomial-difference moment generating
/// function: each of the two binomial factors is raised either to n (the
/// difference of two Binomial(n, .) variables) or to n/2.
enum class BinomExponent { half, full };

/// Closed-form concentration quantities for the tail-bound constraint
/// system: the optimal tilt t*, the concentration constant C (kept in log
/// space; it is an n-th power and overflows otherwise), and the two decay
/// ratio families derived from it.
struct ChernoffConstants {
  int n = 0;
  double p_a = 0.0, q_a = 0.0, p_b = 0.0, q_b = 0.0;
  double t_star = 0.0;
  double ln_C = 0.0;
  /// upper_ratios[i-1] = r_i for i = 1..n-1 (x_{i+1} <= r_i x_i).
  std::vector<double> upper_ratios;
  /// lower_ratios[i-(n+1)] = s_i for i = n+1..2n-1 (x_i >= s_i x_{i+1}).
  std::vector<double> lower_ratios;

  /// ln C + ln(2n+1) - ln i, the log-space tail budget of rank i.
  double log_term(int i) const;
};

ChernoffConstants chernoff_constants(int n, double a, double b);

/// Log moment generating function of the binomial difference at t, under
/// the chosen exponent convention. Evaluated fully in log space.
double log_mgf_Y(double t, int n, double a, double b, BinomExponent conv);

/// Log MGF of the symmetrized variable (equally likely Y or -Y).
double log_mgf_X(double t, int n, double a, double b, BinomExponent conv);

struct QuadBound {
  double bound = 0.0;  // (4/3) sin^2, clipped to [0,1]
  double sharp = 0.0;  // sin^2
};
QuadBound quad_bound(double sin_theta);

/// The extremal unit vector: 1/sqrt(2(n-k)) on the first n-k coordinates,
/// zero on the middle 2k, mirrored negative on the rest.
std::vector<double> sharpness_vector(int n, int k);

/// Four-block signed sum (1/sqrt(2n)) * (sum_{1..n-k} - sum_{n-k+1..n}
/// + sum_{n+1..n+k} - sum_{n+k+1..2n}) over a descending-sorted vector of
/// length 2n. Throws ContractError when the input is not sorted.
double cos_objective(std::span<const double> x_sorted, int k);

/// Closed-form ceiling for the constrained alignment at error rate gamma:
/// (sqrt(2n)/t*) (1-gamma) (ln C + 1 + ln((2+1/n)/(1-gamma))). Unnormalized;
/// a single multiplicative scale is fitted downstream.
double chernoff_prediction(int n, double a, double b, double gamma);
double chernoff_prediction(const ChernoffConstants& constants, double gamma);

/// Normal-approximation ceiling: (2/sqrt(2n)) (2n+1)
/// (2 phi(-Phi_inv((1-gamma)/(2+1/n))) - phi(-Phi_inv(1/(2+1/n)))).
/// Unnormalized like the tail-bound prediction.
double normal_prediction(int n, double gamma);

/// Standard normal pdf / cdf / quantile. The quantile is the AS241
/// (Wichura) rational approximation; absolute error well below 1e-9.
double phi(double x);
double Phi(double x);
double Phi_inv(double p);

}  // namespace specpart

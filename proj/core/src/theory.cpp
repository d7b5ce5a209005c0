#include "specpart/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "specpart/errors.hpp"

namespace specpart {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;

double log_sum_exp(double x, double y) {
  if (x == -std::numeric_limits<double>::infinity()) return y;
  if (y == -std::numeric_limits<double>::infinity()) return x;
  const double m = std::max(x, y);
  return m + std::log1p(std::exp(std::min(x, y) - m));
}

void validate_probabilities(int n, double a, double b) {
  if (n <= 0) throw ParamError("n must be positive");
  if (!(a >= 0.0 && a <= n)) throw ParamError("a/n must be a probability");
  if (!(b >= 0.0 && b <= n)) throw ParamError("b/n must be a probability");
}

}  // namespace

double phi(double x) { return kInvSqrt2Pi * std::exp(-0.5 * x * x); }

double Phi(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double Phi_inv(double p) {
  if (!(p > 0.0 && p < 1.0))
    throw ParamError("normal quantile requires p in (0,1)");

  // AS241 PPND16 rational approximations.
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
              6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
            1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
          1.3314166789178437745e2) * r + 3.3871328727963666080e0);
    const double den =
        (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
              3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
            5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
          4.2313330701600911252e1) * r + 1.0);
    return q * num / den;
  }

  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
            3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
          4.63033784615654529590e0) * r + 1.42343711074968357734e0);
    const double den =
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
          2.05319162663775882187e0) * r + 1.0);
    value = num / den;
  } else {
    r -= 5.0;
    const double num =
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
          5.46378491116411436990e0) * r + 6.65790464350110377720e0);
    const double den =
        ((((((1.42151175831644588870e-15 * r + 1.84631831751005468180e-6) * r +
             7.86869131145613259100e-4) * r + 1.48753612908506148525e-2) * r +
           1.36929880922735805310e-1) * r + 5.99832206555887937690e-1) * r +
         1.0);
    value = num / den;
  }
  return q < 0.0 ? -value : value;
}

double ChernoffConstants::log_term(int i) const {
  return ln_C + std::log(2.0 * n + 1.0) - std::log(double(i));
}

ChernoffConstants chernoff_constants(int n, double a, double b) {
  if (n <= 0) throw ParamError("n must be positive");
  if (!(0.0 < b && b < a && a < n))
    throw ParamError("constraint constants need 0 < b < a < n");

  ChernoffConstants c;
  c.n = n;
  c.p_a = a / n;
  c.q_a = 1.0 - c.p_a;
  c.p_b = b / n;
  c.q_b = 1.0 - c.p_b;
  c.t_star = 0.5 * std::log((c.p_a * c.q_b) / (c.q_a * c.p_b));

  const double l1 =
      2.0 * n * std::log(std::sqrt(c.p_a * c.p_b) + std::sqrt(c.q_a * c.q_b));
  const double base2 =
      std::sqrt(c.q_a * c.q_a * c.q_a * c.p_b * c.p_b * c.p_b /
                (c.p_a * c.q_b)) +
      std::sqrt(c.p_a * c.p_a * c.p_a * c.q_b * c.q_b * c.q_b /
                (c.q_a * c.p_b)) +
      c.q_a * c.q_b + c.p_a * c.p_b;
  const double l2 = n * std::log(base2);
  c.ln_C = log_sum_exp(l1, l2) - std::log(2.0);

  if (!(c.log_term(n) > 0.0))
    throw ParamError(
        "tail budget is not positive across ranks; parameters outside the "
        "constraint system's regime");

  c.upper_ratios.resize(n - 1);
  for (int i = 1; i <= n - 1; ++i)
    c.upper_ratios[i - 1] = c.log_term(i + 1) / c.log_term(i);
  c.lower_ratios.resize(n - 1);
  for (int i = n + 1; i <= 2 * n - 1; ++i)
    c.lower_ratios[i - (n + 1)] =
        c.log_term(2 * n + 1 - i) / c.log_term(2 * n - i);
  return c;
}

double log_mgf_Y(double t, int n, double a, double b, BinomExponent conv) {
  validate_probabilities(n, a, b);
  const double pa = a / n, qa = 1.0 - pa;
  const double pb = b / n, qb = 1.0 - pb;
  const double exponent = conv == BinomExponent::full ? double(n) : n / 2.0;
  auto log_factor = [](double q, double p, double tt) {
    const double lq = q > 0.0 ? std::log(q)
                              : -std::numeric_limits<double>::infinity();
    const double lp = p > 0.0 ? std::log(p) + tt
                              : -std::numeric_limits<double>::infinity();
    return log_sum_exp(lq, lp);
  };
  return exponent * (log_factor(qa, pa, t) + log_factor(qb, pb, -t));
}

double log_mgf_X(double t, int n, double a, double b, BinomExponent conv) {
  return log_sum_exp(log_mgf_Y(t, n, a, b, conv),
                     log_mgf_Y(-t, n, a, b, conv)) -
         std::log(2.0);
}

QuadBound quad_bound(double sin_theta) {
  if (!(sin_theta >= 0.0 && sin_theta <= 1.0))
    throw ParamError("sin theta must lie in [0,1]");
  QuadBound q;
  q.sharp = sin_theta * sin_theta;
  q.bound = std::min(4.0 / 3.0 * q.sharp, 1.0);
  return q;
}

std::vector<double> sharpness_vector(int n, int k) {
  if (n <= 0) throw ParamError("n must be positive");
  if (k < 0 || k >= n) throw ParamError("k must satisfy 0 <= k < n");
  std::vector<double> x(2 * n, 0.0);
  const double v = 1.0 / std::sqrt(2.0 * (n - k));
  for (int i = 0; i < n - k; ++i) x[i] = v;
  for (int i = n + k; i < 2 * n; ++i) x[i] = -v;
  return x;
}

double cos_objective(std::span<const double> x_sorted, int k) {
  const std::size_t len = x_sorted.size();
  if (len == 0 || len % 2 != 0)
    throw ParamError("objective input must have even positive length");
  const int n = int(len / 2);
  if (k < 0 || k > n) throw ParamError("k must satisfy 0 <= k <= n");

  double scale = 0.0;
  for (double v : x_sorted) scale = std::max(scale, std::abs(v));
  const double slack = 1e-9 * std::max(scale, 1e-300);
  for (std::size_t i = 0; i + 1 < len; ++i)
    if (x_sorted[i + 1] > x_sorted[i] + slack)
      throw ContractError("objective input must be sorted descending");

  double sum = 0.0;
  for (int i = 0; i < n - k; ++i) sum += x_sorted[i];
  for (int i = n - k; i < n; ++i) sum -= x_sorted[i];
  for (int i = n; i < n + k; ++i) sum += x_sorted[i];
  for (int i = n + k; i < 2 * n; ++i) sum -= x_sorted[i];
  return sum / std::sqrt(2.0 * n);
}

double chernoff_prediction(const ChernoffConstants& constants, double gamma) {
  if (!(gamma >= 0.0 && gamma < 1.0))
    throw ParamError("gamma must lie in [0,1)");
  const double n = constants.n;
  return std::sqrt(2.0 * n) / constants.t_star * (1.0 - gamma) *
         (constants.ln_C + 1.0 +
          std::log((2.0 + 1.0 / n) / (1.0 - gamma)));
}

double chernoff_prediction(int n, double a, double b, double gamma) {
  return chernoff_prediction(chernoff_constants(n, a, b), gamma);
}

double normal_prediction(int n, double gamma) {
  if (n <= 0) throw ParamError("n must be positive");
  if (!(gamma >= 0.0 && gamma < 1.0))
    throw ParamError("gamma must lie in [0,1)");
  const double denom = 2.0 + 1.0 / n;
  const double x_tail = -Phi_inv((1.0 - gamma) / denom);
  const double x_mid = -Phi_inv(1.0 / denom);
  return 2.0 / std::sqrt(2.0 * n) * (2.0 * n + 1.0) *
         (2.0 * phi(x_tail) - phi(x_mid));
}

}  // namespace specpart

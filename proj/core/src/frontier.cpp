#include "specpart/frontier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "specpart/linalg.hpp"

namespace specpart {

std::string method_name(Method m) {
  switch (m) {
    case Method::quad: return "quad";
    case Method::chernoff_opt: return "chernoff-opt";
    case Method::chernoff_pred: return "chernoff-pred";
    case Method::mc: return "mc";
    case Method::normal_pred: return "normal-pred";
    case Method::algorithm: return "algorithm";
  }
  return "unknown";
}

std::vector<double> ChernoffProgram::objective_coefficients() const {
  const double w = 1.0 / std::sqrt(2.0 * n);
  std::vector<double> c(std::size_t(2) * n);
  for (int i = 0; i < n - k; ++i) c[i] = w;
  for (int i = n - k; i < n; ++i) c[i] = -w;
  for (int i = n; i < n + k; ++i) c[i] = w;
  for (int i = n + k; i < 2 * n; ++i) c[i] = -w;
  return c;
}

std::vector<double> chain_tight_candidate(const ChernoffConstants& constants,
                                          int k) {
  const int n = constants.n;
  if (k < 0 || k >= n) throw ParamError("k must satisfy 0 <= k < n");
  std::vector<double> x(std::size_t(2) * n, 0.0);
  double sq = 0.0;
  for (int i = 1; i <= n - k; ++i) {
    const double v = constants.log_term(i);
    x[i - 1] = v;
    x[2 * n - i] = -v;
    sq += 2.0 * v * v;
  }
  const double scale_factor = 1.0 / std::sqrt(sq);
  for (auto& v : x) v *= scale_factor;
  return x;
}

std::vector<double> chain_tight_candidate(int n, double a, double b, int k) {
  return chain_tight_candidate(chernoff_constants(n, a, b), k);
}

namespace {

// One-sided linear constraints of the program, each coupling two adjacent
// coordinates: g(x) = lo * x_i + hi * x_{i+1} <= 0.
struct AdjacentConstraint {
  int i;
  double lo;
  double hi;
};

std::vector<AdjacentConstraint> build_constraints(
    const ChernoffConstants& cc) {
  const int n = cc.n;
  std::vector<AdjacentConstraint> rows;
  rows.reserve(std::size_t(4) * n);
  // Sortedness: x_{i+1} - x_i <= 0 for every adjacent pair.
  for (int i = 0; i + 1 < 2 * n; ++i) rows.push_back({i, -1.0, 1.0});
  // Upper decay ratios on the leading half (1-based i = 1..n-1).
  for (int i = 1; i <= n - 1; ++i)
    rows.push_back({i - 1, -cc.upper_ratios[i - 1], 1.0});
  // Lower decay ratios on the trailing half (1-based i = n+1..2n-1):
  // s_i x_{i+1} - x_i <= 0.
  for (int i = n + 1; i <= 2 * n - 1; ++i)
    rows.push_back({i - 1, -1.0, cc.lower_ratios[i - (n + 1)]});
  return rows;
}

// Weighted isotonic regression (non-increasing fit) by pool-adjacent
// violators. Returns the fitted values; merge count reported via merges.
std::vector<double> pava_non_increasing(std::span<const double> y,
                                        std::span<const double> w,
                                        int* merges) {
  struct Block {
    double weight;
    double mean;
    int count;
  };
  std::vector<Block> blocks;
  blocks.reserve(y.size());
  int merge_count = 0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    blocks.push_back({w[i], y[i], 1});
    while (blocks.size() >= 2 &&
           blocks[blocks.size() - 1].mean > blocks[blocks.size() - 2].mean) {
      Block top = blocks.back();
      blocks.pop_back();
      Block& prev = blocks.back();
      const double tw = prev.weight + top.weight;
      prev.mean = (prev.weight * prev.mean + top.weight * top.mean) / tw;
      prev.weight = tw;
      prev.count += top.count;
      ++merge_count;
    }
  }
  std::vector<double> fitted;
  fitted.reserve(y.size());
  for (const auto& b : blocks)
    fitted.insert(fitted.end(), b.count, b.mean);
  if (merges) *merges = merge_count;
  return fitted;
}

}  // namespace

double max_constraint_violation(const ChernoffProgram& program,
                                std::span<const double> x) {
  const auto rows = build_constraints(program.constants);
  double worst = dot(x, x) - 1.0;
  for (const auto& r : rows)
    worst = std::max(worst, r.lo * x[r.i] + r.hi * x[r.i + 1]);
  return std::max(worst, 0.0);
}

SolverResult solve_chernoff_program(const ChernoffProgram& program,
                                    double tol) {
  const int n = program.n;
  if (n < 2) throw ParamError("program needs n >= 2");
  if (program.k < 0 || program.k >= n)
    throw ParamError("k must satisfy 0 <= k < n");
  if (!(tol > 0.0)) throw ParamError("tolerance must be positive");
  const int dim = 2 * n;
  const ChernoffConstants& cc = program.constants;

  // The program is invariant under the mirror map x_i -> -x_{2n+1-i} and its
  // optimum is unique (two optima would average to an interior point that
  // rescales to a better feasible one), hence antisymmetric. On the
  // antisymmetric slice the middle sortedness constraint reads x_n >= 0, so
  // every leading entry is nonnegative and the sortedness rows are implied
  // by the decay-ratio rows. Substituting x_i = log_term(i) * z_i turns the
  // leading-half feasible set into {z non-increasing, z_n >= 0} and the
  // solve into a weighted isotonic projection: exact, O(n), and solved by
  // pool-adjacent-violators plus clipping at zero.
  const std::vector<double> c = program.objective_coefficients();
  std::vector<double> terms(n + 1), y(n), w(n);
  for (int i = 1; i <= n; ++i) {
    terms[i] = cc.log_term(i);
    y[i - 1] = c[i - 1] / terms[i];
    w[i - 1] = 2.0 * terms[i] * terms[i];
  }
  int merges = 0;
  std::vector<double> z = pava_non_increasing(y, w, &merges);
  for (auto& v : z) v = std::max(v, 0.0);

  std::vector<double> x(dim, 0.0);
  double sq = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double v = terms[i] * z[i - 1];
    x[i - 1] = v;
    x[dim - i] = -v;
    sq += 2.0 * v * v;
  }
  if (sq > 0.0) {
    const double inv = 1.0 / std::sqrt(sq);
    for (auto& v : x) v *= inv;
  }

  SolverResult result;
  result.x = x;
  result.objective = dot(c, x);
  result.iterations = merges + 1;

  // KKT certificate. With nu = objective/2 the stationarity condition is
  // sum_j lambda_j a_j = c - 2 nu x over tight rows with lambda >= 0. The
  // rows couple adjacent coordinates only, so multipliers follow by forward
  // substitution; sortedness is charged where strictly binding alone (the
  // equal-value middle), decay rows elsewhere. Leftovers at inactive pairs,
  // negative multipliers, and complementarity slip all land in the residual.
  const double nu = result.objective / 2.0;
  const double act_tol = 1e-11;
  double residual_sq = 0.0;
  double carry = 0.0;  // contribution of the previous pair at coordinate i
  for (int i = 0; i < dim; ++i) {
    const double needed = c[i] - 2.0 * nu * x[i] - carry;
    double lo = 0.0;     // active-row coefficient at this coordinate
    double hi = 0.0;     // and at the next one
    bool active = false;
    if (i + 1 < dim) {
      const bool sort_tight = x[i + 1] >= x[i] - act_tol;
      if (i + 1 <= n - 1 &&
          x[i + 1] >= cc.upper_ratios[i] * x[i] - act_tol) {
        lo = -cc.upper_ratios[i];
        hi = 1.0;
        active = true;
        if (sort_tight && std::abs(x[i]) <= act_tol) {
          lo = -1.0;  // both rows tight only on the zero block; charge sort
        }
      } else if (i + 1 >= n + 1 &&
                 x[i] <= cc.lower_ratios[i - n] * x[i + 1] + act_tol) {
        lo = -1.0;
        hi = cc.lower_ratios[i - n];
        active = true;
        if (sort_tight && std::abs(x[i + 1]) <= act_tol) hi = 1.0;
      } else if (sort_tight) {
        lo = -1.0;
        hi = 1.0;
        active = true;
      }
    }
    if (active) {
      double lambda = needed / lo;
      if (lambda < 0.0) {
        residual_sq += (lambda * lo) * (lambda * lo);
        lambda = 0.0;
      }
      carry = lambda * hi;
    } else {
      residual_sq += needed * needed;
      carry = 0.0;
    }
  }
  result.kkt_residual = std::sqrt(residual_sq);
  if (result.kkt_residual > tol)
    throw SolverError("optimality certificate exceeded tolerance", result);
  return result;
}

std::vector<FrontierPoint> chernoff_frontier(int n, double a, double b,
                                             std::span<const int> k_list) {
  ChernoffProgram program;
  program.n = n;
  program.constants = chernoff_constants(n, a, b);
  std::vector<FrontierPoint> points;
  points.reserve(k_list.size());
  for (int k : k_list) {
    program.k = k;
    SolverResult sol = solve_chernoff_program(program);
    FrontierPoint p;
    p.method = Method::chernoff_opt;
    p.n = n;
    p.a = a;
    p.b = b;
    p.k = k;
    p.cos_theta = std::clamp(sol.objective, 0.0, 1.0);
    p.sin_theta = std::sqrt(std::max(0.0, 1.0 - p.cos_theta * p.cos_theta));
    p.gamma = double(k) / n;
    points.push_back(p);
  }
  return points;
}

long sample_Y(int n, double a, double b, Xoshiro256ss& rng) {
  if (n <= 0) throw ParamError("n must be positive");
  const double pa = a / n;
  const double pb = b / n;
  if (!(pa >= 0.0 && pa <= 1.0 && pb >= 0.0 && pb <= 1.0))
    throw ParamError("a/n and b/n must be probabilities");
  long y = 0;
  for (int i = 0; i < n; ++i) y += rng.bernoulli(pa) ? 1 : 0;
  for (int i = 0; i < n; ++i) y -= rng.bernoulli(pb) ? 1 : 0;
  return y;
}

std::vector<FrontierPoint> mc_frontier(int n, double a, double b, int reps,
                                       std::uint64_t seed,
                                       std::span<const int> k_grid) {
  if (reps < 1) throw ParamError("reps must be at least 1");
  std::vector<FrontierPoint> points;
  points.reserve(std::size_t(reps) * k_grid.size());
  std::vector<double> x(std::size_t(2) * n);
  for (int rep = 0; rep < reps; ++rep) {
    Xoshiro256ss rng(derive_seed(seed, std::uint64_t(n), std::uint64_t(rep),
                                 0x6d63ULL));
    for (int i = 0; i < n; ++i) x[i] = double(sample_Y(n, a, b, rng));
    for (int i = n; i < 2 * n; ++i) x[i] = -double(sample_Y(n, a, b, rng));
    std::sort(x.begin(), x.end(), std::greater<>());
    const double nn = norm2(x);
    if (nn > 0.0) scale(std::span<double>(x), 1.0 / nn);
    for (int k : k_grid) {
      FrontierPoint p;
      p.method = Method::mc;
      p.n = n;
      p.a = a;
      p.b = b;
      p.k = k;
      p.rep = rep;
      const double raw = nn > 0.0 ? cos_objective(x, k) : 0.0;
      p.cos_theta = std::clamp(raw, 0.0, 1.0);
      p.sin_theta = std::sqrt(std::max(0.0, 1.0 - p.cos_theta * p.cos_theta));
      p.gamma = double(k) / n;
      points.push_back(p);
    }
  }
  return points;
}

std::vector<FrontierPoint> mc_frontier(int n, double a, double b, int reps,
                                       std::uint64_t seed) {
  auto grid = default_k_grid(n);
  return mc_frontier(n, a, b, reps, seed, grid);
}

std::vector<int> default_k_grid(int n, int max_points) {
  if (n <= 0) throw ParamError("n must be positive");
  if (max_points < 2) throw ParamError("grid needs at least 2 points");
  const int k_max = n / 2;
  const int count = k_max + 1;
  std::vector<int> grid;
  if (count <= max_points) {
    grid.resize(count);
    std::iota(grid.begin(), grid.end(), 0);
    return grid;
  }
  const int stride = (count + max_points - 1) / max_points;
  for (int k = 0; k <= k_max; k += stride) grid.push_back(k);
  return grid;
}

}  // namespace specpart

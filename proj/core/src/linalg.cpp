#include "specpart/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "specpart/errors.hpp"
#include "specpart/rng.hpp"

namespace specpart {

void SymMatrix::matvec(std::span<const double> x, std::span<double> y) const {
  const double* a = a_.data();
  for (int i = 0; i < dim_; ++i) {
    const double* row = a + std::size_t(i) * dim_;
    double acc = 0.0;
    for (int j = 0; j < dim_; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

std::vector<double> SymMatrix::matvec(std::span<const double> x) const {
  std::vector<double> y(dim_);
  matvec(x, y);
  return y;
}

double SymMatrix::max_abs_row_sum() const {
  double best = 0.0;
  for (int i = 0; i < dim_; ++i) {
    double s = 0.0;
    for (int j = 0; j < dim_; ++j) s += std::abs(at(i, j));
    best = std::max(best, s);
  }
  return best;
}

double SymMatrix::row_sum(int i) const {
  double s = 0.0;
  for (int j = 0; j < dim_; ++j) s += at(i, j);
  return s;
}

void SymMatrix::zero_row_col(int i) {
  for (int j = 0; j < dim_; ++j) set(i, j, 0.0);
}

double dot(std::span<const double> x, std::span<const double> y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double norm2(std::span<const double> x) { return std::sqrt(dot(x, x)); }

void scale(std::span<double> x, double s) {
  for (auto& v : x) v *= s;
}

void sign_normalize_by_max(std::span<double> x) {
  std::size_t arg = 0;
  double best = -1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i]) > best) {
      best = std::abs(x[i]);
      arg = i;
    }
  }
  if (!x.empty() && x[arg] < 0.0) scale(x, -1.0);
}

void sign_normalize_by_first(std::span<double> x) {
  double scale_ref = 0.0;
  for (double v : x) scale_ref = std::max(scale_ref, std::abs(v));
  if (scale_ref == 0.0) return;
  for (double v : x) {
    if (std::abs(v) > 1e-12 * scale_ref) {
      if (v < 0.0) scale(x, -1.0);
      return;
    }
  }
}

namespace {

void axpy(double a, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += a * x[i];
}

// Implicit-QL eigensolver for a symmetric tridiagonal matrix. d holds the
// diagonal, e the subdiagonal (e[i] couples i and i+1; e[m-1] unused).
// z is m x m row-major, initialized to identity by the caller; on return
// column k of z is the eigenvector for d[k]. Classic tqli scheme.
bool tridiag_ql(std::vector<double>& d, std::vector<double>& e, int m,
                std::vector<double>& z) {
  if (m == 1) return true;
  e[m - 1] = 0.0;
  for (int l = 0; l < m; ++l) {
    int iter = 0;
    int split;
    do {
      for (split = l; split < m - 1; ++split) {
        double dd = std::abs(d[split]) + std::abs(d[split + 1]);
        if (std::abs(e[split]) <= std::numeric_limits<double>::epsilon() * dd)
          break;
      }
      if (split != l) {
        if (iter++ == 60) return false;
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[split] - d[l] + e[l] / (g + std::copysign(r, g));
        double s = 1.0, c = 1.0, p = 0.0;
        int i;
        for (i = split - 1; i >= l; --i) {
          double f = s * e[i];
          double b = c * e[i];
          r = std::hypot(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[split] = 0.0;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          for (int k = 0; k < m; ++k) {
            double fk = z[std::size_t(k) * m + i + 1];
            z[std::size_t(k) * m + i + 1] =
                s * z[std::size_t(k) * m + i] + c * fk;
            z[std::size_t(k) * m + i] = c * z[std::size_t(k) * m + i] - s * fk;
          }
        }
        if (r == 0.0 && i >= l) continue;
        d[l] -= p;
        e[l] = g;
        e[split] = 0.0;
      }
    } while (split != l);
  }
  return true;
}

struct LanczosResult {
  std::vector<EigenPair> top;
  std::vector<EigenPair> bottom;
  EigenInfo info;
};

// Lanczos with full reorthogonalization on S + shift*I. Collects the k_top
// algebraically largest pairs and the k_bottom smallest. On breakdown the
// basis is extended with a fresh deterministic pseudorandom direction, so
// exact invariant subspaces (rank-deficient or degenerate matrices) are
// handled by continuing in the orthogonal complement.
LanczosResult lanczos_extremes(const SymMatrix& S, int k_top, int k_bottom,
                               double tol) {
  const int n = S.dim();
  const int want = k_top + k_bottom;
  if (want > n) throw ParamError("requested more eigenpairs than dimension");
  if (tol <= 0.0) throw ParamError("tolerance must be positive");

  const double shift = S.max_abs_row_sum();
  const double scale_ref = std::max(1.0, shift);

  Xoshiro256ss rng(0x5eedc0de00000001ULL);
  auto random_unit = [&](int dim) {
    std::vector<double> v(dim);
    for (auto& x : v) x = 2.0 * rng.next_double() - 1.0;
    double nn = norm2(v);
    scale(std::span<double>(v), 1.0 / nn);
    return v;
  };

  std::vector<std::vector<double>> basis;
  std::vector<double> alpha, beta;  // T diagonal / subdiagonal
  basis.push_back(random_unit(n));

  auto reorthogonalize = [&](std::vector<double>& w) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& v : basis) axpy(-dot(w, v), v, w);
  };

  const int cap = n;  // Krylov space is exact once the basis is full
  std::vector<double> w(n);
  double last_beta = 0.0;
  bool exhausted = false;
  // A single-vector Krylov space holds one direction per degenerate
  // eigenvalue. Fresh random directions are injected on breakdown and once
  // more after apparent convergence (the probe), and checks are deferred
  // until an injected direction has had a chance to surface in T.
  bool fresh_pending = false;
  bool probe_done = false;
  int checks_muted_until = 0;

  auto inject_fresh = [&]() {
    if (int(basis.size()) >= n) {
      exhausted = true;
      return;
    }
    for (int attempt = 0; attempt < 8; ++attempt) {
      std::vector<double> fresh = random_unit(n);
      reorthogonalize(fresh);
      double fn = norm2(fresh);
      if (fn > 1e-8) {
        scale(std::span<double>(fresh), 1.0 / fn);
        basis.push_back(std::move(fresh));
        fresh_pending = true;
        return;
      }
    }
    exhausted = true;
  };

  std::vector<double> d, e, z;  // last tridiagonal solve

  auto solve_t = [&](int m) {
    d.assign(alpha.begin(), alpha.begin() + m);
    e.assign(m, 0.0);
    for (int i = 0; i + 1 < m; ++i) e[i] = beta[i];
    z.assign(std::size_t(m) * m, 0.0);
    for (int i = 0; i < m; ++i) z[std::size_t(i) * m + i] = 1.0;
    if (!tridiag_ql(d, e, m, z))
      throw NumericalError("tridiagonal QL failed to converge");
  };

  // Ritz values of T sorted descending with their column indices.
  auto ritz_order = [&](int m) {
    std::vector<int> idx(m);
    for (int i = 0; i < m; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return d[a] > d[b]; });
    return idx;
  };

  auto estimate_converged = [&](int m) {
    auto idx = ritz_order(m);
    double norm_est = std::max(std::abs(d[idx.front()] - shift),
                               std::abs(d[idx.back()] - shift));
    double bound = tol * std::max(1.0, norm_est) * 0.5;
    for (int t = 0; t < k_top; ++t) {
      double res = std::abs(last_beta * z[std::size_t(m - 1) * m + idx[t]]);
      if (res > bound) return false;
    }
    for (int t = 0; t < k_bottom; ++t) {
      double res =
          std::abs(last_beta * z[std::size_t(m - 1) * m + idx[m - 1 - t]]);
      if (res > bound) return false;
    }
    return true;
  };

  auto check_interval = [](int m) {
    if (m <= 128) return 1;
    if (m <= 512) return 8;
    return 32;
  };

  double achieved_residual = std::numeric_limits<double>::quiet_NaN();

  for (int step = 0; step < cap && !exhausted; ++step) {
    const int m = int(basis.size());
    const auto& v = basis[m - 1];
    S.matvec(v, w);
    axpy(shift, v, w);
    double a = dot(w, v);
    alpha.push_back(a);
    fresh_pending = false;  // the newest direction now appears in T
    axpy(-a, v, w);
    if (m >= 2) axpy(-last_beta, basis[m - 2], w);
    reorthogonalize(w);
    double b = norm2(w);

    if (b <= 1e-13 * scale_ref) {
      // Invariant subspace found; continue in the orthogonal complement.
      last_beta = 0.0;
      beta.push_back(0.0);
      if (m >= n)
        exhausted = true;
      else
        inject_fresh();
    } else {
      scale(std::span<double>(w), 1.0 / b);
      basis.push_back(w);
      last_beta = b;
      beta.push_back(b);
    }

    const int mm = int(alpha.size());
    bool do_check = exhausted || mm >= n ||
                    (!fresh_pending && mm > checks_muted_until &&
                     mm >= want && mm % check_interval(mm) == 0);
    if (!do_check) continue;
    if (mm < want) {
      if (exhausted)
        throw NumericalError("Krylov space exhausted before finding " +
                             std::to_string(want) + " eigenpairs");
      continue;
    }

    solve_t(mm);
    if (!(estimate_converged(mm) || exhausted || mm >= n)) continue;

    // Form candidate Ritz vectors and verify true residuals.
    auto idx = ritz_order(mm);
    double norm_est = std::max(std::abs(d[idx.front()] - shift),
                               std::abs(d[idx.back()] - shift));
    double bound = tol * std::max(1.0, norm_est);

    auto make_vec = [&](int col) {
      std::vector<double> x(n, 0.0);
      for (int j = 0; j < mm; ++j)
        axpy(z[std::size_t(j) * mm + col], basis[j], x);
      double nn = norm2(x);
      if (nn > 0) scale(std::span<double>(x), 1.0 / nn);
      return x;
    };

    std::vector<int> targets;
    for (int t = 0; t < k_top; ++t) targets.push_back(idx[t]);
    for (int t = 0; t < k_bottom; ++t) targets.push_back(idx[mm - 1 - t]);

    double worst = 0.0;
    std::vector<EigenPair> pairs;
    for (int col : targets) {
      EigenPair p;
      p.value = d[col] - shift;
      p.vector = make_vec(col);
      std::vector<double> r = S.matvec(p.vector);
      axpy(-p.value, p.vector, r);
      worst = std::max(worst, norm2(r));
      pairs.push_back(std::move(p));
    }
    achieved_residual = worst;
    if (worst <= bound || exhausted || mm >= n) {
      if (worst > bound)
        throw NumericalError(
            "eigensolver exhausted the Krylov space at residual " +
                std::to_string(worst),
            worst);
      LanczosResult result;
      for (int t = 0; t < k_top; ++t) result.top.push_back(std::move(pairs[t]));
      for (int t = 0; t < k_bottom; ++t)
        result.bottom.push_back(std::move(pairs[k_top + t]));
      std::reverse(result.bottom.begin(), result.bottom.end());
      result.info.iterations = mm;
      result.info.max_residual = worst;
      if (mm > k_top) {
        result.info.next_value = d[idx[k_top]] - shift;
        result.info.has_next_value = true;
      }
      return result;
    }
  }

  throw NumericalError("eigensolver did not converge within the iteration cap",
                       achieved_residual);
}

// Within a cluster of numerically equal eigenvalues any orthonormal basis is
// valid; pick a canonical one (Gram-Schmidt of the all-ones vector, then
// coordinate axes, projected into the cluster span) so output is
// reproducible and tie cases are deterministic.
void canonicalize_clusters(std::vector<EigenPair>& pairs, double cluster_tol) {
  std::size_t i = 0;
  while (i < pairs.size()) {
    std::size_t j = i + 1;
    while (j < pairs.size() &&
           std::abs(pairs[j].value - pairs[j - 1].value) <= cluster_tol)
      ++j;
    const std::size_t size = j - i;
    if (size >= 2) {
      const int n = int(pairs[i].vector.size());
      std::vector<std::vector<double>> span;
      for (std::size_t t = i; t < j; ++t) span.push_back(pairs[t].vector);
      std::vector<std::vector<double>> fresh;
      auto try_probe = [&](const std::vector<double>& probe) {
        if (fresh.size() == size) return;
        std::vector<double> p(n, 0.0);
        for (const auto& b : span) axpy(dot(probe, b), b, p);
        for (const auto& f : fresh) axpy(-dot(p, f), f, p);
        for (const auto& f : fresh) axpy(-dot(p, f), f, p);
        double nn = norm2(p);
        if (nn > 1e-8) {
          scale(std::span<double>(p), 1.0 / nn);
          fresh.push_back(std::move(p));
        }
      };
      std::vector<double> ones(n, 1.0 / std::sqrt(double(n)));
      try_probe(ones);
      for (int axis = 0; axis < n && fresh.size() < size; ++axis) {
        std::vector<double> e(n, 0.0);
        e[axis] = 1.0;
        try_probe(e);
      }
      if (fresh.size() == size)
        for (std::size_t t = 0; t < size; ++t)
          pairs[i + t].vector = std::move(fresh[t]);
    }
    i = j;
  }
}

}  // namespace

std::vector<EigenPair> top_k_eigenpairs(const SymMatrix& S, int k, double tol,
                                        EigenInfo* info) {
  if (k < 1) throw ParamError("k must be positive");
  if (k > S.dim()) throw ParamError("k exceeds matrix dimension");
  LanczosResult r = lanczos_extremes(S, k, 0, tol);
  double norm_est = 1.0;
  for (const auto& p : r.top) norm_est = std::max(norm_est, std::abs(p.value));
  canonicalize_clusters(r.top, 1e-10 * norm_est);
  for (auto& p : r.top) sign_normalize_by_max(p.vector);
  if (info) *info = r.info;
  return r.top;
}

std::pair<double, double> extreme_eigenvalues(const SymMatrix& S, double tol) {
  LanczosResult r = lanczos_extremes(S, 1, 1, tol);
  return {r.bottom.front().value, r.top.front().value};
}

double spectral_norm(const SymMatrix& S, double tol) {
  auto [lo, hi] = extreme_eigenvalues(S, tol);
  return std::max(std::abs(lo), std::abs(hi));
}

std::vector<EigenPair> jacobi_eigenpairs(const SymMatrix& S, double tol) {
  const int n = S.dim();
  std::vector<double> a(std::size_t(n) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[std::size_t(i) * n + j] = S.at(i, j);
  std::vector<double> v(std::size_t(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[std::size_t(i) * n + i] = 1.0;

  auto off = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += 2.0 * a[std::size_t(i) * n + j] *
                                           a[std::size_t(i) * n + j];
    return std::sqrt(s);
  };

  double scale_ref = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      scale_ref = std::max(scale_ref, std::abs(a[std::size_t(i) * n + j]));
  if (scale_ref == 0.0) scale_ref = 1.0;

  for (int sweep = 0; sweep < 100; ++sweep) {
    if (off() <= tol * scale_ref * n) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = a[std::size_t(p) * n + q];
        if (std::abs(apq) <= 1e-300) continue;
        double app = a[std::size_t(p) * n + p];
        double aqq = a[std::size_t(q) * n + q];
        double theta = (aqq - app) / (2.0 * apq);
        double t = std::copysign(1.0, theta) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int i = 0; i < n; ++i) {
          double aip = a[std::size_t(i) * n + p];
          double aiq = a[std::size_t(i) * n + q];
          a[std::size_t(i) * n + p] = c * aip - s * aiq;
          a[std::size_t(i) * n + q] = s * aip + c * aiq;
        }
        for (int j = 0; j < n; ++j) {
          double apj = a[std::size_t(p) * n + j];
          double aqj = a[std::size_t(q) * n + j];
          a[std::size_t(p) * n + j] = c * apj - s * aqj;
          a[std::size_t(q) * n + j] = s * apj + c * aqj;
        }
        for (int i = 0; i < n; ++i) {
          double vip = v[std::size_t(i) * n + p];
          double viq = v[std::size_t(i) * n + q];
          v[std::size_t(i) * n + p] = c * vip - s * viq;
          v[std::size_t(i) * n + q] = s * vip + c * viq;
        }
      }
    }
  }

  std::vector<EigenPair> pairs(n);
  for (int k = 0; k < n; ++k) {
    pairs[k].value = a[std::size_t(k) * n + k];
    pairs[k].vector.resize(n);
    for (int i = 0; i < n; ++i) pairs[k].vector[i] = v[std::size_t(i) * n + k];
    sign_normalize_by_max(pairs[k].vector);
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const EigenPair& x, const EigenPair& y) {
              return x.value > y.value;
            });
  return pairs;
}

std::vector<double> project_onto(std::span<const double> v,
                                 const Subspace& W) {
  std::vector<double> out(v.size(), 0.0);
  for (const auto& b : W.basis) {
    if (b.size() != v.size())
      throw ParamError("projection dimension mismatch");
    axpy(dot(v, b), b, out);
  }
  return out;
}

std::vector<double> unit_perp_in_plane(std::span<const double> v1,
                                       const Subspace& W) {
  if (W.dim() != 2) throw ParamError("unit_perp_in_plane needs a 2D subspace");
  if (W.ambient_dim() != int(v1.size()))
    throw ParamError("ambient dimension mismatch");
  const double nv = norm2(v1);
  if (nv < 1e-8 * std::sqrt(double(v1.size())))
    throw DegenerateProjectionError(
        "reference vector too small to define an in-plane direction");
  std::vector<double> proj = project_onto(v1, W);
  std::vector<double> resid(v1.begin(), v1.end());
  axpy(-1.0, proj, resid);
  if (norm2(resid) > 1e-8 * nv)
    throw ContractError("reference vector does not lie in the subspace");

  const double c1 = dot(v1, W.basis[0]);
  const double c2 = dot(v1, W.basis[1]);
  std::vector<double> perp(v1.size(), 0.0);
  axpy(-c2, W.basis[0], perp);
  axpy(c1, W.basis[1], perp);
  scale(std::span<double>(perp), 1.0 / norm2(perp));
  sign_normalize_by_first(perp);
  return perp;
}

double sin_angle_vectors(std::span<const double> u, std::span<const double> v) {
  const double nu = norm2(u);
  const double nv = norm2(v);
  if (nu == 0.0 || nv == 0.0)
    throw ParamError("sin_angle_vectors requires nonzero vectors");
  // |v/|v| - cos * u/|u|| equals sqrt(1 - cos^2) but stays accurate for
  // nearly parallel vectors, where the naive formula bottoms out near
  // sqrt(machine epsilon).
  const double c = dot(u, v) / (nu * nv);
  std::vector<double> r(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) r[i] = v[i] / nv - c * u[i] / nu;
  return std::min(norm2(r), 1.0);
}

double sin_angle_subspaces(const Subspace& W1, const Subspace& W2) {
  if (W1.ambient_dim() != W2.ambient_dim())
    throw ParamError("subspace ambient dimensions differ");
  const int n = W1.ambient_dim();
  if (n == 0) return 0.0;

  // Orthonormal basis Q of span(W1 + W2); the projector difference vanishes
  // outside it, so its spectral norm equals that of the restricted r x r
  // matrix Q^T (P1 - P2) Q.
  std::vector<std::vector<double>> q;
  auto absorb = [&](const std::vector<double>& b) {
    std::vector<double> w(b);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& qi : q) axpy(-dot(w, qi), qi, w);
    double nn = norm2(w);
    if (nn > 1e-12) {
      scale(std::span<double>(w), 1.0 / nn);
      q.push_back(std::move(w));
    }
  };
  for (const auto& b : W1.basis) absorb(b);
  for (const auto& b : W2.basis) absorb(b);

  const int r = int(q.size());
  if (r == 0) return 0.0;
  SymMatrix R(r);
  auto add_projector = [&](const Subspace& W, double sign) {
    for (const auto& b : W.basis) {
      std::vector<double> g(r);
      for (int i = 0; i < r; ++i) g[i] = dot(q[i], b);
      for (int i = 0; i < r; ++i)
        for (int j = i; j < r; ++j) R.add(i, j, sign * g[i] * g[j]);
    }
  };
  add_projector(W1, 1.0);
  add_projector(W2, -1.0);

  auto pairs = jacobi_eigenpairs(R);
  double best = 0.0;
  for (const auto& p : pairs) best = std::max(best, std::abs(p.value));
  return std::min(best, 1.0);
}

}  // namespace specpart

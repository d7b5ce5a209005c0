#pragma once

#include <span>
#include <vector>

namespace specpart {

/// Dense symmetric real matrix, full row-major storage. set() keeps the two
/// mirrored entries in sync; callers never touch storage directly.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(int dim) : dim_(dim), a_(std::size_t(dim) * dim, 0.0) {}

  int dim() const { return dim_; }
  double at(int i, int j) const { return a_[std::size_t(i) * dim_ + j]; }
  void set(int i, int j, double v) {
    a_[std::size_t(i) * dim_ + j] = v;
    a_[std::size_t(j) * dim_ + i] = v;
  }
  void add(int i, int j, double v) { set(i, j, at(i, j) + v); }

  /// y = S x
  void matvec(std::span<const double> x, std::span<double> y) const;
  std::vector<double> matvec(std::span<const double> x) const;

  /// max_i sum_j |S_ij| — a Gershgorin bound on the spectral radius.
  double max_abs_row_sum() const;

  /// Row sum (weighted degree for adjacency-like matrices).
  double row_sum(int i) const;

  void zero_row_col(int i);

 private:
  int dim_ = 0;
  std::vector<double> a_;
};

struct EigenPair {
  double value = 0.0;
  std::vector<double> vector;
};

/// A list of mutually orthonormal basis vectors.
struct Subspace {
  std::vector<std::vector<double>> basis;

  int ambient_dim() const { return basis.empty() ? 0 : int(basis[0].size()); }
  int dim() const { return int(basis.size()); }
};

/// Diagnostics from an eigensolver call.
struct EigenInfo {
  int iterations = 0;
  double max_residual = 0.0;
  /// Ritz estimate of the (k+1)-th algebraic eigenvalue, when available
  /// (NaN otherwise). Used to flag near-degenerate gaps downstream.
  double next_value = 0.0;
  bool has_next_value = false;
};

/// The k algebraically largest eigenpairs, values descending, eigenvectors
/// orthonormal with residual |S v - lambda v| <= tol * max(1, |S|).
///
/// Lanczos with full reorthogonalization on the shifted matrix S + cI,
/// c = max absolute row sum, so the algebraically largest eigenvalues are
/// also magnitude-extremal for the iteration. Deterministic start vector.
/// Within a numerically degenerate Ritz cluster the returned basis is
/// canonicalized (aligned against the all-ones vector, then coordinate
/// axes) so repeated runs and tied spectra give reproducible output.
/// Throws NumericalError (with the achieved residual) past the iteration cap.
std::vector<EigenPair> top_k_eigenpairs(const SymMatrix& S, int k,
                                        double tol = 1e-8,
                                        EigenInfo* info = nullptr);

/// Smallest and largest algebraic eigenvalues (same Lanczos machinery).
std::pair<double, double> extreme_eigenvalues(const SymMatrix& S,
                                              double tol = 1e-8);

/// max |eigenvalue|.
double spectral_norm(const SymMatrix& S, double tol = 1e-8);

/// Full eigendecomposition by cyclic Jacobi, values descending. Intended for
/// small matrices (test oracle, subspace-angle work); cost is O(dim^3) per
/// sweep.
std::vector<EigenPair> jacobi_eigenpairs(const SymMatrix& S,
                                         double tol = 1e-13);

/// Sum over basis vectors b of (v . b) b. Idempotent.
std::vector<double> project_onto(std::span<const double> v, const Subspace& W);

/// Unit vector inside a 2-dimensional subspace orthogonal to v1, sign fixed
/// so the first nonzero coordinate is positive. v1 must lie in W and have
/// norm above 1e-8 * sqrt(dim), else DegenerateProjectionError.
std::vector<double> unit_perp_in_plane(std::span<const double> v1,
                                       const Subspace& W);

/// sqrt(1 - (u.v)^2 / (|u|^2 |v|^2)), in [0, 1]. Sign-invariant.
double sin_angle_vectors(std::span<const double> u, std::span<const double> v);

/// Spectral norm of the difference of the two orthogonal projectors.
double sin_angle_subspaces(const Subspace& W1, const Subspace& W2);

// Small vector helpers shared across modules.
double dot(std::span<const double> x, std::span<const double> y);
double norm2(std::span<const double> x);
void scale(std::span<double> x, double s);
/// Flips the sign so the coordinate of largest magnitude is positive.
void sign_normalize_by_max(std::span<double> x);
/// Flips the sign so the first nonzero coordinate is positive.
void sign_normalize_by_first(std::span<double> x);

}  // namespace specpart

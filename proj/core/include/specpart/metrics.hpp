#pragma once

#include <span>
#include <vector>

#include "specpart/linalg.hpp"
#include "specpart/sbm.hpp"

namespace specpart {

struct AccuracyReport {
  double gamma = 0.0;
  int matching = 0;  // 0: side1<->community1, 1: side1<->community2
  double sin_theta_vec = 0.0;
  double sin_theta_subspace = 0.0;
};

/// Smallest gamma for which the partition is gamma-correct against the
/// canonical truth (first n vertices are community 1): the minimum over the
/// two side<->community matchings of the larger per-community deficit
/// 1 - |V_i intersect V_i'| / n. Throws ParamError if the two sets do not
/// partition {0..2n-1}.
double gamma_of(std::span<const int> side1, std::span<const int> side2, int n);

/// Matching index achieving gamma_of (0 or 1).
int gamma_matching(std::span<const int> side1, std::span<const int> side2,
                   int n);

/// Max-norm distance between the unit second eigenvector of A and the
/// unit-normalized vector A u2, with signs aligned first. Both vectors are
/// normalized so the metric measures direction error only.
double surrogate_error(const PlantedGraph& graph);

/// Same metric from an already-computed second eigenvector of A.
double surrogate_error_from(const SymMatrix& A, int n,
                            std::span<const double> w2);

/// Spectral norm of A - E[A].
double noise_norm(const PlantedGraph& graph);

}  // namespace specpart

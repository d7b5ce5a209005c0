#pragma once

#include <cstdint>
#include <vector>

#include "specpart/linalg.hpp"
#include "specpart/sbm.hpp"

namespace specpart {

struct SpectralDiagnostics {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  std::vector<double> v1;  // projection of the all-ones vector onto W
  std::vector<double> v2;  // unit vector in W orthogonal to v1
  std::vector<int> trimmed_vertices;
  /// True when the gap between the second and third eigenvalues is below
  /// 1e-10: the two-dimensional eigenspace is not well separated and the
  /// returned pair is one valid choice among many.
  bool degenerate_gap = false;
};

struct PartitionResult {
  std::vector<int> side1;  // exactly n vertices, ascending
  std::vector<int> side2;
  SpectralDiagnostics diagnostics;
};

struct CorrectedPartition {
  std::vector<int> side1;  // sizes may differ from n after moves
  std::vector<int> side2;
  std::vector<int> bad1;  // moved from side1 to side2
  std::vector<int> bad2;  // moved from side2 to side1
};

/// Partition from the top-2 eigenspace of A itself: W = top-2 eigenspace,
/// v1 = projection of the all-ones vector onto W, v2 = unit vector in W
/// orthogonal to v1, vertices sorted by v2 value (descending, ties by index
/// ascending), side1 = top n. The d argument is accepted for interface
/// parity with the trimming variant and is unused. Weighted matrices are
/// accepted, which makes exact tests on the expected adjacency possible.
PartitionResult spectral_partition_simplified(const SymMatrix& A, double d);

/// Same pipeline, but rows/columns of vertices with degree (row sum) above
/// 20*d are zeroed first. Trimmed vertices stay in the final ranking with
/// whatever v2 entries the eigenvectors assign them.
PartitionResult spectral_partition_original(const SymMatrix& A, double d);

/// Swaps, in one simultaneous pass, every vertex whose blue-neighbor count
/// in the opposite side is at least d/4.
CorrectedPartition correction(const PartitionResult& p,
                              const BoolSymMatrix& blue, double d);

/// Two-stage pipeline: color edges, run the trimming spectral partition on
/// the red graph with d = (a+b)/2, then the correction step on the blue
/// graph with d = a+b.
CorrectedPartition full_partition(const PlantedGraph& graph,
                                  std::uint64_t seed);

/// Diagnostics of the last spectral stage run inside full_partition.
struct FullPartitionTrace {
  PartitionResult spectral;
  CorrectedPartition corrected;
};
FullPartitionTrace full_partition_trace(const PlantedGraph& graph,
                                        std::uint64_t seed);

}  // namespace specpart

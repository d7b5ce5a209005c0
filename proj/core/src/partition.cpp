#include "specpart/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "specpart/errors.hpp"

namespace specpart {

namespace {

constexpr double kEigTol = 1e-10;

PartitionResult partition_from_matrix(const SymMatrix& A,
                                      std::vector<int> trimmed) {
  const int n2 = A.dim();
  if (n2 < 2 || n2 % 2 != 0)
    throw ParamError("partition input must have even dimension >= 2");
  const int n = n2 / 2;

  EigenInfo info;
  auto pairs = top_k_eigenpairs(A, 2, kEigTol, &info);

  Subspace w;
  w.basis = {pairs[0].vector, pairs[1].vector};

  std::vector<double> ones(n2, 1.0);
  std::vector<double> v1 = project_onto(ones, w);
  std::vector<double> v2 = unit_perp_in_plane(v1, w);

  std::vector<int> order(n2);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if (v2[x] != v2[y]) return v2[x] > v2[y];
    return x < y;
  });

  PartitionResult result;
  result.side1.assign(order.begin(), order.begin() + n);
  result.side2.assign(order.begin() + n, order.end());
  std::sort(result.side1.begin(), result.side1.end());
  std::sort(result.side2.begin(), result.side2.end());

  result.diagnostics.lambda1 = pairs[0].value;
  result.diagnostics.lambda2 = pairs[1].value;
  result.diagnostics.v1 = std::move(v1);
  result.diagnostics.v2 = std::move(v2);
  result.diagnostics.trimmed_vertices = std::move(trimmed);
  result.diagnostics.degenerate_gap =
      info.has_next_value &&
      std::abs(pairs[1].value - info.next_value) < 1e-10;
  return result;
}

}  // namespace

PartitionResult spectral_partition_simplified(const SymMatrix& A, double d) {
  if (!(d > 0.0)) throw ParamError("degree scale d must be positive");
  return partition_from_matrix(A, {});
}

PartitionResult spectral_partition_original(const SymMatrix& A, double d) {
  if (!(d > 0.0)) throw ParamError("degree scale d must be positive");
  const int n2 = A.dim();
  std::vector<int> trimmed;
  for (int v = 0; v < n2; ++v)
    if (A.row_sum(v) > 20.0 * d) trimmed.push_back(v);
  if (trimmed.empty()) return partition_from_matrix(A, {});

  SymMatrix pruned = A;
  for (int v : trimmed) pruned.zero_row_col(v);
  return partition_from_matrix(pruned, std::move(trimmed));
}

CorrectedPartition correction(const PartitionResult& p,
                              const BoolSymMatrix& blue, double d) {
  const int n2 = blue.dim();
  std::vector<char> in_side2(n2, 0);
  for (int v : p.side2) in_side2[v] = 1;

  auto cross_count = [&](int u, bool toward_side2) {
    int c = 0;
    for (int j = 0; j < n2; ++j)
      if (blue.at(u, j) && (in_side2[j] == (toward_side2 ? 1 : 0))) ++c;
    return c;
  };

  const double threshold = d / 4.0;
  CorrectedPartition out;
  for (int u : p.side1) {
    if (double(cross_count(u, true)) >= threshold)
      out.bad1.push_back(u);
    else
      out.side1.push_back(u);
  }
  for (int u : p.side2) {
    if (double(cross_count(u, false)) >= threshold)
      out.bad2.push_back(u);
    else
      out.side2.push_back(u);
  }
  out.side1.insert(out.side1.end(), out.bad2.begin(), out.bad2.end());
  out.side2.insert(out.side2.end(), out.bad1.begin(), out.bad1.end());
  std::sort(out.side1.begin(), out.side1.end());
  std::sort(out.side2.begin(), out.side2.end());
  return out;
}

FullPartitionTrace full_partition_trace(const PlantedGraph& graph,
                                        std::uint64_t seed) {
  graph.params.validate();
  EdgeColoring colors = color_edges(graph, seed);
  const double d = graph.params.degree_scale();
  FullPartitionTrace trace;
  trace.spectral =
      spectral_partition_original(to_dense(colors.red), d / 2.0);
  trace.corrected = correction(trace.spectral, colors.blue, d);
  return trace;
}

CorrectedPartition full_partition(const PlantedGraph& graph,
                                  std::uint64_t seed) {
  return full_partition_trace(graph, seed).corrected;
}

}  // namespace specpart

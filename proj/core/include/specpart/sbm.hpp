#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "specpart/linalg.hpp"

namespace specpart {

/// Two-block planted-partition model: 2n vertices, within-block edge
/// probability a/n, across-block probability b/n.
struct SbmParams {
  int n = 0;
  double a = 0.0;
  double b = 0.0;

  double p_within() const { return a / n; }
  double p_across() const { return b / n; }
  double degree_scale() const { return a + b; }

  /// Throws ParamError unless 0 < b < a < n.
  void validate() const;
};

/// Dense symmetric boolean adjacency with zero diagonal.
class BoolSymMatrix {
 public:
  BoolSymMatrix() = default;
  explicit BoolSymMatrix(int dim) : dim_(dim), bits_(std::size_t(dim) * dim, 0) {}

  int dim() const { return dim_; }
  bool at(int i, int j) const { return bits_[std::size_t(i) * dim_ + j] != 0; }
  void set(int i, int j, bool value) {
    bits_[std::size_t(i) * dim_ + j] = value ? 1 : 0;
    bits_[std::size_t(j) * dim_ + i] = value ? 1 : 0;
  }

  int row_count(int i) const;
  std::size_t edge_count() const;

  bool operator==(const BoolSymMatrix& other) const = default;

 private:
  int dim_ = 0;
  std::vector<std::uint8_t> bits_;
};

struct PlantedGraph {
  SbmParams params;
  BoolSymMatrix adjacency;
  std::vector<int> labels;  // canonical: first n vertices are community 1
  std::uint64_t seed = 0;

  int num_vertices() const { return 2 * params.n; }
};

/// Edge-disjoint red/blue split of a graph's edge set.
struct EdgeColoring {
  BoolSymMatrix red;
  BoolSymMatrix blue;
};

/// Expected adjacency: a/n on same-community entries (diagonal included, so
/// the matrix is exactly rank two with eigenvalues a+b and a-b), b/n across.
SymMatrix expected_adjacency(const SbmParams& params);

/// Samples each unordered pair {i,j}, i != j, independently. Deterministic
/// for a given (params, seed).
PlantedGraph sample_graph(const SbmParams& params, std::uint64_t seed);

/// Colors each edge red with probability 1/2, else blue.
EdgeColoring color_edges(const PlantedGraph& graph, std::uint64_t seed);

/// Number of neighbors of v. Throws ParamError on an out-of-range index.
int degree(const PlantedGraph& graph, int v);

/// Dense real copy of a boolean adjacency (0/1 entries).
SymMatrix to_dense(const BoolSymMatrix& adj);

/// Canonical truth eigenvectors of the expected adjacency: u1 is constant
/// 1/sqrt(2n); u2 is +1/sqrt(2n) on community 1 and -1/sqrt(2n) on
/// community 2.
std::vector<double> truth_vector_u1(int n);
std::vector<double> truth_vector_u2(int n);

/// Graph file format (CSV, UTF-8): header `# sbm n=<n> a=<a> b=<b>
/// seed=<seed>`, then one `u,v` line per edge with u < v, 0-based. Labels
/// are implicit from the canonical vertex ordering.
void write_graph_csv(const PlantedGraph& graph, const std::string& path);
PlantedGraph read_graph_csv(const std::string& path);

}  // namespace specpart

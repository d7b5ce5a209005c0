#include "specpart/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "specpart/errors.hpp"

namespace specpart {

namespace {

struct Overlaps {
  int o11 = 0, o12 = 0, o21 = 0, o22 = 0;
};

Overlaps overlaps_of(std::span<const int> side1, std::span<const int> side2,
                     int n) {
  const int n2 = 2 * n;
  std::vector<char> seen(n2, 0);
  Overlaps o;
  for (int v : side1) {
    if (v < 0 || v >= n2 || seen[v]) throw ParamError("sets do not partition the vertex set");
    seen[v] = 1;
    (v < n ? o.o11 : o.o12)++;
  }
  for (int v : side2) {
    if (v < 0 || v >= n2 || seen[v]) throw ParamError("sets do not partition the vertex set");
    seen[v] = 1;
    (v < n ? o.o21 : o.o22)++;
  }
  if (int(side1.size() + side2.size()) != n2)
    throw ParamError("sets do not partition the vertex set");
  return o;
}

std::pair<double, int> gamma_and_matching(std::span<const int> side1,
                                          std::span<const int> side2, int n) {
  Overlaps o = overlaps_of(side1, side2, n);
  const double direct = std::max(1.0 - double(o.o11) / n, 1.0 - double(o.o22) / n);
  const double swapped = std::max(1.0 - double(o.o21) / n, 1.0 - double(o.o12) / n);
  if (direct <= swapped) return {std::clamp(direct, 0.0, 1.0), 0};
  return {std::clamp(swapped, 0.0, 1.0), 1};
}

}  // namespace

double gamma_of(std::span<const int> side1, std::span<const int> side2,
                int n) {
  return gamma_and_matching(side1, side2, n).first;
}

int gamma_matching(std::span<const int> side1, std::span<const int> side2,
                   int n) {
  return gamma_and_matching(side1, side2, n).second;
}

double surrogate_error_from(const SymMatrix& A, int n,
                            std::span<const double> w2_in) {
  std::vector<double> w2(w2_in.begin(), w2_in.end());
  std::vector<double> u2 = truth_vector_u2(n);
  std::vector<double> s = A.matvec(u2);
  const double sn = norm2(s);
  if (sn == 0.0)
    throw NumericalError("surrogate vector vanished (edgeless graph?)");
  scale(std::span<double>(s), 1.0 / sn);

  if (dot(w2, s) < 0.0) scale(std::span<double>(w2), -1.0);

  double err = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    err = std::max(err, std::abs(w2[i] - s[i]));
  return err;
}

double surrogate_error(const PlantedGraph& graph) {
  if (!(graph.params.a != graph.params.b))
    throw ParamError("surrogate is undefined when a equals b");
  const int n = graph.params.n;
  SymMatrix A = to_dense(graph.adjacency);
  auto pairs = top_k_eigenpairs(A, 2, 1e-10);
  return surrogate_error_from(A, n, pairs[1].vector);
}

double noise_norm(const PlantedGraph& graph) {
  const int n = graph.params.n;
  const int n2 = 2 * n;
  const double pw = graph.params.p_within();
  const double pa = graph.params.p_across();
  SymMatrix m(n2);
  for (int i = 0; i < n2; ++i) {
    const bool i1 = i < n;
    for (int j = i; j < n2; ++j) {
      const bool same = i1 == (j < n);
      const double expected = same ? pw : pa;
      const double observed =
          (i != j && graph.adjacency.at(i, j)) ? 1.0 : 0.0;
      m.set(i, j, observed - expected);
    }
  }
  return spectral_norm(m, 1e-8);
}

}  // namespace specpart

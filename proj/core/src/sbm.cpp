#include "specpart/sbm.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "specpart/errors.hpp"
#include "specpart/rng.hpp"

namespace specpart {

void SbmParams::validate() const {
  if (n <= 0) throw ParamError("block size n must be positive");
  if (!(b > 0.0)) throw ParamError("affinity b must be positive");
  if (!(b < a)) throw ParamError("affinities must satisfy b < a");
  if (!(a < n)) throw ParamError("affinity a must be below n");
}

int BoolSymMatrix::row_count(int i) const {
  const std::uint8_t* row = bits_.data() + std::size_t(i) * dim_;
  int c = 0;
  for (int j = 0; j < dim_; ++j) c += row[j];
  return c;
}

std::size_t BoolSymMatrix::edge_count() const {
  std::size_t total = 0;
  for (int i = 0; i < dim_; ++i) total += row_count(i);
  return total / 2;
}

SymMatrix expected_adjacency(const SbmParams& params) {
  params.validate();
  const int n = params.n;
  const double pw = params.p_within();
  const double pa = params.p_across();
  SymMatrix m(2 * n);
  for (int i = 0; i < 2 * n; ++i) {
    const bool i1 = i < n;
    for (int j = i; j < 2 * n; ++j) {
      const bool same = i1 == (j < n);
      m.set(i, j, same ? pw : pa);
    }
  }
  return m;
}

PlantedGraph sample_graph(const SbmParams& params, std::uint64_t seed) {
  params.validate();
  const int n2 = 2 * params.n;
  PlantedGraph g;
  g.params = params;
  g.seed = seed;
  g.adjacency = BoolSymMatrix(n2);
  g.labels.resize(n2);
  for (int v = 0; v < n2; ++v) g.labels[v] = v < params.n ? 1 : 2;

  const double pw = params.p_within();
  const double pa = params.p_across();
  Xoshiro256ss rng(seed);
  for (int i = 0; i < n2; ++i) {
    const bool i1 = i < params.n;
    for (int j = i + 1; j < n2; ++j) {
      const double p = (i1 == (j < params.n)) ? pw : pa;
      if (rng.bernoulli(p)) g.adjacency.set(i, j, true);
    }
  }
  return g;
}

EdgeColoring color_edges(const PlantedGraph& graph, std::uint64_t seed) {
  const int n2 = graph.num_vertices();
  EdgeColoring c{BoolSymMatrix(n2), BoolSymMatrix(n2)};
  Xoshiro256ss rng(derive_seed(seed, 0x636f6c6fULL));
  for (int i = 0; i < n2; ++i) {
    for (int j = i + 1; j < n2; ++j) {
      if (!graph.adjacency.at(i, j)) continue;
      if (rng.bernoulli(0.5))
        c.red.set(i, j, true);
      else
        c.blue.set(i, j, true);
    }
  }
  return c;
}

int degree(const PlantedGraph& graph, int v) {
  if (v < 0 || v >= graph.num_vertices())
    throw ParamError("vertex index out of range");
  return graph.adjacency.row_count(v);
}

SymMatrix to_dense(const BoolSymMatrix& adj) {
  SymMatrix m(adj.dim());
  for (int i = 0; i < adj.dim(); ++i)
    for (int j = i + 1; j < adj.dim(); ++j)
      if (adj.at(i, j)) m.set(i, j, 1.0);
  return m;
}

std::vector<double> truth_vector_u1(int n) {
  return std::vector<double>(2 * n, 1.0 / std::sqrt(2.0 * n));
}

std::vector<double> truth_vector_u2(int n) {
  std::vector<double> u(2 * n);
  const double v = 1.0 / std::sqrt(2.0 * n);
  for (int i = 0; i < n; ++i) u[i] = v;
  for (int i = n; i < 2 * n; ++i) u[i] = -v;
  return u;
}

namespace {

std::string format_real(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, end);
}

}  // namespace

void write_graph_csv(const PlantedGraph& graph, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParamError("cannot open graph file for writing: " + path);
  out << "# sbm n=" << graph.params.n << " a=" << format_real(graph.params.a)
      << " b=" << format_real(graph.params.b) << " seed=" << graph.seed
      << "\n";
  const int n2 = graph.num_vertices();
  for (int i = 0; i < n2; ++i)
    for (int j = i + 1; j < n2; ++j)
      if (graph.adjacency.at(i, j)) out << i << "," << j << "\n";
}

PlantedGraph read_graph_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParamError("cannot open graph file: " + path);
  std::string header;
  if (!std::getline(in, header) || header.rfind("# sbm ", 0) != 0)
    throw ParamError("graph file missing '# sbm' header: " + path);

  PlantedGraph g;
  {
    std::istringstream hs(header.substr(6));
    std::string token;
    bool have_n = false, have_a = false, have_b = false;
    while (hs >> token) {
      auto eq = token.find('=');
      if (eq == std::string::npos) continue;
      std::string key = token.substr(0, eq);
      std::string val = token.substr(eq + 1);
      if (key == "n") {
        g.params.n = std::stoi(val);
        have_n = true;
      } else if (key == "a") {
        g.params.a = std::stod(val);
        have_a = true;
      } else if (key == "b") {
        g.params.b = std::stod(val);
        have_b = true;
      } else if (key == "seed") {
        g.seed = std::stoull(val);
      }
    }
    if (!have_n || !have_a || !have_b)
      throw ParamError("graph header must carry n, a and b: " + path);
  }
  g.params.validate();
  const int n2 = 2 * g.params.n;
  g.adjacency = BoolSymMatrix(n2);
  g.labels.resize(n2);
  for (int v = 0; v < n2; ++v) g.labels[v] = v < g.params.n ? 1 : 2;

  std::string line;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ParamError("bad edge line " + std::to_string(lineno) + " in " +
                       path);
    int u = std::stoi(line.substr(0, comma));
    int v = std::stoi(line.substr(comma + 1));
    if (u < 0 || v < 0 || u >= n2 || v >= n2 || u >= v)
      throw ParamError("edge out of range at line " + std::to_string(lineno) +
                       " in " + path);
    g.adjacency.set(u, v, true);
  }
  return g;
}

}  // namespace specpart

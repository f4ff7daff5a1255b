#include "entsim/graph.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>

namespace entsim::graph {

int CouplingGraph::edge_count() const {
  int count = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (weights(i, j) != 0.0) ++count;
  return count;
}

std::vector<std::pair<int, int>> CouplingGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (weights(i, j) != 0.0) out.emplace_back(i, j);
  return out;
}

void validate(const CouplingGraph& g) {
  if (g.n < 1 || g.weights.rows() != g.n || g.weights.cols() != g.n)
    throw std::invalid_argument("CouplingGraph: weight matrix shape mismatch");
  for (int i = 0; i < g.n; ++i) {
    if (g.weights(i, i) != 0.0)
      throw std::invalid_argument("CouplingGraph: nonzero diagonal");
    for (int j = 0; j < g.n; ++j) {
      if (!std::isfinite(g.weights(i, j)))
        throw std::invalid_argument("CouplingGraph: non-finite weight");
      if (g.weights(i, j) != g.weights(j, i))
        throw std::invalid_argument("CouplingGraph: asymmetric weights");
    }
  }
}

double uniform01(std::mt19937_64& rng) {
  // 53-bit mantissa draw; identical across platforms, unlike
  // std::uniform_real_distribution.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

namespace {

CouplingGraph empty_graph(int n) {
  CouplingGraph g;
  g.n = n;
  g.weights = Eigen::MatrixXd::Zero(n, n);
  return g;
}

void add_edge(CouplingGraph& g, int i, int j, double w) {
  g.weights(i, j) += w;
  g.weights(j, i) += w;
}

}  // namespace

CouplingGraph build_chain(int n, int n_c, Boundary boundary,
                          BondConvention convention) {
  if (n < 2) throw std::invalid_argument("build_chain: n must be >= 2");
  const int max_nc = boundary == Boundary::closed ? n / 2 : n - 1;
  if (n_c < 1 || n_c > max_nc)
    throw std::invalid_argument("build_chain: n_c out of range");

  const double w = convention == BondConvention::double_count ? 2.0 : 1.0;
  CouplingGraph g = empty_graph(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      int dist = j - i;
      if (boundary == Boundary::closed) dist = std::min(dist, n - dist);
      if (dist <= n_c) add_edge(g, i, j, w);
    }
  }
  return g;
}

CouplingGraph build_random(int n, double c_p, std::mt19937_64& rng) {
  if (n < 1) throw std::invalid_argument("build_random: n must be >= 1");
  if (!(c_p >= 0.0 && c_p <= 1.0))
    throw std::invalid_argument("build_random: c_p must lie in [0,1]");
  CouplingGraph g = empty_graph(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (uniform01(rng) < c_p) add_edge(g, i, j, 1.0);
  return g;
}

CouplingGraph build_bipartite_random(int n, double c_p, std::mt19937_64& rng) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("build_bipartite_random: n must be even");
  if (!(c_p >= 0.0 && c_p <= 1.0))
    throw std::invalid_argument("build_bipartite_random: c_p must lie in [0,1]");
  CouplingGraph g = empty_graph(n);
  // A = even indices, B = odd indices; only A-B pairs may couple.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if ((i + j) % 2 == 1 && uniform01(rng) < c_p) add_edge(g, i, j, 1.0);
  return g;
}

CouplingGraph build_bipartite_regular(int n, int n_c) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("build_bipartite_regular: n must be even");
  if (n_c < 1 || n_c > n / 4)
    throw std::invalid_argument(
        "build_bipartite_regular: n_c out of range (offsets collide mod n)");
  CouplingGraph g = empty_graph(n);
  // Site i couples to i +- (2j-1) mod n, j = 1..n_c: 2*n_c neighbors, all at
  // odd offsets, hence bipartite between even and odd indices. Enumerating
  // forward offsets from every site visits each unordered pair exactly once
  // (n_c <= n/4 keeps the offsets collision-free mod n).
  for (int i = 0; i < n; ++i) {
    for (int j = 1; j <= n_c; ++j) {
      const int other = (i + 2 * j - 1) % n;
      add_edge(g, i, other, 1.0);
    }
  }
  return g;
}

CouplingGraph assign_random_weights(CouplingGraph g, std::mt19937_64& rng,
                                    double lo, double hi) {
  if (!(lo <= hi))
    throw std::invalid_argument("assign_random_weights: need lo <= hi");
  validate(g);
  for (int i = 0; i < g.n; ++i) {
    for (int j = i + 1; j < g.n; ++j) {
      if (g.weights(i, j) != 0.0) {
        const double w = lo + (hi - lo) * uniform01(rng);
        g.weights(i, j) = w;
        g.weights(j, i) = w;
      }
    }
  }
  return g;
}

PartitionMask half_partition(int n, PartitionScheme scheme) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("half_partition: n must be even");
  PartitionMask mask;
  mask.signs = Eigen::VectorXi::Ones(n);
  for (int i = 0; i < n; ++i) {
    const bool in_b = scheme == PartitionScheme::contiguous ? i >= n / 2
                                                            : i % 2 == 1;
    if (in_b) mask.signs(i) = -1;
  }
  return mask;
}

bool is_connected(const CouplingGraph& g) {
  if (g.n == 0) return false;
  std::vector<bool> seen(g.n, false);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = true;
  int reached = 1;
  while (!frontier.empty()) {
    const int i = frontier.front();
    frontier.pop();
    for (int j = 0; j < g.n; ++j) {
      if (!seen[j] && g.weights(i, j) != 0.0) {
        seen[j] = true;
        ++reached;
        frontier.push(j);
      }
    }
  }
  return reached == g.n;
}

void write_edge_list(const CouplingGraph& g, std::ostream& out) {
  out << "n=" << g.n << "\n";
  char buf[80];
  for (int i = 0; i < g.n; ++i) {
    for (int j = i + 1; j < g.n; ++j) {
      if (g.weights(i, j) != 0.0) {
        std::snprintf(buf, sizeof(buf), "%d %d %.17g\n", i, j, g.weights(i, j));
        out << buf;
      }
    }
  }
}

CouplingGraph read_edge_list(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("n=", 0) != 0)
    throw std::invalid_argument("read_edge_list: missing n= header");
  const int n = std::stoi(line.substr(2));
  CouplingGraph g = empty_graph(n);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    int i, j;
    double w;
    if (!(row >> i >> j >> w))
      throw std::invalid_argument("read_edge_list: malformed edge line");
    if (i < 0 || j <= i || j >= n)
      throw std::invalid_argument("read_edge_list: edge indices out of range");
    g.weights(i, j) = w;
    g.weights(j, i) = w;
  }
  validate(g);
  return g;
}

}  // namespace entsim::graph

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <random>
#include <vector>

namespace entsim::graph {

enum class Boundary { open, closed };

/// How a chain bond shared by both enumeration directions is counted.
/// single: simple graph, unit weight per interacting pair.
/// double_count: every pair counted once per direction (weight 2), the
/// convention under which the fully connected closed form reads
/// (1/2)log2(1+2*n*alpha).
enum class BondConvention { single, double_count };

enum class PartitionScheme { contiguous, parity };

/// Symmetric weighted adjacency; the single source of topology for both
/// the oscillator and the spin model. Edge (i,j) present iff weights(i,j) != 0.
struct CouplingGraph {
  int n = 0;
  Eigen::MatrixXd weights;  // n x n, symmetric, zero diagonal

  int edge_count() const;
  std::vector<std::pair<int, int>> edges() const;  // i < j, nonzero weight
};

/// +1 / -1 membership vector assigning each site to group A or B.
struct PartitionMask {
  Eigen::VectorXi signs;

  int size() const { return static_cast<int>(signs.size()); }
};

// Throws std::invalid_argument if the invariants (symmetry, zero diagonal,
// finiteness) are violated.
void validate(const CouplingGraph& g);

double uniform01(std::mt19937_64& rng);

CouplingGraph build_chain(int n, int n_c, Boundary boundary,
                          BondConvention convention = BondConvention::single);
CouplingGraph build_random(int n, double c_p, std::mt19937_64& rng);
CouplingGraph build_bipartite_random(int n, double c_p, std::mt19937_64& rng);
CouplingGraph build_bipartite_regular(int n, int n_c);
CouplingGraph assign_random_weights(CouplingGraph g, std::mt19937_64& rng,
                                    double lo, double hi);
PartitionMask half_partition(int n, PartitionScheme scheme);

/// Diagnostic only: whether the graph is a single connected component.
bool is_connected(const CouplingGraph& g);

// Edge-list text format: header line "n=<n>", then one "i j w" triple per
// line, 0-based indices, i < j.
void write_edge_list(const CouplingGraph& g, std::ostream& out);
CouplingGraph read_edge_list(std::istream& in);

}  // namespace entsim::graph

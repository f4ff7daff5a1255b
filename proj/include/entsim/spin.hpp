#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <utility>
#include <vector>

#include "entsim/graph.hpp"

namespace entsim::spin {

/// Fixed-magnetization basis: all n-bit configurations with k set bits,
/// in ascending integer order. Bit i of a configuration is the spin at site i.
struct SectorBasis {
  int n = 0;
  int k = 0;
  std::vector<std::uint32_t> states;
};

SectorBasis sector_basis(int n, int k);

/// Ground-state amplitude vector over a bitstring basis. The XX Hamiltonian
/// is real symmetric in the computational basis, so real amplitudes suffice.
struct SpinState {
  int n = 0;
  int k = 0;  // magnetization sector tag
  std::vector<std::uint32_t> states;
  Eigen::VectorXd amplitudes;
  double energy = 0.0;
};

/// Ground state plus the second-lowest energy across all sectors, for
/// degenerate-instance flagging.
struct GroundSolve {
  SpinState state;
  double second_energy = 0.0;
  bool has_second = false;
};

/// XX matrix block in one magnetization sector: element 2*t_ij between
/// configurations that differ by swapping antiparallel spins at an edge
/// (i, j); zero diagonal. Each unordered edge contributes once.
Eigen::MatrixXd assemble_sector(const graph::CouplingGraph& g,
                                const SectorBasis& sector);

/// Diagonalizes every magnetization sector and returns the global
/// minimum-energy eigenvector. Ties across sectors resolve to the smallest k;
/// the eigenvector sign is fixed by making the first nonzero amplitude
/// positive. Large sectors use an internal Lanczos solver with full
/// reorthogonalization, smaller ones a dense solve.
GroundSolve solve_ground(const graph::CouplingGraph& g);
SpinState ground_state(const graph::CouplingGraph& g);

/// Number of eigenvalues across all sectors within tol of the global minimum,
/// minus one (0 = unique ground state). tol < 0 selects the default
/// 1e-9 * max(1, |E0|). Requires the full spectrum, n <= 14.
int degeneracy(const graph::CouplingGraph& g, double tol = -1.0);

/// Partial trace onto the given sites (their order fixes the qubit order of
/// the reduced matrix). Hermitian PSD with unit trace.
Eigen::MatrixXd reduced_density(const SpinState& state,
                                const std::vector<int>& subset);

/// Von Neumann entropy -sum p log2 p; tiny negative eigenvalues clamp to 0.
double entropy(const Eigen::MatrixXd& rho);

/// tau = 4 det(rho_i) for a pure global state; in [0, 1].
double one_vs_rest_tangle(const SpinState& state, int site);

/// Wootters tangle (squared concurrence) of a 4x4 two-qubit density matrix.
double two_qubit_tangle(const Eigen::MatrixXd& rho);

/// CKW budget at the given site: {one-vs-rest tangle, sum of pair tangles}.
std::pair<double, double> monogamy_budget_spin(const SpinState& state, int site);

}  // namespace entsim::spin

#pragma once

#include <Eigen/Dense>

#include "entsim/graph.hpp"

namespace entsim::gaussian {

/// Ground-state covariance blocks of the coupled-oscillator system:
/// gamma_x = V^{-1/2}, gamma_p = V^{+1/2}. For a pure global state
/// gamma_x * gamma_p = identity; two-mode reductions are generally mixed.
struct GaussianGround {
  Eigen::MatrixXd gamma_x;
  Eigen::MatrixXd gamma_p;

  int modes() const { return static_cast<int>(gamma_x.rows()); }
};

struct MonogamyBudget {
  double lhs = 0.0;       // tangle of mode 0 against all others
  double rhs = 0.0;       // sum of two-mode tangles (squared-negativity proxy)
  double residual = 0.0;  // lhs - rhs
};

/// V_ii = 1 + alpha * (weighted degree of i), V_ij = -alpha * w_ij.
/// Row sums are 1 for any graph; eigenvalue 1 with the uniform eigenvector is
/// always present and all other eigenvalues are >= 1.
Eigen::MatrixXd build_potential(const graph::CouplingGraph& g, double alpha);

GaussianGround ground_state(const Eigen::MatrixXd& v);

/// Zero-point energy (1/2) sum_i sqrt(lambda_i(V)).
double ground_energy(const Eigen::MatrixXd& v);

/// N_l = -sum_j log2 min(1, Lambda_j(gamma_x P gamma_p P)) with P = diag(mask).
/// Evaluated through the symmetric similarity
/// (P gamma_p P)^{1/2} gamma_x (P gamma_p P)^{1/2}, so the spectrum is real
/// by construction. Applies verbatim to mixed two-mode reductions.
double log_negativity(const GaussianGround& gs, const graph::PartitionMask& mask);

/// Negativity from logarithmic negativity: (2^{N_l} - 1) / 2.
double negativity_from_logneg(double log_neg);

/// Squared negativity across the given cut.
double gaussian_tangle(const GaussianGround& gs, const graph::PartitionMask& mask);

GaussianGround two_mode_reduction(const GaussianGround& gs, int i, int j);

/// lhs: mode 0 vs rest on the pure global state; rhs: sum over j of the
/// squared negativity of the (0, j) reduction, a lower bound on the
/// convex-roof two-mode tangle, so the monogamy inequality lhs >= rhs is
/// checked a fortiori.
MonogamyBudget monogamy_budget(const GaussianGround& gs);

/// Eigenvalues of the circulant bipartite potential:
/// lambda_k = 1 + 2*alpha*n_c - 2*alpha sum_{j=1}^{n_c} cos((2j-1) k 2pi/n).
Eigen::VectorXd circulant_spectrum(int n, int n_c, double alpha);

/// Closed-form A:B log-negativity of the regular bipartite graph:
/// (1/2) sum_{k=0}^{n/2-1} |log2(lambda_k / lambda_{n/2-k})|.
double logneg_bipartite_exact(int n, int n_c, double alpha);

/// Large-n Riemann limit (n / 4pi) * f(alpha, n_c).
double logneg_bipartite_asymptotic(int n, int n_c, double alpha,
                                   double tol = 1e-8);

}  // namespace entsim::gaussian

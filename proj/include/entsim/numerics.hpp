#pragma once

#include <Eigen/Dense>

namespace entsim::numerics {

/// Full spectrum of a real symmetric matrix: ascending eigenvalues and the
/// matching orthonormal eigenvector columns.
struct SymmetricSpectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

// Both reject non-symmetric (beyond 1e-12 relative) or non-finite input.
SymmetricSpectrum sym_eig(const Eigen::MatrixXd& m);
Eigen::VectorXd sym_eigvals(const Eigen::MatrixXd& m);

/// M^p for p in {+1/2, -1/2} via full eigendecomposition. Throws if the
/// smallest eigenvalue is <= 1e-12 (not SPD at working precision).
Eigen::MatrixXd spd_power(const Eigen::MatrixXd& m, double p);

/// f(alpha, n_c) = integral over [0, pi] of
///   |log2 g(x) - log2 g(pi - x)|,
/// g(x) = 1 + 2*alpha*n_c - 2*alpha * sum_{j=1}^{n_c} cos((2j-1)x).
/// The integrand has kinks where the log difference changes sign; those are
/// bracketed by bisection and the smooth pieces integrated adaptively.
double quad_abs_log(double alpha, int n_c, double tol = 1e-8);

}  // namespace entsim::numerics

#include "entsim/gaussian.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "entsim/numerics.hpp"

namespace entsim::gaussian {

using numerics::spd_power;
using numerics::sym_eig;
using numerics::sym_eigvals;

Eigen::MatrixXd build_potential(const graph::CouplingGraph& g, double alpha) {
  if (alpha < 0.0)
    throw std::invalid_argument("build_potential: alpha must be >= 0");
  graph::validate(g);
  Eigen::MatrixXd v = -alpha * g.weights;
  for (int i = 0; i < g.n; ++i) v(i, i) = 1.0 + alpha * g.weights.row(i).sum();
  return v;
}

GaussianGround ground_state(const Eigen::MatrixXd& v) {
  numerics::SymmetricSpectrum s = sym_eig(v);
  if (s.values(0) <= 1e-12)
    throw std::invalid_argument("ground_state: potential not positive definite");
  GaussianGround gs;
  Eigen::VectorXd sqrt_vals = s.values.array().sqrt();
  Eigen::VectorXd inv_sqrt_vals = sqrt_vals.cwiseInverse();
  gs.gamma_x = s.vectors * inv_sqrt_vals.asDiagonal() * s.vectors.transpose();
  gs.gamma_p = s.vectors * sqrt_vals.asDiagonal() * s.vectors.transpose();
  return gs;
}

double ground_energy(const Eigen::MatrixXd& v) {
  return 0.5 * sym_eigvals(v).array().sqrt().sum();
}

double log_negativity(const GaussianGround& gs,
                      const graph::PartitionMask& mask) {
  const int n = gs.modes();
  if (mask.size() != n)
    throw std::invalid_argument("log_negativity: mask length mismatch");
  int plus = 0, minus = 0;
  for (int i = 0; i < n; ++i) {
    if (mask.signs(i) == 1)
      ++plus;
    else if (mask.signs(i) == -1)
      ++minus;
    else
      throw std::invalid_argument("log_negativity: mask entries must be +-1");
  }
  if (plus == 0 || minus == 0)
    throw std::invalid_argument("log_negativity: mask must split the modes");

  // gamma_x P gamma_p P = gamma_x (P gamma_p P); similar to the symmetric
  // S gamma_x S with S = (P gamma_p P)^{1/2}, so Lambda is real positive.
  Eigen::VectorXd signs = mask.signs.cast<double>();
  Eigen::MatrixXd conjugated =
      signs.asDiagonal() * gs.gamma_p * signs.asDiagonal();
  Eigen::MatrixXd root = spd_power(conjugated, 0.5);
  Eigen::VectorXd lambda = sym_eigvals(root * gs.gamma_x * root);

  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    const double l = lambda(j);
    if (l <= 0.0)
      throw std::runtime_error("log_negativity: nonpositive symplectic value");
    if (l < 1.0 - 1e-12) total -= std::log2(l);
  }
  return total;
}

double negativity_from_logneg(double log_neg) {
  if (log_neg < 0.0)
    throw std::invalid_argument("negativity_from_logneg: negative input");
  return 0.5 * (std::exp2(log_neg) - 1.0);
}

double gaussian_tangle(const GaussianGround& gs,
                       const graph::PartitionMask& mask) {
  const double neg = negativity_from_logneg(log_negativity(gs, mask));
  return neg * neg;
}

GaussianGround two_mode_reduction(const GaussianGround& gs, int i, int j) {
  const int n = gs.modes();
  if (i == j || i < 0 || j < 0 || i >= n || j >= n)
    throw std::invalid_argument("two_mode_reduction: bad mode indices");
  GaussianGround red;
  red.gamma_x.resize(2, 2);
  red.gamma_p.resize(2, 2);
  const int idx[2] = {i, j};
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      red.gamma_x(a, b) = gs.gamma_x(idx[a], idx[b]);
      red.gamma_p(a, b) = gs.gamma_p(idx[a], idx[b]);
    }
  }
  return red;
}

MonogamyBudget monogamy_budget(const GaussianGround& gs) {
  const int n = gs.modes();
  if (n < 3) throw std::invalid_argument("monogamy_budget: need n >= 3 modes");
  graph::PartitionMask one_vs_rest;
  one_vs_rest.signs = -Eigen::VectorXi::Ones(n);
  one_vs_rest.signs(0) = 1;

  graph::PartitionMask pair_mask;
  pair_mask.signs.resize(2);
  pair_mask.signs << 1, -1;

  MonogamyBudget budget;
  budget.lhs = gaussian_tangle(gs, one_vs_rest);
  for (int j = 1; j < n; ++j)
    budget.rhs += gaussian_tangle(two_mode_reduction(gs, 0, j), pair_mask);
  budget.residual = budget.lhs - budget.rhs;
  return budget;
}

Eigen::VectorXd circulant_spectrum(int n, int n_c, double alpha) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("circulant_spectrum: n must be even");
  if (n_c < 1 || n_c > n / 4)
    throw std::invalid_argument("circulant_spectrum: n_c out of range");
  Eigen::VectorXd lambda(n);
  const double step = 2.0 * std::numbers::pi / n;
  for (int k = 0; k < n; ++k) {
    double cos_sum = 0.0;
    for (int j = 1; j <= n_c; ++j) cos_sum += std::cos((2 * j - 1) * k * step);
    lambda(k) = 1.0 + 2.0 * alpha * n_c - 2.0 * alpha * cos_sum;
  }
  return lambda;
}

double logneg_bipartite_exact(int n, int n_c, double alpha) {
  Eigen::VectorXd lambda = circulant_spectrum(n, n_c, alpha);
  double total = 0.0;
  for (int k = 0; k < n / 2; ++k)
    total += std::abs(std::log2(lambda(k) / lambda(n / 2 - k)));
  return 0.5 * total;
}

double logneg_bipartite_asymptotic(int n, int n_c, double alpha, double tol) {
  return n / (4.0 * std::numbers::pi) * numerics::quad_abs_log(alpha, n_c, tol);
}

}  // namespace entsim::gaussian

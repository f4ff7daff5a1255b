// Test-only oracles, independent of the library's solver paths.
#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "entsim/graph.hpp"
#include "entsim/spin.hpp"

namespace oracles {

// Full-space XX Hamiltonian sum_edges t_ij (sx sx + sy sy) built from explicit
// Kronecker products of Pauli matrices; 2^n x 2^n, real.
inline Eigen::MatrixXd full_xx_hamiltonian(const entsim::graph::CouplingGraph& g) {
  const int n = g.n;
  const Eigen::Index dim = Eigen::Index(1) << n;
  Eigen::Matrix2d sx, isy;  // isy = i * sigma_y, real
  sx << 0, 1, 1, 0;
  isy << 0, 1, -1, 0;

  auto site_op = [n, dim](const Eigen::Matrix2d& op, int site) {
    // bit s of the basis index is the spin at site s, so site s acts on the
    // 2^s block stride
    Eigen::MatrixXd out = Eigen::MatrixXd::Identity(1, 1);
    for (int s = 0; s < n; ++s) {
      const Eigen::MatrixXd& factor =
          s == site ? static_cast<const Eigen::MatrixXd&>(
                          Eigen::MatrixXd(op))
                    : Eigen::MatrixXd::Identity(2, 2);
      Eigen::MatrixXd next(out.rows() * 2, out.cols() * 2);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          next.block(a * out.rows(), b * out.cols(), out.rows(), out.cols()) =
              factor(a, b) * out;
      out.swap(next);
    }
    (void)dim;
    return out;
  };

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double t = g.weights(i, j);
      if (t == 0.0) continue;
      // sy sy = -(i sy)(i sy)
      h += t * (site_op(sx, i) * site_op(sx, j) -
                site_op(isy, i) * site_op(isy, j));
    }
  }
  return h;
}

// Total magnetization sum_i sigma_z^i in the same basis convention.
inline Eigen::MatrixXd total_sz(int n) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    int up = 0;
    for (int s = 0; s < n; ++s) up += (b >> s) & 1;
    m(b, b) = 2 * up - n;
  }
  return m;
}

inline entsim::spin::SpinState full_space_state(int n,
                                                const Eigen::VectorXd& amps,
                                                double energy = 0.0) {
  entsim::spin::SpinState state;
  state.n = n;
  state.k = -1;
  for (std::uint32_t b = 0; b < (1u << n); ++b) state.states.push_back(b);
  state.amplitudes = amps;
  state.energy = energy;
  return state;
}

inline entsim::spin::SpinState w_state() {
  Eigen::VectorXd amps(8);
  amps.setZero();
  const double a = 1.0 / std::sqrt(3.0);
  amps(1) = amps(2) = amps(4) = a;
  return full_space_state(3, amps);
}

inline entsim::spin::SpinState ghz_state() {
  Eigen::VectorXd amps(8);
  amps.setZero();
  amps(0) = amps(7) = 1.0 / std::sqrt(2.0);
  return full_space_state(3, amps);
}

}  // namespace oracles

#include "entsim/spin.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <unordered_map>

#include "entsim/numerics.hpp"

namespace entsim::spin {

namespace {

constexpr int kMaxSites = 16;
// Sectors at or below this dimension are solved densely; larger ones go
// through Lanczos.
constexpr int kDenseDim = 512;

int sector_index(const SectorBasis& sector, std::uint32_t config) {
  auto it = std::lower_bound(sector.states.begin(), sector.states.end(), config);
  return static_cast<int>(it - sector.states.begin());
}

}  // namespace

SectorBasis sector_basis(int n, int k) {
  if (n < 1 || n > kMaxSites)
    throw std::invalid_argument("sector_basis: n out of range");
  if (k < 0 || k > n) throw std::invalid_argument("sector_basis: k out of range");
  SectorBasis sector;
  sector.n = n;
  sector.k = k;
  for (std::uint32_t b = 0; b < (1u << n); ++b)
    if (std::popcount(b) == k) sector.states.push_back(b);
  return sector;
}

Eigen::MatrixXd assemble_sector(const graph::CouplingGraph& g,
                                const SectorBasis& sector) {
  if (g.n != sector.n)
    throw std::invalid_argument("assemble_sector: graph/sector size mismatch");
  const int dim = static_cast<int>(sector.states.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  const auto edge_list = g.edges();
  for (int row = 0; row < dim; ++row) {
    const std::uint32_t b = sector.states[row];
    for (const auto& [i, j] : edge_list) {
      const std::uint32_t mask = (1u << i) | (1u << j);
      const std::uint32_t bits = b & mask;
      if (bits == 0 || bits == mask) continue;  // parallel spins: no hop
      const int col = sector_index(sector, b ^ mask);
      h(row, col) = 2.0 * g.weights(i, j);
    }
  }
  return h;
}

namespace {

Eigen::SparseMatrix<double> assemble_sector_sparse(
    const graph::CouplingGraph& g, const SectorBasis& sector) {
  const int dim = static_cast<int>(sector.states.size());
  std::vector<Eigen::Triplet<double>> triplets;
  const auto edge_list = g.edges();
  for (int row = 0; row < dim; ++row) {
    const std::uint32_t b = sector.states[row];
    for (const auto& [i, j] : edge_list) {
      const std::uint32_t mask = (1u << i) | (1u << j);
      const std::uint32_t bits = b & mask;
      if (bits == 0 || bits == mask) continue;
      const int col = sector_index(sector, b ^ mask);
      triplets.emplace_back(row, col, 2.0 * g.weights(i, j));
    }
  }
  Eigen::SparseMatrix<double> h(dim, dim);
  h.setFromTriplets(triplets.begin(), triplets.end());
  return h;
}

struct SectorSolution {
  double e0 = 0.0;
  double e1 = std::numeric_limits<double>::infinity();
  bool has_e1 = false;
  Eigen::VectorXd ground;
};

/// Lanczos with full reorthogonalization for the lowest two eigenpairs.
SectorSolution lanczos_lowest(const Eigen::SparseMatrix<double>& h,
                              std::uint64_t seed) {
  const int dim = static_cast<int>(h.rows());
  const int max_iter = std::min(dim, 500);

  std::mt19937_64 rng(seed);
  Eigen::VectorXd v(dim);
  for (int i = 0; i < dim; ++i) v(i) = graph::uniform01(rng) - 0.5;
  v.normalize();

  Eigen::MatrixXd basis(dim, max_iter);
  Eigen::VectorXd diag(max_iter), subdiag(max_iter);
  basis.col(0) = v;

  SectorSolution sol;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small;
  int m = 0;
  double beta = 0.0;
  for (int j = 0; j < max_iter; ++j) {
    Eigen::VectorXd w = h * basis.col(j);
    if (j > 0) w -= beta * basis.col(j - 1);
    diag(j) = basis.col(j).dot(w);
    w -= diag(j) * basis.col(j);
    // two rounds of reorthogonalization against the whole basis
    for (int round = 0; round < 2; ++round)
      w -= basis.leftCols(j + 1) * (basis.leftCols(j + 1).transpose() * w);
    beta = w.norm();
    m = j + 1;

    const bool breakdown = beta < 1e-13;
    const bool check = breakdown || m == max_iter || (m >= 8 && m % 5 == 0);
    if (check) {
      small.computeFromTridiagonal(diag.head(m), subdiag.head(m - 1 > 0 ? m - 1 : 0));
      const double scale = std::max(1.0, std::abs(small.eigenvalues()(0)));
      const double res0 =
          m == dim ? 0.0
                   : std::abs(beta * small.eigenvectors()(m - 1, 0));
      const double res1 =
          m < 2 ? std::numeric_limits<double>::infinity()
                : (m == dim ? 0.0
                            : std::abs(beta * small.eigenvectors()(m - 1, 1)));
      const bool converged =
          res0 <= 1e-11 * scale && (m >= dim || (m >= 2 && res1 <= 1e-8 * scale));
      if (converged || m == max_iter || (breakdown && m == dim)) {
        sol.e0 = small.eigenvalues()(0);
        sol.ground = basis.leftCols(m) * small.eigenvectors().col(0);
        sol.ground.normalize();
        if (m >= 2) {
          sol.e1 = small.eigenvalues()(1);
          sol.has_e1 = true;
        }
        if (!converged && !breakdown)
          throw std::runtime_error("lanczos_lowest: no convergence");
        return sol;
      }
    }
    if (breakdown) {
      // invariant subspace found early: restart in its orthogonal complement
      for (int i = 0; i < dim; ++i) w(i) = graph::uniform01(rng) - 0.5;
      for (int round = 0; round < 2; ++round)
        w -= basis.leftCols(m) * (basis.leftCols(m).transpose() * w);
      beta = w.norm();
      if (beta < 1e-13) {
        small.computeFromTridiagonal(diag.head(m),
                                     subdiag.head(m - 1 > 0 ? m - 1 : 0));
        sol.e0 = small.eigenvalues()(0);
        sol.ground = basis.leftCols(m) * small.eigenvectors().col(0);
        sol.ground.normalize();
        if (m >= 2) {
          sol.e1 = small.eigenvalues()(1);
          sol.has_e1 = true;
        }
        return sol;
      }
      subdiag(j) = 0.0;
      if (j + 1 < max_iter) basis.col(j + 1) = w / beta;
      beta = 0.0;  // decouple the restarted block
      continue;
    }
    subdiag(j) = beta;
    if (j + 1 < max_iter) basis.col(j + 1) = w / beta;
  }
  throw std::runtime_error("lanczos_lowest: iteration budget exhausted");
}

SectorSolution solve_sector(const graph::CouplingGraph& g,
                            const SectorBasis& sector) {
  const int dim = static_cast<int>(sector.states.size());
  SectorSolution sol;
  if (dim == 1) {
    sol.e0 = 0.0;
    sol.ground = Eigen::VectorXd::Ones(1);
    return sol;
  }
  if (dim <= kDenseDim) {
    numerics::SymmetricSpectrum s =
        numerics::sym_eig(assemble_sector(g, sector));
    sol.e0 = s.values(0);
    sol.e1 = s.values(1);
    sol.has_e1 = true;
    sol.ground = s.vectors.col(0);
    return sol;
  }
  // deterministic start vector per (n, k)
  const std::uint64_t seed =
      0x9e3779b97f4a7c15ull * (static_cast<std::uint64_t>(sector.n) * 31 +
                               static_cast<std::uint64_t>(sector.k) + 1);
  return lanczos_lowest(assemble_sector_sparse(g, sector), seed);
}

void fix_sign(Eigen::VectorXd& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-12) {
      if (v(i) < 0.0) v = -v;
      return;
    }
  }
}

}  // namespace

GroundSolve solve_ground(const graph::CouplingGraph& g) {
  graph::validate(g);
  if (g.n < 1 || g.n > kMaxSites)
    throw std::invalid_argument("solve_ground: n out of range (1..16)");
  const int n = g.n;

  // Spin-flip symmetry: sector n-k has the same spectrum as k, so only
  // k <= n/2 is solved and mirrored energies are accounted for below.
  std::vector<SectorSolution> solved(n / 2 + 1);
  std::vector<SectorBasis> bases(n / 2 + 1);
  double e_min = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= n / 2; ++k) {
    bases[k] = sector_basis(n, k);
    solved[k] = solve_sector(g, bases[k]);
    e_min = std::min(e_min, solved[k].e0);
  }

  const double tie_tol = 1e-12 * std::max(1.0, std::abs(e_min));
  int winner = 0;
  while (solved[winner].e0 > e_min + tie_tol) ++winner;

  std::vector<double> energies;
  for (int k = 0; k <= n / 2; ++k) {
    const int copies = (k == n - k) ? 1 : 2;  // mirror sector duplicates
    for (int c = 0; c < copies; ++c) {
      energies.push_back(solved[k].e0);
      if (solved[k].has_e1) energies.push_back(solved[k].e1);
    }
  }
  std::sort(energies.begin(), energies.end());

  GroundSolve result;
  result.state.n = n;
  result.state.k = winner;
  result.state.states = std::move(bases[winner].states);
  result.state.amplitudes = std::move(solved[winner].ground);
  result.state.energy = solved[winner].e0;
  fix_sign(result.state.amplitudes);
  if (energies.size() >= 2) {
    result.second_energy = energies[1];
    result.has_second = true;
  }
  return result;
}

SpinState ground_state(const graph::CouplingGraph& g) {
  return solve_ground(g).state;
}

int degeneracy(const graph::CouplingGraph& g, double tol) {
  graph::validate(g);
  if (g.n < 1 || g.n > 14)
    throw std::invalid_argument("degeneracy: full spectrum requires n <= 14");
  const int n = g.n;
  std::vector<Eigen::VectorXd> spectra(n / 2 + 1);
  double e_min = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= n / 2; ++k) {
    const SectorBasis sector = sector_basis(n, k);
    if (sector.states.size() == 1) {
      spectra[k] = Eigen::VectorXd::Zero(1);
    } else {
      spectra[k] = numerics::sym_eigvals(assemble_sector(g, sector));
    }
    e_min = std::min(e_min, spectra[k](0));
  }
  if (tol < 0.0) tol = 1e-9 * std::max(1.0, std::abs(e_min));
  long count = 0;
  for (int k = 0; k <= n / 2; ++k) {
    const int copies = (k == n - k) ? 1 : 2;
    for (Eigen::Index i = 0; i < spectra[k].size(); ++i)
      if (spectra[k](i) <= e_min + tol) count += copies;
  }
  return static_cast<int>(count - 1);
}

Eigen::MatrixXd reduced_density(const SpinState& state,
                                const std::vector<int>& subset) {
  const int n = state.n;
  if (subset.empty() || static_cast<int>(subset.size()) > n)
    throw std::invalid_argument("reduced_density: bad subset size");
  std::uint32_t subset_mask = 0;
  for (int s : subset) {
    if (s < 0 || s >= n)
      throw std::invalid_argument("reduced_density: site index out of range");
    if (subset_mask & (1u << s))
      throw std::invalid_argument("reduced_density: duplicate site");
    subset_mask |= 1u << s;
  }

  const int dim = 1 << subset.size();
  auto pack = [&subset](std::uint32_t b) {
    std::uint32_t idx = 0;
    for (std::size_t p = 0; p < subset.size(); ++p)
      idx |= ((b >> subset[p]) & 1u) << p;
    return idx;
  };

  // group amplitudes by the traced-out bit pattern
  std::unordered_map<std::uint32_t, std::vector<std::pair<std::uint32_t, double>>>
      by_env;
  for (std::size_t row = 0; row < state.states.size(); ++row) {
    const std::uint32_t b = state.states[row];
    by_env[b & ~subset_mask].emplace_back(pack(b), state.amplitudes(row));
  }

  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(dim, dim);
  for (const auto& [env, entries] : by_env)
    for (const auto& [a, amp_a] : entries)
      for (const auto& [b, amp_b] : entries) rho(a, b) += amp_a * amp_b;
  return rho;
}

double entropy(const Eigen::MatrixXd& rho) {
  const Eigen::VectorXd probs = numerics::sym_eigvals(rho);
  double s = 0.0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    const double p = probs(i);
    if (p > 1e-15) s -= p * std::log2(p);
  }
  return s;
}

double one_vs_rest_tangle(const SpinState& state, int site) {
  const Eigen::MatrixXd rho = reduced_density(state, {site});
  const double tangle = 4.0 * (rho(0, 0) * rho(1, 1) - rho(0, 1) * rho(1, 0));
  return std::clamp(tangle, 0.0, 1.0);
}

double two_qubit_tangle(const Eigen::MatrixXd& rho) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw std::invalid_argument("two_qubit_tangle: need a 4x4 density matrix");
  Eigen::Matrix4d flip = Eigen::Matrix4d::Zero();
  flip(0, 3) = -1.0;
  flip(1, 2) = 1.0;
  flip(2, 1) = 1.0;
  flip(3, 0) = -1.0;
  // real amplitudes: rho* = rho
  const Eigen::Matrix4d r = rho * flip * rho * flip;
  Eigen::EigenSolver<Eigen::Matrix4d> solver(r, false);
  Eigen::Vector4d mu;
  for (int i = 0; i < 4; ++i)
    mu(i) = std::sqrt(std::max(0.0, solver.eigenvalues()(i).real()));
  std::sort(mu.data(), mu.data() + 4, std::greater<>());
  const double c = std::max(0.0, mu(0) - mu(1) - mu(2) - mu(3));
  return c * c;
}

std::pair<double, double> monogamy_budget_spin(const SpinState& state,
                                               int site) {
  if (state.n < 3)
    throw std::invalid_argument("monogamy_budget_spin: need n >= 3");
  const double lhs = one_vs_rest_tangle(state, site);
  double rhs = 0.0;
  for (int j = 0; j < state.n; ++j)
    if (j != site) rhs += two_qubit_tangle(reduced_density(state, {site, j}));
  return {lhs, rhs};
}

}  // namespace entsim::spin

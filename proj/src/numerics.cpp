#include "entsim/numerics.hpp"

#include <lapacke.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace entsim::numerics {

namespace {

void check_symmetric(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || m.rows() < 1)
    throw std::invalid_argument("sym_eig: matrix must be square");
  if (!m.allFinite())
    throw std::invalid_argument("sym_eig: non-finite entries");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw std::invalid_argument("sym_eig: matrix not symmetric");
}

void run_syevd(char jobz, Eigen::MatrixXd& a, Eigen::VectorXd& w) {
  const auto n = static_cast<lapack_int>(a.rows());
  w.resize(n);
  const lapack_int info =
      LAPACKE_dsyevd(LAPACK_COL_MAJOR, jobz, 'L', n, a.data(), n, w.data());
  if (info != 0)
    throw std::runtime_error("sym_eig: LAPACK dsyevd failed to converge");
}

}  // namespace

SymmetricSpectrum sym_eig(const Eigen::MatrixXd& m) {
  check_symmetric(m);
  SymmetricSpectrum s;
  s.vectors = m;
  run_syevd('V', s.vectors, s.values);
  return s;
}

Eigen::VectorXd sym_eigvals(const Eigen::MatrixXd& m) {
  check_symmetric(m);
  Eigen::MatrixXd work = m;
  Eigen::VectorXd w;
  run_syevd('N', work, w);
  return w;
}

Eigen::MatrixXd spd_power(const Eigen::MatrixXd& m, double p) {
  if (p != 0.5 && p != -0.5)
    throw std::invalid_argument("spd_power: exponent must be +1/2 or -1/2");
  SymmetricSpectrum s = sym_eig(m);
  if (s.values(0) <= 1e-12)
    throw std::invalid_argument("spd_power: matrix not positive definite");
  Eigen::VectorXd powered = s.values.array().pow(p);
  return s.vectors * powered.asDiagonal() * s.vectors.transpose();
}

namespace {

constexpr int kMaxDepth = 48;

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double fa, double fm, double fb, double whole,
                        double tol, int depth) {
  if (depth > kMaxDepth)
    throw std::runtime_error("quad_abs_log: refinement depth exceeded");
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 0);
}

}  // namespace

double quad_abs_log(double alpha, int n_c, double tol) {
  if (!(alpha > 0.0)) {
    if (alpha == 0.0) return 0.0;
    throw std::invalid_argument("quad_abs_log: alpha must be >= 0");
  }
  if (n_c < 1) throw std::invalid_argument("quad_abs_log: n_c must be >= 1");
  if (!(tol > 0.0)) throw std::invalid_argument("quad_abs_log: tol must be > 0");

  const double pi = std::numbers::pi;
  auto g = [alpha, n_c](double x) {
    double cos_sum = 0.0;
    for (int j = 1; j <= n_c; ++j) cos_sum += std::cos((2 * j - 1) * x);
    return 1.0 + 2.0 * alpha * n_c - 2.0 * alpha * cos_sum;
  };
  // Antisymmetric about pi/2: h(pi - x) = -h(x).
  auto h = [&g, pi](double x) { return std::log2(g(x)) - std::log2(g(pi - x)); };

  // Bracket the sign changes of h on a grid fine enough for the n_c
  // oscillations, then pin each kink by bisection.
  const int grid = std::max(64, 32 * n_c);
  std::vector<double> cuts{0.0};
  double x_prev = 0.0, h_prev = h(0.0);
  for (int i = 1; i <= grid; ++i) {
    const double x = pi * i / grid;
    const double hx = h(x);
    if ((h_prev < 0.0) != (hx < 0.0)) {
      double lo = x_prev, hi = x, hlo = h_prev;
      for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double hm = h(mid);
        if ((hlo < 0.0) != (hm < 0.0))
          hi = mid;
        else
          lo = mid, hlo = hm;
      }
      cuts.push_back(0.5 * (lo + hi));
    }
    x_prev = x;
    h_prev = hx;
  }
  cuts.push_back(pi);

  auto abs_h = [&h](double x) { return std::abs(h(x)); };
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double a = cuts[i], b = cuts[i + 1];
    if (b - a < 1e-14) continue;
    total += integrate(abs_h, a, b, tol * (b - a) / pi);
  }
  return total;
}

}  // namespace entsim::numerics

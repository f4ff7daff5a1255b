#include "entsim/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>

#include "entsim/gaussian.hpp"
#include "entsim/numerics.hpp"
#include "entsim/spin.hpp"

namespace entsim::experiments {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t child_seed(std::uint64_t base, std::size_t value_index,
                         std::size_t replica) {
  return splitmix64(splitmix64(splitmix64(base) ^ value_index) ^ replica);
}

std::vector<double> sweep_grid(double lo, double hi, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("sweep_grid: step must be > 0");
  if (hi < lo) throw std::invalid_argument("sweep_grid: hi < lo");
  std::vector<double> values;
  for (int i = 0;; ++i) {
    const double v = lo + i * step;
    if (v > hi + 1e-9 * step) break;
    values.push_back(std::min(v, hi));
  }
  return values;
}

void validate(const ScenarioConfig& cfg) {
  if (cfg.seeds < 1)
    throw std::invalid_argument("scenario: seeds must be >= 1");
  if (cfg.sweep_values.empty())
    throw std::invalid_argument("scenario: empty sweep grid");
  if (cfg.f_curve) {
    if (cfg.sweep != SweepParam::n_c && cfg.sweep != SweepParam::alpha)
      throw std::invalid_argument("scenario: f-curve sweeps n_c or alpha");
    return;
  }
  if (cfg.sweep != SweepParam::n) {
    if (cfg.n < 2 || cfg.n % 2 != 0)
      throw std::invalid_argument(
          "scenario: n must be even for half/half partitions");
  } else {
    for (double v : cfg.sweep_values) {
      const int n = static_cast<int>(v);
      if (v != n || n < 2 || n % 2 != 0)
        throw std::invalid_argument("scenario: n sweep values must be even");
    }
  }
  if (cfg.model == Model::spin && cfg.n > 16)
    throw std::invalid_argument("scenario: spin model limited to n <= 16");
  if (cfg.sweep == SweepParam::c_p) {
    for (double v : cfg.sweep_values)
      if (!(v >= 0.0 && v <= 1.0))
        throw std::invalid_argument("scenario: c_p values must lie in [0,1]");
  }
  if (cfg.sweep == SweepParam::n_c) {
    for (double v : cfg.sweep_values)
      if (v != static_cast<int>(v) || v < 1)
        throw std::invalid_argument(
            "scenario: n_c values must be positive integers");
  }
  if (!(cfg.weight_lo <= cfg.weight_hi))
    throw std::invalid_argument("scenario: weight interval inverted");
  if (cfg.alpha < 0.0)
    throw std::invalid_argument("scenario: alpha must be >= 0");
}

namespace {

graph::CouplingGraph build_topology(const ScenarioConfig& cfg, int n, int n_c,
                                    double c_p, std::mt19937_64& rng) {
  switch (cfg.topology) {
    case Topology::chain:
      return graph::build_chain(n, n_c, cfg.boundary, cfg.convention);
    case Topology::complete:
      return graph::build_chain(n, n / 2, graph::Boundary::closed,
                                cfg.convention);
    case Topology::random:
      return graph::build_random(n, c_p, rng);
    case Topology::bipartite_random:
      return graph::build_bipartite_random(n, c_p, rng);
    case Topology::bipartite_regular:
      return graph::build_bipartite_regular(n, n_c);
  }
  throw std::logic_error("unreachable topology");
}

graph::PartitionScheme effective_partition(const ScenarioConfig& cfg) {
  return cfg.partition;
}

double harmonic_logneg(const ScenarioConfig& cfg, const graph::CouplingGraph& g,
                       double alpha, RunRecord& rec, bool fill_extras) {
  const Eigen::MatrixXd v = gaussian::build_potential(g, alpha);
  const gaussian::GaussianGround gs = gaussian::ground_state(v);
  const graph::PartitionMask mask =
      graph::half_partition(g.n, effective_partition(cfg));
  const double nl = gaussian::log_negativity(gs, mask);
  if (fill_extras) {
    rec.energy = gaussian::ground_energy(v);
    if (cfg.with_monogamy) {
      const gaussian::MonogamyBudget budget = gaussian::monogamy_budget(gs);
      rec.mono_lhs = budget.lhs;
      rec.mono_rhs = budget.rhs;
      rec.mono_residual = budget.residual;
      rec.has_monogamy = true;
    }
  }
  return nl;
}

void run_spin(const ScenarioConfig& cfg, int n, int n_c, double c_p,
              std::mt19937_64& rng, RunRecord& rec) {
  graph::CouplingGraph g = build_topology(cfg, n, n_c, c_p, rng);
  g = graph::assign_random_weights(g, rng, cfg.weight_lo, cfg.weight_hi);

  const spin::GroundSolve solve = spin::solve_ground(g);
  const graph::PartitionMask mask =
      graph::half_partition(n, effective_partition(cfg));
  std::vector<int> group_a;
  for (int i = 0; i < n; ++i)
    if (mask.signs(i) == 1) group_a.push_back(i);

  rec.entanglement = spin::entropy(spin::reduced_density(solve.state, group_a));
  rec.energy = solve.state.energy;
  const double tol = 1e-9 * std::max(1.0, std::abs(solve.state.energy));
  rec.degenerate =
      solve.has_second && solve.second_energy - solve.state.energy <= tol;
  if (cfg.with_degeneracy) {
    rec.degeneracy = spin::degeneracy(g);
    rec.has_degeneracy = true;
  }
  if (cfg.with_monogamy) {
    const auto [lhs, rhs] = spin::monogamy_budget_spin(solve.state, 0);
    rec.mono_lhs = lhs;
    rec.mono_rhs = rhs;
    rec.mono_residual = lhs - rhs;
    rec.has_monogamy = true;
  }
}

void run_harmonic(const ScenarioConfig& cfg, int n, int n_c, double c_p,
                  double alpha, std::mt19937_64& rng, RunRecord& rec) {
  if (cfg.sweep == SweepParam::n && cfg.series == ScalingSeries::optimal) {
    // optimally connected chain: maximize N_l over n_c
    double best = 0.0;
    for (int trial_nc = 1; trial_nc <= n / 2; ++trial_nc) {
      ScenarioConfig chain_cfg = cfg;
      chain_cfg.topology = Topology::chain;
      graph::CouplingGraph g =
          build_topology(chain_cfg, n, trial_nc, c_p, rng);
      best = std::max(best, harmonic_logneg(cfg, g, alpha, rec, false));
    }
    rec.entanglement = best;
    rec.has_monogamy = false;
    return;
  }
  graph::CouplingGraph g = build_topology(cfg, n, n_c, c_p, rng);
  rec.entanglement = harmonic_logneg(cfg, g, alpha, rec, true);
}

RunRecord compute_record(const ScenarioConfig& cfg, double value,
                         std::uint64_t seed) {
  RunRecord rec;
  rec.sweep_value = value;
  rec.seed = seed;

  const double alpha = cfg.sweep == SweepParam::alpha ? value : cfg.alpha;
  const int n = cfg.sweep == SweepParam::n ? static_cast<int>(value) : cfg.n;
  const int n_c =
      cfg.sweep == SweepParam::n_c ? static_cast<int>(value) : cfg.fixed_n_c;
  const double c_p = cfg.sweep == SweepParam::c_p ? value : cfg.fixed_c_p;

  try {
    if (cfg.f_curve) {
      rec.entanglement = numerics::quad_abs_log(alpha, n_c);
      return rec;
    }
    std::mt19937_64 rng(seed);
    if (cfg.model == Model::spin)
      run_spin(cfg, n, n_c, c_p, rng, rec);
    else
      run_harmonic(cfg, n, n_c, c_p, alpha, rng, rec);
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  return rec;
}

}  // namespace

std::vector<RunRecord> run_scenario(const ScenarioConfig& cfg) {
  validate(cfg);
  std::vector<RunRecord> records;
  records.reserve(cfg.sweep_values.size() * cfg.seeds);
  for (std::size_t vi = 0; vi < cfg.sweep_values.size(); ++vi)
    for (int r = 0; r < cfg.seeds; ++r)
      records.push_back(compute_record(cfg, cfg.sweep_values[vi],
                                       child_seed(cfg.base_seed, vi, r)));
  return records;
}

std::vector<Aggregate> aggregate(const std::vector<RunRecord>& records) {
  std::vector<Aggregate> out;
  std::vector<double> order;  // sweep values in first-appearance order
  for (const RunRecord& rec : records) {
    if (std::find(order.begin(), order.end(), rec.sweep_value) == order.end())
      order.push_back(rec.sweep_value);
  }
  for (double value : order) {
    Aggregate agg;
    agg.sweep_value = value;
    double sum = 0.0, sum_sq = 0.0, filtered_sum = 0.0;
    int filtered_count = 0;
    int mono_count = 0, degen_count = 0;
    agg.max = -std::numeric_limits<double>::infinity();
    for (const RunRecord& rec : records) {
      if (rec.sweep_value != value || !rec.error.empty()) continue;
      ++agg.n_seeds;
      sum += rec.entanglement;
      sum_sq += rec.entanglement * rec.entanglement;
      agg.max = std::max(agg.max, rec.entanglement);
      agg.energy_mean += rec.energy;
      if (!rec.degenerate) {
        filtered_sum += rec.entanglement;
        ++filtered_count;
      }
      if (rec.has_degeneracy) {
        agg.degeneracy_mean += rec.degeneracy;
        ++degen_count;
      }
      if (rec.has_monogamy) {
        agg.mono_lhs_mean += rec.mono_lhs;
        agg.mono_rhs_mean += rec.mono_rhs;
        ++mono_count;
      }
    }
    if (agg.n_seeds == 0) continue;
    agg.mean = sum / agg.n_seeds;
    const double var = std::max(0.0, sum_sq / agg.n_seeds - agg.mean * agg.mean);
    agg.stddev = std::sqrt(var);
    agg.energy_mean /= agg.n_seeds;
    if (filtered_count > 0) agg.filtered_mean = filtered_sum / filtered_count;
    if (degen_count > 0) agg.degeneracy_mean /= degen_count;
    if (mono_count > 0) {
      agg.mono_lhs_mean /= mono_count;
      agg.mono_rhs_mean /= mono_count;
    }
    out.push_back(agg);
  }
  return out;
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

std::string csv_string(const std::vector<Aggregate>& aggregates,
                       bool normalize) {
  std::string out =
      "sweep_value,mean,max,stddev,n_seeds,filtered_mean,energy_mean,"
      "degeneracy_mean,monogamy_lhs_mean,monogamy_rhs_mean";
  if (normalize) out += ",normalized_mean";
  out += "\n";
  double peak = 0.0;
  for (const Aggregate& agg : aggregates)
    peak = std::max(peak, std::abs(agg.mean));
  for (const Aggregate& agg : aggregates) {
    out += fmt(agg.sweep_value) + "," + fmt(agg.mean) + "," + fmt(agg.max) +
           "," + fmt(agg.stddev) + "," + std::to_string(agg.n_seeds) + "," +
           (agg.filtered_mean ? fmt(*agg.filtered_mean) : std::string("na")) +
           "," + fmt(agg.energy_mean) + "," + fmt(agg.degeneracy_mean) + "," +
           fmt(agg.mono_lhs_mean) + "," + fmt(agg.mono_rhs_mean);
    if (normalize)
      out += "," + (peak > 0.0 ? fmt(agg.mean / peak) : std::string("na"));
    out += "\n";
  }
  return out;
}

void emit_csv(const std::vector<Aggregate>& aggregates, const std::string& path,
              bool normalize) {
  std::ofstream file(path, std::ios::binary);
  if (!file)
    throw std::runtime_error("emit_csv: cannot open " + path);
  file << csv_string(aggregates, normalize);
  if (!file)
    throw std::runtime_error("emit_csv: write failed for " + path);
}

}  // namespace entsim::experiments

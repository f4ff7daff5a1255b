#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "entsim/graph.hpp"

namespace entsim::experiments {

enum class Model { spin, harmonic };
enum class Topology { chain, random, bipartite_random, bipartite_regular, complete };
enum class SweepParam { n_c, c_p, n, alpha };
/// Which value a harmonic size sweep reports per n: the plain topology value,
/// or the maximum of N_l over n_c (the optimally connected chain).
enum class ScalingSeries { plain, optimal };

struct ScenarioConfig {
  Model model = Model::harmonic;
  Topology topology = Topology::chain;
  int n = 10;
  SweepParam sweep = SweepParam::n_c;
  std::vector<double> sweep_values;
  double alpha = 1.0;
  int fixed_n_c = 1;     // n_c when it is not the sweep parameter
  double fixed_c_p = 0.5;  // c_p when it is not the sweep parameter
  double weight_lo = 0.0;  // spin random-weight interval
  double weight_hi = 1.0;
  int seeds = 1;
  std::uint64_t base_seed = 1;
  graph::PartitionScheme partition = graph::PartitionScheme::contiguous;
  graph::Boundary boundary = graph::Boundary::closed;
  graph::BondConvention convention = graph::BondConvention::single;
  ScalingSeries series = ScalingSeries::plain;
  bool with_monogamy = false;
  bool with_degeneracy = false;
  bool f_curve = false;  // evaluate f(alpha, n_c) instead of a graph model
};

/// One experiment data point.
struct RunRecord {
  double sweep_value = 0.0;
  std::uint64_t seed = 0;
  double entanglement = 0.0;  // entropy E (spin) or log-negativity N_l
  double energy = 0.0;
  double degeneracy = 0.0;
  double mono_lhs = 0.0;
  double mono_rhs = 0.0;
  double mono_residual = 0.0;
  bool degenerate = false;
  bool has_degeneracy = false;
  bool has_monogamy = false;
  std::string error;  // nonempty: record failed, excluded from aggregates
};

struct Aggregate {
  double sweep_value = 0.0;
  double mean = 0.0;
  double max = 0.0;
  double stddev = 0.0;
  int n_seeds = 0;
  std::optional<double> filtered_mean;  // degenerate-flagged records excluded
  double energy_mean = 0.0;
  double degeneracy_mean = 0.0;
  double mono_lhs_mean = 0.0;
  double mono_rhs_mean = 0.0;
};

/// Deterministic child seed: adding grid points or replicas never perturbs
/// the seed of an existing (value index, replica) pair.
std::uint64_t child_seed(std::uint64_t base, std::size_t value_index,
                         std::size_t replica);

void validate(const ScenarioConfig& cfg);

/// Runs every (sweep value, seed) cell in order. Per-record failures are
/// captured in RunRecord::error without aborting the sweep.
std::vector<RunRecord> run_scenario(const ScenarioConfig& cfg);

std::vector<Aggregate> aggregate(const std::vector<RunRecord>& records);

/// CSV text: header, then one row per sweep value, 12 significant digits.
/// normalize appends a normalized_mean column (each value divided by the
/// series maximum).
std::string csv_string(const std::vector<Aggregate>& aggregates,
                       bool normalize = false);
void emit_csv(const std::vector<Aggregate>& aggregates,
              const std::string& path, bool normalize = false);

/// Inclusive numeric grid lo, lo+step, ..., hi.
std::vector<double> sweep_grid(double lo, double hi, double step);

}  // namespace entsim::experiments

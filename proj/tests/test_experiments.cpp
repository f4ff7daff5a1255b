#include <doctest.h>

#include <cmath>
#include <sstream>

#include "entsim/experiments.hpp"
#include "entsim/numerics.hpp"

using namespace entsim;
using namespace entsim::experiments;

namespace {

ScenarioConfig small_spin_chain() {
  ScenarioConfig cfg;
  cfg.model = Model::spin;
  cfg.topology = Topology::chain;
  cfg.n = 6;
  cfg.sweep = SweepParam::n_c;
  cfg.sweep_values = {1, 2, 3};
  cfg.seeds = 4;
  cfg.base_seed = 7;
  return cfg;
}

// minimal CSV reader for round-trip checks
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    std::vector<std::string> cells;
    std::stringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("child seeds are stable under grid growth") {
  CHECK(child_seed(1, 0, 0) == child_seed(1, 0, 0));
  CHECK(child_seed(1, 0, 0) != child_seed(1, 0, 1));
  CHECK(child_seed(1, 0, 0) != child_seed(1, 1, 0));
  CHECK(child_seed(1, 0, 0) != child_seed(2, 0, 0));
}

TEST_CASE("sweep_grid") {
  CHECK(sweep_grid(1, 5, 1) == std::vector<double>{1, 2, 3, 4, 5});
  CHECK(sweep_grid(0, 1, 0.5) == std::vector<double>{0, 0.5, 1});
  CHECK(sweep_grid(2, 2, 1) == std::vector<double>{2});
  CHECK_THROWS(sweep_grid(1, 5, 0));
  CHECK_THROWS(sweep_grid(5, 1, 1));
}

TEST_CASE("aggregate statistics") {
  SUBCASE("single record") {
    RunRecord rec;
    rec.sweep_value = 2;
    rec.entanglement = 1.5;
    const auto aggs = aggregate({rec});
    REQUIRE(aggs.size() == 1);
    CHECK(aggs[0].mean == 1.5);
    CHECK(aggs[0].max == 1.5);
    CHECK(aggs[0].stddev == 0.0);
    CHECK(aggs[0].n_seeds == 1);
  }
  SUBCASE("two records") {
    RunRecord a, b;
    a.sweep_value = b.sweep_value = 1;
    a.entanglement = 1.0;
    b.entanglement = 3.0;
    const auto aggs = aggregate({a, b});
    CHECK(aggs[0].mean == 2.0);
    CHECK(aggs[0].max == 3.0);
    CHECK(aggs[0].stddev == doctest::Approx(1.0));
  }
  SUBCASE("all records degenerate-flagged") {
    RunRecord a;
    a.sweep_value = 1;
    a.entanglement = 2.0;
    a.degenerate = true;
    const auto aggs = aggregate({a});
    CHECK_FALSE(aggs[0].filtered_mean.has_value());
    const std::string csv = csv_string(aggs);
    CHECK(csv.find("na") != std::string::npos);
  }
  SUBCASE("error records are excluded") {
    RunRecord good, bad;
    good.sweep_value = bad.sweep_value = 1;
    good.entanglement = 2.0;
    bad.entanglement = 99.0;
    bad.error = "boom";
    const auto aggs = aggregate({good, bad});
    CHECK(aggs[0].n_seeds == 1);
    CHECK(aggs[0].mean == 2.0);
  }
}

TEST_CASE("run_scenario determinism and seed independence") {
  const ScenarioConfig cfg = small_spin_chain();
  const auto run1 = run_scenario(cfg);
  const auto run2 = run_scenario(cfg);
  REQUIRE(run1.size() == run2.size());
  CHECK(csv_string(aggregate(run1)) == csv_string(aggregate(run2)));

  SUBCASE("grid extension keeps prior records bit-identical") {
    ScenarioConfig extended = cfg;
    extended.sweep_values = {1, 2, 3, 1};  // fourth point reuses value 1
    const auto run3 = run_scenario(extended);
    for (std::size_t i = 0; i < run1.size(); ++i) {
      CHECK(run3[i].seed == run1[i].seed);
      CHECK(run3[i].entanglement == run1[i].entanglement);
      CHECK(run3[i].energy == run1[i].energy);
    }
  }
  SUBCASE("extra replicas keep prior replicas bit-identical") {
    ScenarioConfig more = cfg;
    more.seeds = 6;
    const auto run3 = run_scenario(more);
    for (std::size_t vi = 0; vi < cfg.sweep_values.size(); ++vi)
      for (int r = 0; r < cfg.seeds; ++r)
        CHECK(run3[vi * 6 + r].entanglement ==
              run1[vi * 4 + r].entanglement);
  }
}

TEST_CASE("per-record errors do not abort the sweep") {
  ScenarioConfig cfg;
  cfg.model = Model::harmonic;
  cfg.topology = Topology::bipartite_regular;
  cfg.n = 12;
  cfg.sweep = SweepParam::n_c;
  cfg.sweep_values = {1, 10};  // 10 > n/4 is invalid for this topology
  cfg.seeds = 1;
  const auto records = run_scenario(cfg);
  REQUIRE(records.size() == 2);
  CHECK(records[0].error.empty());
  CHECK_FALSE(records[1].error.empty());
  CHECK(aggregate(records).size() == 1);
}

TEST_CASE("harmonic records carry energy and monogamy when asked") {
  ScenarioConfig cfg;
  cfg.model = Model::harmonic;
  cfg.topology = Topology::bipartite_regular;
  cfg.n = 12;
  cfg.alpha = 1.0;
  cfg.sweep = SweepParam::n_c;
  cfg.sweep_values = {1, 2, 3};
  cfg.seeds = 1;
  cfg.partition = graph::PartitionScheme::parity;
  cfg.with_monogamy = true;
  const auto records = run_scenario(cfg);
  for (const auto& rec : records) {
    CHECK(rec.error.empty());
    CHECK(rec.entanglement >= 0.0);
    CHECK(rec.energy > 0.5 * cfg.n);  // zero-point above the free value n/2
    CHECK(rec.has_monogamy);
    CHECK(rec.mono_residual >= -1e-9);
  }
}

TEST_CASE("csv output") {
  SUBCASE("empty aggregate emits the header only") {
    const std::string csv = csv_string({});
    CHECK(csv ==
          "sweep_value,mean,max,stddev,n_seeds,filtered_mean,energy_mean,"
          "degeneracy_mean,monogamy_lhs_mean,monogamy_rhs_mean\n");
  }
  SUBCASE("round trip at 12 significant digits") {
    const auto records = run_scenario(small_spin_chain());
    const auto aggs = aggregate(records);
    const auto rows = parse_csv(csv_string(aggs));
    REQUIRE(rows.size() == aggs.size() + 1);
    for (std::size_t i = 0; i < aggs.size(); ++i) {
      CHECK(std::stod(rows[i + 1][0]) == aggs[i].sweep_value);
      CHECK(std::stod(rows[i + 1][1]) ==
            doctest::Approx(aggs[i].mean).epsilon(1e-11));
      CHECK(std::stod(rows[i + 1][2]) ==
            doctest::Approx(aggs[i].max).epsilon(1e-11));
      CHECK(std::stoi(rows[i + 1][4]) == aggs[i].n_seeds);
    }
  }
  SUBCASE("normalization divides by the series maximum") {
    RunRecord a, b;
    a.sweep_value = 1;
    a.entanglement = 1.0;
    b.sweep_value = 2;
    b.entanglement = 4.0;
    const auto rows = parse_csv(csv_string(aggregate({a, b}), true));
    CHECK(rows[0].back() == "normalized_mean");
    CHECK(std::stod(rows[1].back()) == doctest::Approx(0.25));
    CHECK(std::stod(rows[2].back()) == doctest::Approx(1.0));
  }
}

TEST_CASE("f-curve scenario") {
  ScenarioConfig cfg;
  cfg.f_curve = true;
  cfg.alpha = 0.1;
  cfg.sweep = SweepParam::n_c;
  cfg.sweep_values = {1, 2, 3, 4};
  cfg.seeds = 1;
  const auto records = run_scenario(cfg);
  REQUIRE(records.size() == 4);
  for (std::size_t i = 0; i < records.size(); ++i) {
    CHECK(records[i].entanglement > 0.0);
    CHECK(records[i].entanglement ==
          numerics::quad_abs_log(cfg.alpha, static_cast<int>(i) + 1));
  }
}

TEST_CASE("config validation") {
  ScenarioConfig cfg = small_spin_chain();
  cfg.n = 7;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg = small_spin_chain();
  cfg.seeds = 0;
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg = small_spin_chain();
  cfg.sweep_values.clear();
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
  cfg = small_spin_chain();
  cfg.sweep = SweepParam::c_p;
  cfg.sweep_values = {0.5, 1.5};
  CHECK_THROWS_AS(validate(cfg), std::invalid_argument);
}

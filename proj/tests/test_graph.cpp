#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "entsim/graph.hpp"

using namespace entsim::graph;

TEST_CASE("chain builders") {
  SUBCASE("ring n=10 n_c=1") {
    const CouplingGraph g = build_chain(10, 1, Boundary::closed);
    CHECK(g.edge_count() == 10);
    for (int i = 0; i < 10; ++i)
      CHECK((g.weights.row(i).array() != 0.0).count() == 2);
  }
  SUBCASE("closed n=10 n_c=5 is complete") {
    CHECK(build_chain(10, 5, Boundary::closed).edge_count() == 45);
  }
  SUBCASE("open n=6 n_c=2 has 9 edges") {
    CHECK(build_chain(6, 2, Boundary::open).edge_count() == 9);
  }
  SUBCASE("double-counted bonds carry weight 2") {
    const CouplingGraph g =
        build_chain(6, 3, Boundary::closed, BondConvention::double_count);
    CHECK(g.edge_count() == 15);
    CHECK(g.weights(0, 3) == 2.0);
    CHECK(g.weights(0, 1) == 2.0);
  }
  SUBCASE("rejects bad parameters") {
    CHECK_THROWS_AS(build_chain(1, 1, Boundary::closed), std::invalid_argument);
    CHECK_THROWS_AS(build_chain(10, 6, Boundary::closed), std::invalid_argument);
    CHECK_THROWS_AS(build_chain(10, 0, Boundary::open), std::invalid_argument);
    CHECK_THROWS_AS(build_chain(10, 10, Boundary::open), std::invalid_argument);
  }
}

TEST_CASE("random graph builder") {
  std::mt19937_64 rng(7);
  CHECK(build_random(10, 0.0, rng).edge_count() == 0);
  CHECK(build_random(10, 1.0, rng).edge_count() == 45);
  CHECK_THROWS_AS(build_random(10, 1.5, rng), std::invalid_argument);
  CHECK_THROWS_AS(build_random(10, -0.1, rng), std::invalid_argument);

  SUBCASE("mean edge count matches binomial statistics") {
    double total = 0.0;
    for (int s = 0; s < 1000; ++s) {
      std::mt19937_64 seeded(1000 + s);
      total += build_random(10, 0.5, seeded).edge_count();
    }
    const double mean = total / 1000.0;
    // 3 sigma of the mean of 1000 draws from binomial(45, 0.5)
    const double band = 3.0 * std::sqrt(45 * 0.25 / 1000.0);
    CHECK(std::abs(mean - 22.5) <= band);
  }
  SUBCASE("deterministic for a fixed seed") {
    std::mt19937_64 a(42), b(42);
    CHECK(build_random(12, 0.3, a).weights == build_random(12, 0.3, b).weights);
  }
}

TEST_CASE("bipartite builders") {
  std::mt19937_64 rng(3);
  SUBCASE("random: full coupling gives degree n/2 on every site") {
    const CouplingGraph g = build_bipartite_random(100, 1.0, rng);
    for (int i = 0; i < 100; ++i)
      CHECK((g.weights.row(i).array() != 0.0).count() == 50);
  }
  SUBCASE("random trivials") {
    CHECK(build_bipartite_random(4, 0.0, rng).edge_count() == 0);
    CHECK(build_bipartite_random(4, 1.0, rng).edge_count() == 4);
    CHECK_THROWS_AS(build_bipartite_random(5, 0.5, rng), std::invalid_argument);
  }
  SUBCASE("regular: ring at n_c=1") {
    CHECK(build_bipartite_regular(10, 1).edge_count() == 10);
  }
  SUBCASE("regular: neighbors at odd offsets") {
    for (int n : {8, 12}) {
      const CouplingGraph g = build_bipartite_regular(n, 2);
      for (int i = 0; i < n; ++i) {
        CHECK((g.weights.row(i).array() != 0.0).count() == 4);
        for (int off : {1, 3}) {
          CHECK(g.weights(i, (i + off) % n) == 1.0);
          CHECK(g.weights(i, (i - off + n) % n) == 1.0);
        }
      }
    }
  }
  SUBCASE("regular output is bipartite between parities") {
    for (int n : {8, 12, 20}) {
      for (int n_c = 1; n_c <= n / 4; ++n_c) {
        for (const auto& [i, j] : build_bipartite_regular(n, n_c).edges())
          CHECK((i + j) % 2 == 1);
      }
    }
  }
  SUBCASE("regular rejects colliding offsets") {
    CHECK_THROWS_AS(build_bipartite_regular(12, 4), std::invalid_argument);
    CHECK_THROWS_AS(build_bipartite_regular(7, 1), std::invalid_argument);
  }
}

TEST_CASE("random weights") {
  std::mt19937_64 rng(11);
  SUBCASE("empty graph stays empty") {
    CouplingGraph g;
    g.n = 4;
    g.weights = Eigen::MatrixXd::Zero(4, 4);
    CHECK(assign_random_weights(g, rng, 0, 1).edge_count() == 0);
  }
  SUBCASE("weights land in range, reproducibly") {
    std::mt19937_64 a(5), b(5);
    const CouplingGraph ring = build_chain(4, 1, Boundary::closed);
    const CouplingGraph w1 = assign_random_weights(ring, a, 0.0, 1.0);
    const CouplingGraph w2 = assign_random_weights(ring, b, 0.0, 1.0);
    CHECK(w1.weights == w2.weights);
    for (const auto& [i, j] : w1.edges()) {
      CHECK(w1.weights(i, j) >= 0.0);
      CHECK(w1.weights(i, j) <= 1.0);
    }
    validate(w1);
  }
  SUBCASE("degenerate interval is constant") {
    const CouplingGraph ring = build_chain(4, 1, Boundary::closed);
    const CouplingGraph w = assign_random_weights(ring, rng, 1.0, 1.0);
    for (const auto& [i, j] : w.edges()) CHECK(w.weights(i, j) == 1.0);
  }
  SUBCASE("rejects inverted interval") {
    const CouplingGraph ring = build_chain(4, 1, Boundary::closed);
    CHECK_THROWS_AS(assign_random_weights(ring, rng, 2.0, 1.0),
                    std::invalid_argument);
  }
}

TEST_CASE("half partition") {
  const PartitionMask contiguous = half_partition(4, PartitionScheme::contiguous);
  CHECK(contiguous.signs(0) == 1);
  CHECK(contiguous.signs(1) == 1);
  CHECK(contiguous.signs(2) == -1);
  CHECK(contiguous.signs(3) == -1);
  const PartitionMask parity = half_partition(4, PartitionScheme::parity);
  CHECK(parity.signs(0) == 1);
  CHECK(parity.signs(1) == -1);
  CHECK(parity.signs(2) == 1);
  CHECK(parity.signs(3) == -1);
  const PartitionMask six = half_partition(6, PartitionScheme::contiguous);
  CHECK(six.signs.head(3).sum() == 3);
  CHECK(six.signs.tail(3).sum() == -3);
  CHECK_THROWS_AS(half_partition(5, PartitionScheme::contiguous),
                  std::invalid_argument);
}

TEST_CASE("builder invariants") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4 + 2 * (trial % 5);
    validate(build_chain(n, 1 + trial % (n / 2), Boundary::closed));
    validate(build_random(n, 0.4, rng));
    validate(build_bipartite_random(n, 0.4, rng));
    if (n / 4 >= 1) validate(build_bipartite_regular(n, 1 + trial % (n / 4)));
  }
  SUBCASE("complete graph three ways") {
    std::mt19937_64 seeded(1);
    const CouplingGraph a = build_chain(8, 4, Boundary::closed);
    const CouplingGraph b = build_random(8, 1.0, seeded);
    CHECK(a.weights == b.weights);
    CHECK(a.edge_count() == 28);
  }
}

TEST_CASE("edge list round trip") {
  std::mt19937_64 rng(123);
  CouplingGraph g = build_random(9, 0.5, rng);
  g = assign_random_weights(g, rng, 0.0, 1.0);
  std::stringstream buffer;
  write_edge_list(g, buffer);
  const CouplingGraph back = read_edge_list(buffer);
  CHECK(back.n == g.n);
  CHECK(back.weights == g.weights);

  std::stringstream bad("bogus\n");
  CHECK_THROWS_AS(read_edge_list(bad), std::invalid_argument);
}

TEST_CASE("connectivity diagnostic") {
  CHECK(is_connected(build_chain(6, 1, Boundary::closed)));
  CouplingGraph g;
  g.n = 4;
  g.weights = Eigen::MatrixXd::Zero(4, 4);
  g.weights(0, 1) = g.weights(1, 0) = 1.0;
  CHECK_FALSE(is_connected(g));
}

#include <algorithm>
#include <limits>
#include <numeric>

#include "doctest.h"
#include "stk/error.hpp"
#include "stk/oracles.hpp"
#include "support.hpp"

using namespace stk;
using namespace stk::testing;

TEST_SUITE("oracles") {

TEST_CASE("exact SMLA examples") {
  CHECK(exact_smla(unit_triangle(), all_vertices(3)).cost == 4.0);
  OracleResult<Arrangement> one = exact_smla(unit_triangle(), TerminalSet({1}, 3));
  CHECK(one.cost == 0.0);
  CHECK(one.solution.position == std::vector<int>{1, 1, 1});
  CHECK(exact_smla(star_graph(3), TerminalSet({1, 2, 3}, 4)).cost == 2.0);
}

TEST_CASE("ties resolve to the lexicographically smallest arrangement") {
  OracleResult<Arrangement> r = exact_smla(unit_path(3), all_vertices(3));
  CHECK(r.cost == 2.0);
  CHECK(r.solution.position == std::vector<int>{1, 2, 3});
}

TEST_CASE("exact SMLA with K = V matches direct enumeration") {
  Rng rng(401);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = random_int(rng, 1, 7);
    WeightedGraph g = random_connected_graph(rng, n, 0.4, 5);
    std::vector<int> pos(n);
    std::iota(pos.begin(), pos.end(), 1);
    double best = std::numeric_limits<double>::infinity();
    do {
      double c = 0.0;
      for (const Edge& e : g.edges()) c += e.w * std::abs(pos[e.u] - pos[e.v]);
      best = std::min(best, c);
    } while (std::next_permutation(pos.begin(), pos.end()));
    CHECK(exact_smla(g, all_vertices(n)).cost == best);
  }
}

TEST_CASE("exact bisection examples") {
  WeightedGraph square = cycle_graph(4);
  TerminalSet all4 = all_vertices(4);
  CHECK(exact_steiner_bisection(square, all4, 2).cost == 2.0);
  auto none = exact_steiner_bisection(square, all4, 0);
  CHECK(none.cost == 0.0);
  CHECK(std::none_of(none.solution.side_a.begin(), none.solution.side_a.end(), [](bool b) { return b; }));
  auto full = exact_steiner_bisection(square, all4, 4);
  CHECK(full.cost == 0.0);
  CHECK(std::all_of(full.solution.side_a.begin(), full.solution.side_a.end(), [](bool b) { return b; }));
  CHECK_THROWS_AS(exact_steiner_bisection(square, all4, 5), std::invalid_argument);
  CHECK_THROWS_AS(exact_steiner_bisection(square, all4, -1), std::invalid_argument);
}

TEST_CASE("bisection oracle is symmetric under complement") {
  Rng rng(402);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = random_int(rng, 2, 10);
    Instance inst = random_instance(rng, n, random_int(rng, 1, n));
    const int k = inst.terminals.size();
    for (int kp = 0; kp <= k; ++kp) {
      CHECK(exact_steiner_bisection(inst.graph, inst.terminals, kp).cost ==
            exact_steiner_bisection(inst.graph, inst.terminals, k - kp).cost);
    }
  }
}

TEST_CASE("bisection oracle matches exhaustive vertex sides") {
  Rng rng(403);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = random_int(rng, 2, 9);
    Instance inst = random_instance(rng, n, random_int(rng, 1, n));
    const int kp = random_int(rng, 0, inst.terminals.size());
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      int on_a = 0;
      for (Vertex t : inst.terminals.vertices()) on_a += (mask >> t) & 1u;
      if (on_a != kp) continue;
      double w = 0.0;
      for (const Edge& e : inst.graph.edges()) {
        if (((mask >> e.u) & 1u) != ((mask >> e.v) & 1u)) w += e.w;
      }
      best = std::min(best, w);
    }
    CHECK(exact_steiner_bisection(inst.graph, inst.terminals, kp).cost == best);
  }
}

TEST_CASE("exact multicut examples") {
  DemandPairs ends{{0, 2, 1.0}};
  auto none = exact_partial_multicut(unit_path(3), ends, 0);
  CHECK(none.cost == 0.0);
  CHECK(none.solution.edges.empty());
  CHECK(exact_partial_multicut(unit_path(3), ends, 1).cost == 1.0);
  DemandPairs uv{{0, 1, 1.0}};
  auto tri = exact_partial_multicut(unit_triangle(), uv, 1);
  CHECK(tri.cost == 2.0);
  CHECK(tri.solution.separated_pairs == std::vector<int>{0});
  CHECK_THROWS_AS(exact_partial_multicut(unit_path(3), ends, 2), std::invalid_argument);
}

TEST_CASE("exact SMCLA examples") {
  CHECK(exact_smcla(unit_path(3), all_vertices(3)).cost == 1.0);
  CHECK(exact_smcla(unit_path(3), TerminalSet({2}, 3)).cost == 0.0);
  CHECK(exact_smcla(unit_triangle(), all_vertices(3)).cost == 2.0);
}

TEST_CASE("guards throw instead of approximating") {
  WeightedGraph big_path = unit_path(9);
  CHECK_THROWS_AS(exact_smla(big_path, all_vertices(9)), GuardExceeded);
  CHECK_FALSE(smla_oracle_fits(big_path, all_vertices(9)));

  WeightedGraph ring = cycle_graph(17);
  CHECK_THROWS_AS(exact_partial_multicut(ring, {{0, 5, 1.0}}, 1), GuardExceeded);

  WeightedGraph line = unit_path(20);
  std::vector<Vertex> ids(20);
  std::iota(ids.begin(), ids.end(), 0);
  TerminalSet twenty(ids, 20);
  CHECK_THROWS_AS(exact_steiner_bisection(line, twenty, 10), GuardExceeded);  // C(20,10) > 1e5
  CHECK_NOTHROW(exact_steiner_bisection(line, twenty, 3));

  // 4! * 4^6 fits; 4! * 4^8 is above 1e6.
  CHECK(smcla_oracle_fits(unit_path(10), TerminalSet({0, 1, 2, 3}, 10)));
  CHECK_THROWS_AS(exact_smcla(unit_path(12), TerminalSet({0, 1, 2, 3}, 12)), GuardExceeded);
}

}  // TEST_SUITE

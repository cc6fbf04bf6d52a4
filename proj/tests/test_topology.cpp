#include <doctest.h>

#include <random>

#include "expanse/io.hpp"
#include "expanse/topology.hpp"
#include "oracles.hpp"

using namespace expanse;

namespace {

Complex boundary_of_simplex(int n) {
  std::vector<std::string> labels;
  for (int i = 0; i <= n + 1; ++i) labels.push_back(std::to_string(i));
  Complex k(labels);
  for (int skip = 0; skip <= n + 1; ++skip) {
    Simplex s;
    for (int i = 0; i <= n + 1; ++i)
      if (i != skip) s.push_back(i);
    k.add_simplex(s);
  }
  return k;
}

Complex random_complex(std::mt19937_64& rng, int vertices, int faces) {
  std::vector<std::string> labels;
  for (int i = 0; i < vertices; ++i) labels.push_back(std::to_string(i));
  Complex k(labels);
  for (int f = 0; f < faces; ++f) {
    Simplex s;
    for (int i = 0; i < vertices; ++i)
      if (rng() % 3 == 0) s.push_back(i);
    if (!s.empty() && s.size() <= 4) k.add_simplex(s);
  }
  return k;
}

}  // namespace

TEST_CASE("spheres") {
  for (int n = 0; n <= 3; ++n) {
    HomologyReport h = reduced_homology(boundary_of_simplex(n), n + 1);
    std::vector<long> want(n + 2, 0);
    want[n] = 1;
    CHECK(h.betti_gf2 == want);
    CHECK(h.betti_q == want);
    CHECK(h.connectivity() == n - 1);
    CHECK(h.collapse != "collapsible");
  }
}

TEST_CASE("simplex collapses to a point") {
  Complex k({"a", "b", "c", "d"});
  k.add_simplex({0, 1, 2, 3});
  CollapseResult c = greedy_collapse(k);
  CHECK(c.collapsible);
  CHECK(c.remaining == 1);
  CHECK(reduced_homology(k, 3).collapse == "collapsible");
}

TEST_CASE("empty complex") {
  Complex k;
  HomologyReport h = reduced_homology(k, 0);
  CHECK(h.empty);
  CHECK(h.connectivity() == -2);
  CHECK_FALSE(h.homologically_connected(-1));
  CHECK(to_dot(k) == "graph complex {\n}\n");
}

TEST_CASE("ranks agree with dense elimination") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    Complex k = random_complex(rng, 3 + trial % 6, 8);
    int d = std::max(k.dimension(), 0);
    HomologyReport h = reduced_homology(k, d, false);
    CHECK(h.betti_gf2 == oracle::reduced_betti(k, d, false));
    CHECK(h.betti_q == oracle::reduced_betti(k, d, true));
    long chi = 0;
    for (int i = 0; i <= d; ++i) chi += (i % 2 ? -1 : 1) * h.betti_q[i];
    CHECK(chi == k.euler_characteristic() - 1);
  }
  std::vector<std::vector<long>> m{{2, 4, 1}, {1, 2, 0}, {3, 6, 1}};
  CHECK(rank_bareiss(m) == oracle::dense_rank_q(m));
  CHECK(rank_bareiss(m) == 2);
}

TEST_CASE("joins of spheres") {
  Complex s0 = boundary_of_simplex(0);
  Complex circle = join(s0, s0);
  CHECK(reduced_homology(circle, 2).betti_q == std::vector<long>{0, 1, 0});
  Complex c1 = boundary_of_simplex(1);
  HomologyReport h = reduced_homology(join(c1, c1), 3, false);
  CHECK(h.betti_q == std::vector<long>{0, 0, 0, 1});
  CHECK(h.homologically_connected(2));
  Complex point({"p"});
  CHECK(greedy_collapse(join(point, c1)).collapsible);
}

TEST_CASE("order complex and nerve") {
  Complex chain = order_complex({"0", "1", "2"}, {{true, true, true}, {false, true, true}, {false, false, true}});
  CHECK(chain.dimension() == 2);
  Complex square = order_complex({"b", "l", "r", "t"}, {{true, true, true, true},
                                                      {false, true, false, true},
                                                      {false, false, true, true},
                                                      {false, false, false, true}});
  CHECK(square.maximal_simplices().size() == 2);
  CHECK(nerve({{0, 1, 2}}, 3).simplex_count() == 1);
  Complex n = nerve({{0, 1}, {1, 2}, {2, 0}}, 2);
  CHECK(reduced_homology(n, 1).betti_q == std::vector<long>{0, 1});
}

TEST_CASE("simplex budget") {
  Complex k({"a", "b", "c", "d", "e", "f"}, 20);
  CHECK_THROWS_AS(k.add_simplex({0, 1, 2, 3, 4, 5}), BudgetExceeded);
}

TEST_CASE("complex JSON roundtrip and induced subcomplexes") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    Complex k = random_complex(rng, 6, 5);
    CHECK(complex_from_json(complex_to_json(k)) == k);
    Complex sub = k.induced({0, 2, 4});
    CHECK(sub.vertex_count() == 3);
  }
}

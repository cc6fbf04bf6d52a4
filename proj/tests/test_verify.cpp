#include <doctest.h>

#include <random>

#include "expanse/instances.hpp"
#include "expanse/io.hpp"
#include "expanse/verify.hpp"
#include "fixtures/ordered_instance.hpp"

using namespace expanse;

TEST_CASE("report JSON roundtrip and combination") {
  CheckReport r{"bound", "v", {{"k", 2}}, Verdict::pass, {{"link_vertices", 2}}, 3};
  CHECK(CheckReport::from_json(r.to_json()) == r);
  CheckReport f = r;
  f.verdict = Verdict::fail;
  CheckReport i = r;
  i.verdict = Verdict::inconclusive;
  CHECK(combine({r, i}) == Verdict::inconclusive);
  CHECK(combine({i, f, r}) == Verdict::fail);
  CHECK(combine({}) == Verdict::pass);
  auto merged = merge_reports({f, CheckReport{"action", "v"}});
  CHECK(merged.front().check == "action");
  CHECK_THROWS(verdict_from_string("maybe"));
}

TEST_CASE("common upper bounds") {
  ThompsonV v;
  Vertex root{v.root()};
  UpperBound same = common_upper_bound(v, root, root);
  CHECK(same.top == root);
  CHECK(same.from_first.size() == 1);
  Vertex split = v.expansions(v.root()).nodes[1];
  UpperBound one = common_upper_bound(v, root, split);
  CHECK(one.top == split);
  CHECK(one.from_second.size() == 1);
  std::mt19937_64 rng(2);
  for (int i = 0; i < 20; ++i) {
    Vertex a = v.random_full_support_vertex(rng, 2);
    Vertex b = v.random_full_support_vertex(rng, 2);
    UpperBound ub = common_upper_bound(v, a, b);
    CHECK(sequence_valid(v, ub.from_first));
    CHECK(sequence_valid(v, ub.from_second));
    CHECK(ub.from_first.back() == ub.top);
    CHECK(ub.from_second.back() == ub.top);
  }
  CHECK_THROWS(common_upper_bound(v, Vertex{v.atom(Box{"0"})}, root));
}

TEST_CASE("type vectors decide orbits of vertices") {
  ThompsonV v;
  std::mt19937_64 rng(8);
  for (int i = 0; i < 20; ++i) {
    Vertex a = random_vertex_of_height(v, rng, 3);
    Vertex b = random_vertex_of_height(v, rng, 3);
    auto g = match_by_type(v, a, b);
    CHECK((g != nullptr) == (type_vector(v, a) == type_vector(v, b)));
    if (g) CHECK(act_on_vertex(v, *g, a) == b);
  }
}

TEST_CASE("descending bound below threshold is reported, not asserted") {
  ThompsonV v;
  CheckReport r = check_descending_bound(v, 5, 0, 0);
  CHECK(r.verdict == Verdict::pass);
  CHECK(r.witness["asserted_connected"] == false);
  CHECK(r.witness["threshold"] == 6);
}

TEST_CASE("linear bounds on the toy instance") {
  fixtures::OrderedInstance lin(Kind::linear);
  for (auto [k, n] : std::vector<std::pair<int, int>>{{5, 0}, {8, 1}}) {
    CheckReport r = check_descending_bound(lin, k, n, 0);
    CHECK(r.verdict == Verdict::pass);
    CHECK(r.witness["asserted_connected"] == true);
  }
  CheckReport c = check_cover_and_nerve(lin, 6, 30, 0);
  CHECK(c.verdict == Verdict::pass);
}

TEST_CASE("cyclic bounds on the toy instance") {
  fixtures::OrderedInstance cyc(Kind::cyclic);
  for (auto [k, n] : std::vector<std::pair<int, int>>{{6, 0}, {9, 1}}) {
    CheckReport r = check_descending_bound(cyc, k, n, 0);
    CHECK(r.verdict == Verdict::pass);
    CHECK(r.witness["asserted_connected"] == true);
  }
  CheckReport c = check_cover_and_nerve(cyc, 6, 30, 0);
  CHECK(c.verdict == Verdict::pass);
}

TEST_CASE("checks on 2V and Roever") {
  BrinNV nv(2);
  CHECK(check_action(nv, 5, 1).verdict == Verdict::pass);
  CHECK(check_ascending_factorizations(nv, 5, 2, 1).verdict == Verdict::pass);
  Rover r;
  CHECK(check_action(r, 5, 1).verdict == Verdict::pass);
  CHECK(check_axioms(r, 5, 2, 1).verdict == Verdict::pass);
  CHECK(check_filtration(r, 3, 1, 1).verdict == Verdict::pass);
}

TEST_CASE("join lemma") { CHECK(check_join_lemma(50, 3).verdict == Verdict::pass); }

#include <doctest.h>

#include <random>

#include "expanse/instances.hpp"
#include "expanse/io.hpp"
#include "expanse/verify.hpp"
#include "fixtures/ordered_instance.hpp"
#include "oracles.hpp"

using namespace expanse;

namespace {

Vertex atoms(const ExpansionSet& set, std::vector<Word> cells) {
  std::vector<ElementId> elems;
  for (auto& c : cells) elems.push_back(set.atom(Box{c}));
  return set.make_vertex(std::move(elems));
}

}  // namespace

TEST_CASE("vertices keep a canonical order and reject overlaps") {
  ThompsonV v;
  Vertex a = atoms(v, {"1", "00", "01"});
  CHECK(v.vertex_label(a) == v.vertex_label(atoms(v, {"00", "01", "1"})));
  CHECK_THROWS(v.make_vertex({v.atom(Box{"0"}), v.atom(Box{"01"})}));
  CHECK(v.vertex_from_json(v.vertex_json(a)) == a);
}

TEST_CASE("restriction and simplices in V") {
  ThompsonV v;
  ElementId root = v.root();
  Vertex two = atoms(v, {"0", "1"});
  Vertex three = atoms(v, {"0", "10", "11"});
  CHECK(restriction(v, root, two) == two);
  CHECK(restriction(v, v.atom(Box{"1"}), three) == atoms(v, {"10", "11"}));
  CHECK(is_simplex(v, {Vertex{root}, two}));
  CHECK(is_simplex(v, {two, three}));
  CHECK_FALSE(is_simplex(v, {Vertex{root}, three}));
  CHECK(refines(v, three, two));
  CHECK(check_expansion_axioms(v, root).ok);
}

TEST_CASE("ascending stars are products") {
  ThompsonV v;
  AscendingStar s1 = ascending_star(v, Vertex{v.root()});
  CHECK(s1.vertices.size() == 2);
  AscendingStar s3 = ascending_star(v, atoms(v, {"0", "10", "11"}));
  CHECK(s3.vertices.size() == 8);
  int covers = 0;
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = 0; b < 8; ++b)
      if (s3.leq[a][b] && a != b) ++covers;
  CHECK(covers == 19);  // strict relations in the cube {0,1}^3
  AscendingLink link = ascending_link(v, atoms(v, {"0", "10", "11"}));
  CHECK(link.join_form.dimension() == 2);
  CHECK(link.join_form.simplex_count() == 7);
  CHECK(greedy_collapse(link.link).collapsible);

  BrinNV nv(2);
  AscendingStar s2 = ascending_star(nv, nv.make_vertex({nv.atom(Box{"0", ""}), nv.atom(Box{"1", ""})}));
  CHECK(s2.vertices.size() == 16);
}

TEST_CASE("descending link of a height-2 vertex has two isolated points") {
  ThompsonV v;
  DescendingLink dl = descending_link(v, atoms(v, {"0", "1"}));
  CHECK(dl.vertices.size() == 2);
  CHECK(dl.complex.dimension() == 0);
  DescendingLink one = descending_link(v, Vertex{v.root()});
  CHECK(one.vertices.empty());
}

TEST_CASE("expansion search agrees with breadth-first reachability") {
  ThompsonV v;
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    Vertex a = v.random_full_support_vertex(rng, 2);
    Vertex b = v.random_full_support_vertex(rng, 2);
    if (a.size() > 5 || b.size() > 5) continue;
    auto seq = expansion_leq(v, a, b);
    CHECK(seq.has_value() == oracle::bfs_reachable(v, a, b, b.size()));
    if (seq) {
      CHECK(sequence_valid(v, *seq));
      CHECK(merge_sequences(v, split_sequence(v, *seq)).back() == b);
    }
  }
}

TEST_CASE("standard covers") {
  CHECK(standard_cover(6, 2, 2, Kind::permutational).size() == 21);
  CHECK_THROWS_AS(standard_cover(2, 2, 2, Kind::permutational), TooSmall);
  Partition p{{{0, 1}, {2, 3, 4}}};
  Partition q{{{0}, {1, 2}, {3, 4}}};
  Partition m = partition_meet(p, q);
  CHECK(m == normalize(Partition{{{0}, {1}, {2}, {3, 4}}}));
  CHECK_THROWS_AS(validate_partition(Partition{{{0, 1}, {1, 2}}}, 3), NotAPartition);
  for (const auto& sp : standard_cover(6, 2, 2, Kind::linear)) {
    const auto& pr = sp.principal;
    for (std::size_t i = 1; i < pr.size(); ++i) CHECK(pr[i] == pr[i - 1] + 1);
  }
}

TEST_CASE("partitioned links drop straddling contractions") {
  ThompsonV v;
  Vertex top = atoms(v, {"00", "01", "10", "11"});
  DescendingLink dl = descending_link(v, top);
  Partition p{{{0, 1}, {2, 3}}};
  DescendingLink part = partitioned_descending_link(v, dl, p);
  CHECK(part.vertices.size() < dl.vertices.size());
  for (const auto& u : part.vertices) CHECK(lower_in_partition(u, p));
}

TEST_CASE("filtration slices have dimension at most n - 1") {
  ThompsonV v;
  Slice s = filtration_slice(v, {Vertex{v.root()}}, 3, 2);
  CHECK(s.complex.dimension() <= 2);
  for (const auto& w : s.vertices) CHECK(w.size() <= 3);
}

TEST_CASE("toy linear and cyclic instances") {
  fixtures::OrderedInstance lin(Kind::linear), cyc(Kind::cyclic);
  Vertex l3 = atoms(lin, {"0", "10", "11"});
  // Adjacent pairs only, each in one order.
  CHECK(descending_link(lin, l3).vertices.size() == 2);
  // The cyclic instance also contracts the wrap-around pair.
  CHECK(descending_link(cyc, atoms(cyc, {"0", "10", "11"})).vertices.size() > 2);
  CHECK(lin.contractions(atoms(lin, {"0", "11"})).empty());
  CHECK(descending_threshold(Kind::linear, 0, 2, 2) == 5);
  CHECK(descending_threshold(Kind::linear, 1, 2, 2) == 8);
  CHECK(descending_threshold(Kind::cyclic, 0, 2, 2) == 6);
  CHECK(descending_threshold(Kind::cyclic, 1, 2, 2) == 9);
}

#include <doctest.h>

#include <random>

#include "expanse/cantor.hpp"
#include "expanse/instances.hpp"
#include "oracles.hpp"

using namespace expanse;

namespace {

TableMap random_table(std::mt19937_64& rng, int leaves) {
  auto dom = random_prefix_code(rng, "", leaves, 3);
  auto img = random_prefix_code(rng, "", leaves, 3);
  equalize_codes(dom, img);
  std::shuffle(img.begin(), img.end(), rng);
  std::vector<Row> rows;
  for (std::size_t i = 0; i < dom.size(); ++i) rows.push_back({dom[i], img[i]});
  return TableMap(std::move(rows));
}

}  // namespace

TEST_CASE("support of the three-row example is its image cones") {
  TableMap g({{"0", "101"}, {"10", "00"}, {"11", "100"}});
  CHECK(image_cones(g) == std::vector<Word>{"00", "100", "101"});
  CHECK(dom_partitions_root(g.domain()));
}

TEST_CASE("rows are reduced by merging sibling pairs") {
  TableMap t({{"00", "10"}, {"01", "11"}, {"1", "0"}});
  CHECK(t.rows() == std::vector<Row>{{"0", "1"}, {"1", "0"}});
  CHECK(TableMap({{"0", "0"}, {"1", "1"}}) == TableMap::identity());
}

TEST_CASE("composition agrees with pointwise evaluation") {
  std::mt19937_64 rng(7);
  const auto points = oracle::words_of_length(9);
  for (int trial = 0; trial < 60; ++trial) {
    TableMap f = random_table(rng, 1 + trial % 5);
    TableMap g = random_table(rng, 1 + (trial * 3) % 6);
    TableMap fg = compose(f, g);
    for (const auto& x : points) {
      auto gx = oracle::eval(g.rows(), x);
      auto want = gx ? oracle::eval(f.rows(), *gx) : std::nullopt;
      CHECK(fg.apply(x) == want);
    }
  }
}

TEST_CASE("inverse and restriction") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    TableMap f = random_table(rng, 1 + trial % 6);
    CHECK(compose(inverse(f), f) == TableMap::identity());
    CHECK(compose(f, inverse(f)) == TableMap::identity());
    TableMap half = restrict(f, {"0"});
    CHECK(support_subset(word_boxes(half.domain()), {Box{"0"}}));
    CHECK(support_subset({Box{"0"}}, word_boxes(half.domain())));
    CHECK(equal_extensional(disjoint_union({half, restrict(f, {"1"})}), f));
  }
}

TEST_CASE("disjoint union rejects overlapping domains") {
  CHECK_THROWS_AS(disjoint_union({TableMap::prefix("0", "0"), TableMap::prefix("01", "1")}), OverlapError);
  CHECK(disjoint_union({}).is_zero());
}

TEST_CASE("support arithmetic") {
  CHECK(boxes_disjoint(Box{"0"}, Box{"1"}));
  CHECK_FALSE(boxes_disjoint(Box{"0"}, Box{"01"}));
  CHECK(support_subset({Box{"01"}, Box{"00"}}, {Box{"0"}}));
  Support rest = support_complement({Box{"00"}, Box{"101"}}, Box{""});
  CHECK(supports_disjoint(rest, {Box{"00"}, Box{"101"}}));
  Support all = rest;
  all.push_back(Box{"00"});
  all.push_back(Box{"101"});
  CHECK(support_subset({Box{""}}, all));
  CHECK(box_contains(Box{"0", ""}, Box{"01", "1"}));
  CHECK(boxes_disjoint(Box{"0", "0"}, Box{"0", "1"}));
}

TEST_CASE("box maps on X^2") {
  BoxMap f(2, {{{"0", ""}, {"01", "0"}}, {{"1", "1"}, {"11", ""}}, {{"1", "0"}, {"0", "1"}}});
  // The image misses X00 x X0 and X10 x X.
  CHECK(boxes_partition_root(2, f.domain()));
  CHECK(boxes_partition_root(2, {Box{"01", "0"}, Box{"11", ""}, Box{"0", "1"}, Box{"00", "0"}, Box{"10", ""}}));
  BoxMap inv = box_inverse(f);
  CHECK(box_equal(box_compose(inv, f), BoxMap::identity(2)));
  CHECK(box_equal(box_compose(f, inv), box_restrict(BoxMap::identity(2), f.image())));
  CHECK_FALSE(boxes_partition_root(2, f.image()));
  CHECK(f.apply(Box{"01", "10"}) == Box{"011", "010"});
}

TEST_CASE("prefix code helpers") {
  std::vector<Word> a{"0", "1"}, b{"00", "01", "1"};
  equalize_codes(a, b);
  CHECK(a.size() == b.size());
  CHECK(dom_partitions_root(a));
  CHECK_FALSE(dom_partitions_root({"0", "10"}));
}

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "expanse/instances.hpp"
#include "oracles.hpp"

using namespace expanse;

namespace {

// Elements of dom-depth <= 3 with pairwise-disjoint image cones of depth <= 2.
std::vector<TableMap> small_tables(std::mt19937_64& rng, int count) {
  std::vector<TableMap> out;
  auto codes = oracle::prefix_codes("", 3);
  auto cones = oracle::words_of_length(3);
  while (static_cast<int>(out.size()) < count) {
    const auto& code = codes[rng() % codes.size()];
    if (code.size() > 3) continue;
    std::vector<Word> imgs = cones;
    std::shuffle(imgs.begin(), imgs.end(), rng);
    std::vector<Row> rows;
    for (std::size_t i = 0; i < code.size(); ++i) rows.push_back({code[i], imgs[i].substr(0, 1 + rng() % 3)});
    try {
      out.emplace_back(rows);
    } catch (const OverlapError&) {
    }
  }
  return out;
}

bool same_on_words(const std::vector<Row>& a, const Word& under, const std::vector<Row>& b, int len) {
  for (const auto& x : oracle::words_of_length(len))
    if (oracle::eval(a, under + x) != oracle::eval(b, x)) return false;
  return true;
}

}  // namespace

TEST_CASE("V: brute force over dom-depth 4 finds exactly the two contractions") {
  ThompsonV v;
  std::mt19937_64 rng(11);
  auto tables = small_tables(rng, 40);
  const auto codes = oracle::prefix_codes("", 4);
  int pairs = 0;
  std::vector<std::pair<std::size_t, std::size_t>> index_pairs;
  for (std::size_t i = 0; i < tables.size(); ++i)
    for (std::size_t j = i + 1; j < tables.size(); ++j) index_pairs.emplace_back(i, j);
  for (const auto& [i, j] : index_pairs) {
    if (pairs == 12) break;
    ElementId b1 = v.element(tables[i]);
    ElementId b2 = v.element(tables[j]);
    if (!supports_disjoint(v.support(b1), v.support(b2))) continue;
    ++pairs;
    // Candidates send the cones of some depth-4 code onto the image cones of b1 and b2.
    std::vector<Word> targets;
    for (const auto& r : tables[i].rows()) targets.push_back(r.img);
    for (const auto& r : tables[j].rows()) targets.push_back(r.img);
    std::sort(targets.begin(), targets.end());
    std::set<ElementId> found;
    for (const auto& code : codes) {
      if (code.size() != targets.size()) continue;
      std::vector<Word> perm = targets;
      do {
        std::vector<Row> rows;
        for (std::size_t j = 0; j < code.size(); ++j) rows.push_back({code[j], perm[j]});
        for (auto order : {std::pair{&tables[i], &tables[j]}, std::pair{&tables[j], &tables[i]}})
          if (same_on_words(rows, "0", order.first->rows(), 6) && same_on_words(rows, "1", order.second->rows(), 6))
            found.insert(v.element(TableMap(rows)));
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
    auto cs = v.contractions(v.make_vertex({b1, b2}));
    CHECK(found.size() == 2);
    CHECK(std::set<ElementId>(cs.begin(), cs.end()) == found);
  }
  CHECK(pairs >= 5);
}

TEST_CASE("V: stabilizers are trivial by exhaustive search at depth 3") {
  ThompsonV v;
  std::mt19937_64 rng(5);
  int checked = 0;
  for (const auto& t : small_tables(rng, 30)) {
    ElementId b = v.element(t);
    std::vector<Word> cover = t.image();
    // Refinements of the support by words of length <= 3.
    std::vector<std::vector<Word>> refinements{{}};
    for (const auto& w : cover) {
      std::vector<std::vector<Word>> next;
      for (const auto& partial : refinements)
        for (const auto& sub : oracle::prefix_codes(w, 3)) {
          auto c = partial;
          c.insert(c.end(), sub.begin(), sub.end());
          next.push_back(std::move(c));
        }
      refinements = std::move(next);
    }
    std::size_t fixing = 0, total = 0;
    for (const auto& dom : refinements)
      for (const auto& img : refinements) {
        if (dom.size() != img.size()) continue;
        std::vector<Word> perm = img;
        std::sort(perm.begin(), perm.end());
        do {
          std::vector<Row> rows;
          for (std::size_t j = 0; j < dom.size(); ++j) rows.push_back({dom[j], perm[j]});
          TableMap s(rows);
          ++total;
          if (VAction(v, s).apply(b) == b) {
            ++fixing;
            CHECK(s == TableMap::identity_on(cover));
          }
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
    CHECK(fixing >= 1);
    ++checked;
  }
  CHECK(checked == 30);
}

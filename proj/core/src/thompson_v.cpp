#include <algorithm>
#include <numeric>

#include "expanse/instances.hpp"
#include "expanse/io.hpp"

namespace expanse {

namespace {

const VAction& as_v(const PartialAction& a) {
  auto* p = dynamic_cast<const VAction*>(&a);
  if (!p) throw std::invalid_argument("map does not belong to the V instance");
  return *p;
}

std::string table_label(const TableMap& t) {
  std::string out = "[";
  for (std::size_t i = 0; i < t.rows().size(); ++i) {
    const auto& r = t.rows()[i];
    if (i) out += " ";
    out += (r.dom.empty() ? "e" : r.dom) + ">" + (r.img.empty() ? "e" : r.img);
  }
  return out + "]";
}

}  // namespace

std::optional<ElementId> VAction::apply(ElementId b) const {
  if (!support_subset(set_.support(b), domain())) return std::nullopt;
  return set_.element(expanse::compose(map_, set_.table(b)));
}

Support VAction::domain() const { return word_boxes(map_.domain()); }

Support VAction::image_of(const Support& s) const {
  Support out;
  for (const auto& w : box_words(s))
    for (const auto& c : restrict(map_, {w}).image()) out.push_back(Box{c});
  return out;
}

nlohmann::json VAction::to_json() const { return table_to_json(map_); }

ElementId ThompsonV::element(const TableMap& t) const {
  if (!dom_partitions_root(t.domain()))
    throw std::invalid_argument("a V element needs domain rows that partition the whole space");
  std::string key;
  for (const auto& r : t.rows()) key += r.dom + ':' + r.img + ';';
  if (auto known = store_.find(key)) return *known;
  return store_.intern(std::move(key), t, word_boxes(t.image()));
}

const ExpansionPoset& ThompsonV::expansions(ElementId b) const {
  auto& entry = store_.get(b);
  {
    std::lock_guard<std::mutex> lock(store_.mutex());
    if (entry.poset) return *entry.poset;
  }
  const TableMap& t = entry.payload;
  auto half = [&](char bit) {
    std::vector<Row> rows;
    for (const auto& r : t.rows()) {
      if (r.dom.empty())
        rows.push_back({"", r.img + bit});
      else if (r.dom[0] == bit)
        rows.push_back({r.dom.substr(1), r.img});
    }
    return element(TableMap(std::move(rows)));
  };
  ElementId left = half('0');
  ElementId right = half('1');
  auto poset = std::make_unique<ExpansionPoset>();
  poset->nodes = {Vertex{b}, make_vertex({left, right})};
  poset->leq = {{true, true}, {false, true}};
  std::lock_guard<std::mutex> lock(store_.mutex());
  if (!entry.poset) entry.poset = std::move(poset);
  return *entry.poset;
}

std::vector<ElementId> ThompsonV::contractions(const Vertex& u) const {
  std::vector<ElementId> out;
  if (u.size() != 2) return out;
  for (int order = 0; order < 2; ++order) {
    const TableMap& first = table(u[order]);
    const TableMap& second = table(u[1 - order]);
    std::vector<Row> rows;
    for (const auto& r : first.rows()) rows.push_back({"0" + r.dom, r.img});
    for (const auto& r : second.rows()) rows.push_back({"1" + r.dom, r.img});
    TableMap glued(std::move(rows));
    ElementId c = element(glued);
    if (expansions(c).nodes[1] == u && std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return out;
}

nlohmann::json ThompsonV::element_json(ElementId b) const { return table_to_json(table(b)); }

ElementId ThompsonV::element_from_json(const nlohmann::json& j) const { return element(table_from_json(j)); }

std::string ThompsonV::element_label(ElementId b) const { return table_label(table(b)); }

int ThompsonV::orbit_class(ElementId b) const { return dom_partitions_root(table(b).image()) ? 0 : 1; }

std::unique_ptr<PartialAction> ThompsonV::glue(const std::vector<std::pair<ElementId, ElementId>>& pairs) const {
  std::vector<TableMap> pieces;
  Support src, dst;
  for (const auto& [from, to] : pairs) {
    if (!supports_disjoint(src, support(from)) || !supports_disjoint(dst, support(to))) return nullptr;
    pieces.push_back(expanse::compose(table(to), inverse(table(from))));
    src.insert(src.end(), support(from).begin(), support(from).end());
    dst.insert(dst.end(), support(to).begin(), support(to).end());
  }
  std::vector<Word> rest_src = box_words(support_complement(src, Box{""}));
  std::vector<Word> rest_dst = box_words(support_complement(dst, Box{""}));
  if (rest_src.empty() != rest_dst.empty()) return nullptr;
  equalize_codes(rest_src, rest_dst);
  for (std::size_t i = 0; i < rest_src.size(); ++i) pieces.push_back(TableMap::prefix(rest_src[i], rest_dst[i]));
  TableMap gamma = disjoint_union(pieces);
  if (!dom_partitions_root(gamma.domain())) return nullptr;
  return std::make_unique<VAction>(*this, std::move(gamma));
}

std::unique_ptr<PartialAction> ThompsonV::random_map(std::mt19937_64& rng, const Support& cover, bool full) const {
  int leaves = std::uniform_int_distribution<int>(1, 5)(rng);
  auto dom = random_prefix_code(rng, "", leaves, 3);
  auto img = random_prefix_code(rng, "", static_cast<int>(dom.size()), 3);
  equalize_codes(dom, img);
  std::shuffle(img.begin(), img.end(), rng);
  std::vector<Row> rows;
  for (std::size_t i = 0; i < dom.size(); ++i) rows.push_back({dom[i], img[i]});
  TableMap m(std::move(rows));
  if (!full) m = restrict(m, box_words(cover));
  return std::make_unique<VAction>(*this, std::move(m));
}

std::unique_ptr<PartialAction> ThompsonV::compose(const PartialAction& outer, const PartialAction& inner) const {
  return std::make_unique<VAction>(*this, expanse::compose(as_v(outer).map(), as_v(inner).map()));
}

std::unique_ptr<PartialAction> ThompsonV::identity_on(const Support& s) const {
  return std::make_unique<VAction>(*this, TableMap::identity_on(box_words(s)));
}

StabilizerInfo ThompsonV::stabilizer(ElementId b) const {
  StabilizerInfo info;
  info.order = 1;
  info.isomorphism_type = "trivial";
  VAction id(*this, TableMap::identity_on(box_words(support(b))));
  info.verified = id.apply(b) == b;
  info.witness = nlohmann::json{{"elements", nlohmann::json::array({id.to_json()})}};
  return info;
}

Vertex ThompsonV::random_full_support_vertex(std::mt19937_64& rng, int depth) const {
  int leaves = std::uniform_int_distribution<int>(1, 1 << std::min(depth, 3))(rng);
  auto cells = random_prefix_code(rng, "", leaves, depth);
  std::vector<ElementId> elems;
  for (const auto& cell : cells) {
    int spare = std::max(0, depth - static_cast<int>(cell.size()));
    int parts = std::uniform_int_distribution<int>(1, 1 << std::min(spare, 2))(rng);
    auto img = random_prefix_code(rng, cell, parts, spare);
    auto dom = random_prefix_code(rng, "", static_cast<int>(img.size()), 3);
    equalize_codes(dom, img);
    std::shuffle(img.begin(), img.end(), rng);
    std::vector<Row> rows;
    for (std::size_t i = 0; i < dom.size(); ++i) rows.push_back({dom[i], img[i]});
    elems.push_back(element(TableMap(std::move(rows))));
  }
  return make_vertex(std::move(elems));
}

std::optional<TableMap> ThompsonV::same_orbit(ElementId b1, ElementId b2) const {
  auto g = glue({{b1, b2}});
  if (!g) return std::nullopt;
  return as_v(*g).map();
}

}  // namespace expanse

#include <algorithm>
#include <bit>
#include <numeric>

#include "expanse/instances.hpp"
#include "expanse/io.hpp"

namespace expanse {

namespace {

const NVAction& as_nv(const PartialAction& a) {
  auto* p = dynamic_cast<const NVAction*>(&a);
  if (!p) throw std::invalid_argument("map does not belong to this nV instance");
  return *p;
}

std::string box_label(const Box& b) {
  std::string out = "(";
  for (std::size_t i = 0; i < b.size(); ++i) out += (i ? "," : "") + (b[i].empty() ? std::string("e") : b[i]);
  return out + ")";
}

// The cell of the cut along `axes` selected by the bits of `index`.
Box cut_cell(int dims, unsigned axes, unsigned index) {
  Box cell(dims);
  int bit = 0;
  for (int i = 0; i < dims; ++i)
    if (axes >> i & 1) cell[i] = (index >> bit++ & 1) ? "1" : "0";
  return cell;
}

void equalize_boxes(Support& a, Support& b) {
  while (a.size() != b.size()) {
    auto& s = a.size() < b.size() ? a : b;
    auto depth = [](const Box& x) {
      std::size_t d = 0;
      for (const auto& w : x) d += w.size();
      return d;
    };
    auto it = std::min_element(s.begin(), s.end(), [&](const Box& x, const Box& y) {
      return depth(x) < depth(y) || (depth(x) == depth(y) && x < y);
    });
    Box lo = *it, hi = *it;
    lo[0] += "0";
    hi[0] += "1";
    *it = lo;
    s.push_back(hi);
    std::sort(s.begin(), s.end());
  }
}

Support random_box_partition(std::mt19937_64& rng, int dims, int leaves, int max_depth) {
  Support parts{Box(dims)};
  for (int tries = 0; static_cast<int>(parts.size()) < leaves && tries < 64; ++tries) {
    std::size_t at = std::uniform_int_distribution<std::size_t>(0, parts.size() - 1)(rng);
    int axis = std::uniform_int_distribution<int>(0, dims - 1)(rng);
    if (static_cast<int>(parts[at][axis].size()) >= max_depth) continue;
    Box hi = parts[at];
    parts[at][axis] += "0";
    hi[axis] += "1";
    parts.push_back(hi);
  }
  std::sort(parts.begin(), parts.end());
  return parts;
}

}  // namespace

BrinNV::BrinNV(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("nV needs n >= 2");
}

std::optional<ElementId> NVAction::apply(ElementId b) const {
  if (!support_subset(set_.support(b), domain())) return std::nullopt;
  return set_.element(box_compose(map_, set_.table(b)));
}

Support NVAction::domain() const { return map_.domain(); }

Support NVAction::image_of(const Support& s) const {
  Support out;
  for (const auto& b : s)
    for (const auto& c : box_restrict(map_, {b}).image()) out.push_back(c);
  return out;
}

nlohmann::json NVAction::to_json() const { return boxmap_to_json(map_); }

ElementId BrinNV::element(const BoxMap& m) const {
  if (m.dims() != n_) throw std::invalid_argument("box map has the wrong number of coordinates");
  if (!boxes_partition_root(n_, m.domain()))
    throw std::invalid_argument("an nV element needs domain boxes that partition the whole space");
  BoxMap canon = box_canonical(m);
  std::string key;
  for (const auto& r : canon.rows()) {
    for (const auto& w : r.dom) key += w + ',';
    key += ':';
    for (const auto& w : r.img) key += w + ',';
    key += ';';
  }
  Support supp = canon.image();
  return store_.intern(std::move(key), std::move(canon), std::move(supp));
}

const ExpansionPoset& BrinNV::expansions(ElementId b) const {
  auto& entry = store_.get(b);
  {
    std::lock_guard<std::mutex> lock(store_.mutex());
    if (entry.poset) return *entry.poset;
  }
  const BoxMap& t = entry.payload;
  const unsigned corners = 1u << n_;
  auto poset = std::make_unique<ExpansionPoset>();
  for (unsigned axes = 0; axes < corners; ++axes) {
    std::vector<ElementId> elems;
    for (unsigned c = 0; c < (1u << std::popcount(axes)); ++c)
      elems.push_back(element(box_compose(t, BoxMap::prefix(Box(n_), cut_cell(n_, axes, c)))));
    poset->nodes.push_back(make_vertex(std::move(elems)));
  }
  poset->leq.assign(corners, std::vector<bool>(corners));
  for (unsigned a = 0; a < corners; ++a)
    for (unsigned c = 0; c < corners; ++c) poset->leq[a][c] = (a & ~c) == 0;
  std::lock_guard<std::mutex> lock(store_.mutex());
  if (!entry.poset) entry.poset = std::move(poset);
  return *entry.poset;
}

std::vector<ElementId> BrinNV::contractions(const Vertex& u) const {
  std::vector<ElementId> out;
  if (u.size() < 2 || !std::has_single_bit(u.size())) return out;
  const int j = std::countr_zero(u.size());
  if (j > n_) return out;
  for (unsigned axes = 0; axes < (1u << n_); ++axes) {
    if (std::popcount(axes) != j) continue;
    std::vector<std::size_t> perm(u.size());
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<BoxMap> pieces;
      for (std::size_t c = 0; c < u.size(); ++c)
        pieces.push_back(box_compose(table(u[perm[c]]), BoxMap::prefix(cut_cell(n_, axes, static_cast<unsigned>(c)), Box(n_))));
      ElementId glued = element(box_union(pieces));
      if (expansions(glued).nodes[axes] == u && std::find(out.begin(), out.end(), glued) == out.end())
        out.push_back(glued);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return out;
}

nlohmann::json BrinNV::element_json(ElementId b) const { return boxmap_to_json(table(b)); }

ElementId BrinNV::element_from_json(const nlohmann::json& j) const { return element(boxmap_from_json(j)); }

std::string BrinNV::element_label(ElementId b) const {
  std::string out = "[";
  const auto& rows = table(b).rows();
  for (std::size_t i = 0; i < rows.size(); ++i) out += (i ? " " : "") + box_label(rows[i].dom) + ">" + box_label(rows[i].img);
  return out + "]";
}

int BrinNV::orbit_class(ElementId b) const { return boxes_partition_root(n_, table(b).image()) ? 0 : 1; }

std::unique_ptr<PartialAction> BrinNV::glue(const std::vector<std::pair<ElementId, ElementId>>& pairs) const {
  std::vector<BoxMap> pieces;
  Support src, dst;
  for (const auto& [from, to] : pairs) {
    if (!supports_disjoint(src, support(from)) || !supports_disjoint(dst, support(to))) return nullptr;
    pieces.push_back(box_compose(table(to), box_inverse(table(from))));
    src.insert(src.end(), support(from).begin(), support(from).end());
    dst.insert(dst.end(), support(to).begin(), support(to).end());
  }
  Support rest_src = support_complement(src, Box(n_));
  Support rest_dst = support_complement(dst, Box(n_));
  if (rest_src.empty() != rest_dst.empty()) return nullptr;
  equalize_boxes(rest_src, rest_dst);
  for (std::size_t i = 0; i < rest_src.size(); ++i) pieces.push_back(BoxMap::prefix(rest_src[i], rest_dst[i]));
  BoxMap gamma = box_union(pieces);
  if (!boxes_partition_root(n_, gamma.domain())) return nullptr;
  return std::make_unique<NVAction>(*this, box_canonical(gamma));
}

std::unique_ptr<PartialAction> BrinNV::random_map(std::mt19937_64& rng, const Support& cover, bool full) const {
  int leaves = std::uniform_int_distribution<int>(1, 5)(rng);
  Support dom = random_box_partition(rng, n_, leaves, 2);
  Support img = random_box_partition(rng, n_, static_cast<int>(dom.size()), 2);
  equalize_boxes(dom, img);
  std::shuffle(img.begin(), img.end(), rng);
  std::vector<BoxRow> rows;
  for (std::size_t i = 0; i < dom.size(); ++i) rows.push_back({dom[i], img[i]});
  BoxMap m(n_, std::move(rows));
  if (!full) m = box_restrict(m, cover);
  return std::make_unique<NVAction>(*this, std::move(m));
}

std::unique_ptr<PartialAction> BrinNV::compose(const PartialAction& outer, const PartialAction& inner) const {
  return std::make_unique<NVAction>(*this, box_compose(as_nv(outer).map(), as_nv(inner).map()));
}

std::unique_ptr<PartialAction> BrinNV::identity_on(const Support& s) const {
  std::vector<BoxRow> rows;
  for (const auto& b : s) rows.push_back({b, b});
  return std::make_unique<NVAction>(*this, BoxMap(n_, std::move(rows)));
}

StabilizerInfo BrinNV::stabilizer(ElementId b) const {
  StabilizerInfo info;
  info.order = 1;
  info.isomorphism_type = "trivial";
  auto id = identity_on(support(b));
  info.verified = id->apply(b) == b;
  info.witness = nlohmann::json{{"elements", nlohmann::json::array({id->to_json()})}};
  return info;
}

}  // namespace expanse

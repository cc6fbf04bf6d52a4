#include "expanse/cantor.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <string_view>

namespace expanse {

bool is_binary_word(const Word& w) {
  return std::all_of(w.begin(), w.end(), [](char c) { return c == '0' || c == '1'; });
}

bool is_prefix(const Word& p, const Word& w) {
  return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
}

bool comparable(const Word& a, const Word& b) { return is_prefix(a, b) || is_prefix(b, a); }

bool box_contains(const Box& outer, const Box& inner) {
  if (outer.size() != inner.size()) return false;
  for (std::size_t i = 0; i < outer.size(); ++i)
    if (!is_prefix(outer[i], inner[i])) return false;
  return true;
}

bool boxes_disjoint(const Box& a, const Box& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!comparable(a[i], b[i])) return true;
  return false;
}

namespace {

// Index of a coordinate along which `t` is strictly finer than `b`; -1 if none.
int finer_axis(const Box& b, const Box& t) {
  for (std::size_t i = 0; i < b.size(); ++i)
    if (t[i].size() > b[i].size()) return static_cast<int>(i);
  return -1;
}

Box split(const Box& b, int axis, char bit) {
  Box out = b;
  out[axis].push_back(bit);
  return out;
}

}  // namespace

bool box_covered(const Box& b, const Support& by) {
  const Box* meeting = nullptr;
  for (const auto& t : by) {
    if (box_contains(t, b)) return true;
    if (!boxes_disjoint(t, b) && meeting == nullptr) meeting = &t;
  }
  if (meeting == nullptr) return false;
  int axis = finer_axis(b, *meeting);
  return box_covered(split(b, axis, '0'), by) && box_covered(split(b, axis, '1'), by);
}

bool support_subset(const Support& s, const Support& t) {
  return std::all_of(s.begin(), s.end(), [&](const Box& b) { return box_covered(b, t); });
}

bool supports_disjoint(const Support& s, const Support& t) {
  for (const auto& a : s)
    for (const auto& b : t)
      if (!boxes_disjoint(a, b)) return false;
  return true;
}

Support support_complement(const Support& s, const Box& within) {
  const Box* meeting = nullptr;
  for (const auto& t : s) {
    if (box_contains(t, within)) return {};
    if (!boxes_disjoint(t, within) && meeting == nullptr) meeting = &t;
  }
  if (meeting == nullptr) return {within};
  int axis = finer_axis(within, *meeting);
  Support out = support_complement(s, split(within, axis, '0'));
  Support right = support_complement(s, split(within, axis, '1'));
  out.insert(out.end(), right.begin(), right.end());
  return out;
}

std::string box_key(const Box& b) {
  std::string out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) out.push_back('|');
    out += b[i].empty() ? std::string(".") : b[i];
  }
  return out;
}

std::string support_key(const Support& s) {
  std::vector<std::string> keys;
  for (const auto& b : s) keys.push_back(box_key(b));
  std::sort(keys.begin(), keys.end());
  std::string out;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (i) out.push_back(';');
    out += keys[i];
  }
  return out;
}

bool boxes_partition_root(int dims, const std::vector<Box>& boxes) {
  for (std::size_t i = 0; i < boxes.size(); ++i)
    for (std::size_t j = i + 1; j < boxes.size(); ++j)
      if (!boxes_disjoint(boxes[i], boxes[j])) return false;
  return box_covered(Box(dims), boxes);
}

bool dom_partitions_root(const std::vector<Word>& prefixes) {
  std::size_t longest = 0;
  for (const auto& w : prefixes) longest = std::max(longest, w.size());
  if (longest < 60) {
    // Prefix-free words partition the root exactly when their cone measures sum to one.
    std::vector<Word> sorted = prefixes;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
      if (comparable(sorted[i], sorted[i + 1])) return false;
    std::uint64_t total = 0;
    for (const auto& w : sorted) total += std::uint64_t{1} << (longest - w.size());
    return total == std::uint64_t{1} << longest;
  }
  std::vector<Box> boxes;
  for (const auto& w : prefixes) boxes.push_back({w});
  return boxes_partition_root(1, boxes);
}

// ---------------------------------------------------------------- TableMap

namespace {

// In lexicographic order a prefix is followed by its extensions, so neighbours suffice.
void check_incomparable(std::vector<std::string_view> words, const char* side) {
  std::sort(words.begin(), words.end());
  for (std::size_t i = 0; i + 1 < words.size(); ++i)
    if (words[i + 1].substr(0, words[i].size()) == words[i])
      throw OverlapError(std::string(side) + " cones overlap: '" + std::string(words[i]) + "' and '" +
                             std::string(words[i + 1]) + "'",
                         {Word(words[i])}, {Word(words[i + 1])});
}

}  // namespace

std::vector<Row> reduce(std::vector<Row> rows) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(rows.begin(), rows.end());
    std::vector<bool> gone(rows.size(), false);
    std::vector<Row> merged;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const Row& r = rows[i];
      if (gone[i] || r.dom.empty() || r.dom.back() != '0' || r.img.empty() || r.img.back() != '0') continue;
      Word parent = r.dom.substr(0, r.dom.size() - 1);
      const Word sibling = parent + '1';
      auto it = std::lower_bound(rows.begin(), rows.end(), sibling,
                                 [](const Row& row, const Word& w) { return row.dom < w; });
      if (it == rows.end() || it->dom != sibling) continue;
      const std::size_t j = static_cast<std::size_t>(it - rows.begin());
      if (gone[j]) continue;
      Word mparent = r.img.substr(0, r.img.size() - 1);
      if (it->img != mparent + '1') continue;
      gone[i] = gone[j] = true;
      merged.push_back({parent, mparent});
      changed = true;
    }
    if (changed) {
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (!gone[i]) merged.push_back(rows[i]);
      rows = std::move(merged);
    }
  }
  return rows;
}

TableMap::TableMap(std::vector<Row> rows) {
  std::vector<std::string_view> doms, imgs;
  doms.reserve(rows.size());
  imgs.reserve(rows.size());
  for (const auto& r : rows) {
    if (!is_binary_word(r.dom) || !is_binary_word(r.img))
      throw std::invalid_argument("prefix is not a binary word: '" + r.dom + "' -> '" + r.img + "'");
    doms.push_back(r.dom);
    imgs.push_back(r.img);
  }
  check_incomparable(std::move(doms), "domain");
  check_incomparable(std::move(imgs), "image");
  rows_ = reduce(std::move(rows));
}

TableMap TableMap::prefix(Word dom, Word img) { return TableMap({{std::move(dom), std::move(img)}}); }

TableMap TableMap::identity() { return prefix("", ""); }

TableMap TableMap::identity_on(const std::vector<Word>& cones) {
  std::vector<Row> rows;
  for (const auto& c : cones) rows.push_back({c, c});
  return TableMap(std::move(rows));
}

std::optional<Word> TableMap::apply(const Word& u) const {
  for (const auto& r : rows_)
    if (is_prefix(r.dom, u)) return r.img + u.substr(r.dom.size());
  return std::nullopt;
}

std::vector<Word> TableMap::domain() const {
  std::vector<Word> out;
  for (const auto& r : rows_) out.push_back(r.dom);
  return out;
}

std::vector<Word> TableMap::image() const {
  std::vector<Word> out;
  for (const auto& r : rows_) out.push_back(r.img);
  std::sort(out.begin(), out.end());
  return out;
}

TableMap compose(const TableMap& s1, const TableMap& s2) {
  std::vector<Row> rows;
  for (const auto& r2 : s2.rows()) {
    for (const auto& r1 : s1.rows()) {
      if (is_prefix(r1.dom, r2.img)) {
        rows.push_back({r2.dom, r1.img + r2.img.substr(r1.dom.size())});
      } else if (is_prefix(r2.img, r1.dom)) {
        rows.push_back({r2.dom + r1.dom.substr(r2.img.size()), r1.img});
      }
    }
  }
  return TableMap(std::move(rows));
}

TableMap inverse(const TableMap& s) {
  std::vector<Row> rows;
  for (const auto& r : s.rows()) rows.push_back({r.img, r.dom});
  return TableMap(std::move(rows));
}

namespace {

std::vector<Word> outermost(std::vector<Word> cones) {
  std::sort(cones.begin(), cones.end());
  cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
  std::vector<Word> out;
  for (const auto& c : cones) {
    bool inside = std::any_of(cones.begin(), cones.end(),
                              [&](const Word& o) { return o.size() < c.size() && is_prefix(o, c); });
    if (!inside) out.push_back(c);
  }
  return out;
}

}  // namespace

TableMap restrict(const TableMap& s, const std::vector<Word>& cones) {
  std::vector<Row> rows;
  for (const auto& a : outermost(cones)) {
    for (const auto& r : s.rows()) {
      if (is_prefix(r.dom, a))
        rows.push_back({a, r.img + a.substr(r.dom.size())});
      else if (is_prefix(a, r.dom))
        rows.push_back(r);
    }
  }
  return TableMap(std::move(rows));
}

TableMap disjoint_union(const std::vector<TableMap>& parts) {
  std::vector<Row> rows;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      for (const auto& a : parts[i].rows()) {
        for (const auto& b : parts[j].rows()) {
          if (comparable(a.dom, b.dom))
            throw OverlapError("domains overlap: '" + a.dom + "' and '" + b.dom + "'", {a.dom}, {b.dom});
          if (comparable(a.img, b.img))
            throw OverlapError("images overlap: '" + a.img + "' and '" + b.img + "'", {a.img}, {b.img});
        }
      }
    }
    rows.insert(rows.end(), parts[i].rows().begin(), parts[i].rows().end());
  }
  return TableMap(std::move(rows));
}

bool equal_extensional(const TableMap& a, const TableMap& b) { return a.rows() == b.rows(); }

std::vector<Word> image_cones(const TableMap& t) { return t.image(); }

// ---------------------------------------------------------------- BoxMap

namespace {

void check_box_rows(int dims, const std::vector<BoxRow>& rows) {
  for (const auto& r : rows) {
    if (static_cast<int>(r.dom.size()) != dims || static_cast<int>(r.img.size()) != dims)
      throw std::invalid_argument("box has the wrong number of coordinates");
    for (int i = 0; i < dims; ++i)
      if (!is_binary_word(r.dom[i]) || !is_binary_word(r.img[i]))
        throw std::invalid_argument("box prefix is not a binary word");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = i + 1; j < rows.size(); ++j) {
      if (!boxes_disjoint(rows[i].dom, rows[j].dom))
        throw OverlapError("domain boxes overlap: " + box_key(rows[i].dom) + " and " + box_key(rows[j].dom),
                           rows[i].dom, rows[j].dom);
      if (!boxes_disjoint(rows[i].img, rows[j].img))
        throw OverlapError("image boxes overlap: " + box_key(rows[i].img) + " and " + box_key(rows[j].img),
                           rows[i].img, rows[j].img);
    }
  }
}

}  // namespace

std::vector<BoxRow> box_reduce(int dims, std::vector<BoxRow> rows) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(rows.begin(), rows.end());
    for (int axis = 0; axis < dims && !changed; ++axis) {
      std::map<Box, std::size_t> by_dom;
      for (std::size_t i = 0; i < rows.size(); ++i) by_dom[rows[i].dom] = i;
      std::vector<bool> gone(rows.size(), false);
      std::vector<BoxRow> merged;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const BoxRow& r = rows[i];
        const Word& d = r.dom[axis];
        const Word& m = r.img[axis];
        if (gone[i] || d.empty() || d.back() != '0' || m.empty() || m.back() != '0') continue;
        Box sib = r.dom;
        sib[axis].back() = '1';
        auto it = by_dom.find(sib);
        if (it == by_dom.end() || gone[it->second]) continue;
        Box want = r.img;
        want[axis].back() = '1';
        if (rows[it->second].img != want) continue;
        BoxRow parent = r;
        parent.dom[axis].pop_back();
        parent.img[axis].pop_back();
        gone[i] = gone[it->second] = true;
        merged.push_back(std::move(parent));
        changed = true;
      }
      if (changed) {
        for (std::size_t i = 0; i < rows.size(); ++i)
          if (!gone[i]) merged.push_back(rows[i]);
        rows = std::move(merged);
      }
    }
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

BoxMap::BoxMap(int dims, std::vector<BoxRow> rows) : dims_(dims) {
  check_box_rows(dims, rows);
  rows_ = box_reduce(dims, std::move(rows));
}

BoxMap BoxMap::prefix(Box dom, Box img) {
  int dims = static_cast<int>(dom.size());
  return BoxMap(dims, {{std::move(dom), std::move(img)}});
}

BoxMap BoxMap::identity(int dims) { return BoxMap(dims, {{Box(dims), Box(dims)}}); }

std::optional<Box> BoxMap::apply(const Box& point) const {
  for (const auto& r : rows_) {
    if (box_contains(r.dom, point)) {
      Box out(dims_);
      for (int i = 0; i < dims_; ++i) out[i] = r.img[i] + point[i].substr(r.dom[i].size());
      return out;
    }
  }
  return std::nullopt;
}

std::vector<Box> BoxMap::domain() const {
  std::vector<Box> out;
  for (const auto& r : rows_) out.push_back(r.dom);
  return out;
}

std::vector<Box> BoxMap::image() const {
  std::vector<Box> out;
  for (const auto& r : rows_) out.push_back(r.img);
  std::sort(out.begin(), out.end());
  return out;
}

BoxMap box_compose(const BoxMap& s1, const BoxMap& s2) {
  int dims = std::max(s1.dims(), s2.dims());
  std::vector<BoxRow> rows;
  for (const auto& r2 : s2.rows()) {
    for (const auto& r1 : s1.rows()) {
      BoxRow out{Box(dims), Box(dims)};
      bool meets = true;
      for (int i = 0; i < dims && meets; ++i) {
        if (is_prefix(r1.dom[i], r2.img[i])) {
          out.dom[i] = r2.dom[i];
          out.img[i] = r1.img[i] + r2.img[i].substr(r1.dom[i].size());
        } else if (is_prefix(r2.img[i], r1.dom[i])) {
          out.dom[i] = r2.dom[i] + r1.dom[i].substr(r2.img[i].size());
          out.img[i] = r1.img[i];
        } else {
          meets = false;
        }
      }
      if (meets) rows.push_back(std::move(out));
    }
  }
  return BoxMap(dims, std::move(rows));
}

BoxMap box_inverse(const BoxMap& s) {
  std::vector<BoxRow> rows;
  for (const auto& r : s.rows()) rows.push_back({r.img, r.dom});
  return BoxMap(s.dims(), std::move(rows));
}

BoxMap box_restrict(const BoxMap& s, const std::vector<Box>& boxes) {
  std::vector<BoxRow> rows;
  for (const auto& a : boxes) {
    for (const auto& r : s.rows()) {
      BoxRow out{Box(s.dims()), Box(s.dims())};
      bool meets = true;
      for (int i = 0; i < s.dims() && meets; ++i) {
        if (is_prefix(r.dom[i], a[i])) {
          out.dom[i] = a[i];
          out.img[i] = r.img[i] + a[i].substr(r.dom[i].size());
        } else if (is_prefix(a[i], r.dom[i])) {
          out.dom[i] = r.dom[i];
          out.img[i] = r.img[i];
        } else {
          meets = false;
        }
      }
      if (meets) rows.push_back(std::move(out));
    }
  }
  return BoxMap(s.dims(), std::move(rows));
}

BoxMap box_union(const std::vector<BoxMap>& parts) {
  if (parts.empty()) return {};
  int dims = parts.front().dims();
  std::vector<BoxRow> rows;
  for (const auto& p : parts) rows.insert(rows.end(), p.rows().begin(), p.rows().end());
  return BoxMap(dims, std::move(rows));
}

BoxMap box_canonical(const BoxMap& s) {
  const int n = s.dims();
  std::size_t depth = 0;
  for (const auto& r : s.rows())
    for (const auto& w : r.dom) depth = std::max(depth, w.size());

  std::vector<BoxRow> rows;
  std::vector<BoxRow> work(s.rows().begin(), s.rows().end());
  while (!work.empty()) {
    BoxRow r = std::move(work.back());
    work.pop_back();
    int axis = -1;
    for (int i = 0; i < n; ++i)
      if (r.dom[i].size() < depth) {
        axis = i;
        break;
      }
    if (axis < 0) {
      rows.push_back(std::move(r));
      continue;
    }
    for (char bit : {'0', '1'}) {
      BoxRow child = r;
      child.dom[axis].push_back(bit);
      child.img[axis].push_back(bit);
      work.push_back(std::move(child));
    }
  }

  const std::size_t group = std::size_t{1} << n;
  while (depth > 0) {
    std::map<Box, std::vector<const BoxRow*>> parents;
    for (const auto& r : rows) {
      Box p = r.dom;
      for (auto& w : p) w.pop_back();
      parents[p].push_back(&r);
    }
    std::vector<BoxRow> coarse;
    bool ok = true;
    for (const auto& [p, kids] : parents) {
      if (kids.size() != group) {
        ok = false;
        break;
      }
      Box q = kids.front()->img;
      for (auto& w : q) {
        if (w.empty()) ok = false;
        else w.pop_back();
      }
      for (const BoxRow* k : kids) {
        for (int i = 0; i < n && ok; ++i) {
          const Word& m = k->img[i];
          if (m.empty() || m.back() != k->dom[i].back() || m.substr(0, m.size() - 1) != q[i]) ok = false;
        }
      }
      if (!ok) break;
      coarse.push_back({p, q});
    }
    if (!ok) break;
    rows = std::move(coarse);
    --depth;
  }
  return BoxMap(n, box_reduce(n, std::move(rows)));
}

bool box_equal(const BoxMap& a, const BoxMap& b) { return box_canonical(a) == box_canonical(b); }

}  // namespace expanse

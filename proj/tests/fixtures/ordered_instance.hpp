#pragma once

// Interval-supported toy expansion sets for the linear and cyclic bounds.
// Elements are V elements whose table preserves the (cyclic) order of cones
// and whose image is a (cyclic) interval. Ids are shared with the wrapped V.

#include <algorithm>
#include <stdexcept>

#include "expanse/instances.hpp"

namespace expanse::fixtures {

class OrderedInstance : public ExpansionSet {
 public:
  explicit OrderedInstance(Kind kind) : kind_(kind) {
    if (kind == Kind::permutational) throw std::invalid_argument("ordered instances are linear or cyclic");
  }

  std::string id() const override { return kind_ == Kind::linear ? "toy-linear" : "toy-cyclic"; }
  Kind kind() const override { return kind_; }
  int c0() const override { return 2; }
  int c1() const override { return 2; }

  const Support& support(ElementId b) const override { return v_.support(b); }
  const std::string& order_key(ElementId b) const override { return v_.order_key(b); }
  const ExpansionPoset& expansions(ElementId b) const override { return v_.expansions(b); }

  std::vector<ElementId> contractions(const Vertex& u) const override {
    std::vector<ElementId> out;
    for (ElementId c : v_.contractions(u))
      if (admissible(v_.table(c))) out.push_back(c);
    return out;
  }

  nlohmann::json element_json(ElementId b) const override { return v_.element_json(b); }
  ElementId element_from_json(const nlohmann::json& j) const override {
    ElementId b = v_.element_from_json(j);
    if (!admissible(v_.table(b))) throw std::invalid_argument("table is not order preserving onto an interval");
    return b;
  }
  std::string element_label(ElementId b) const override { return v_.element_label(b); }

  ElementId root() const override { return v_.root(); }
  ElementId atom(const Box& cell) const override { return v_.atom(cell); }
  bool is_atom(ElementId b) const override { return v_.is_atom(b); }

  int orbit_count() const override { return 1; }
  int orbit_class(ElementId) const override { return 0; }
  std::unique_ptr<PartialAction> glue(const std::vector<std::pair<ElementId, ElementId>>&) const override {
    return nullptr;
  }
  std::unique_ptr<PartialAction> random_map(std::mt19937_64&, const Support& cover, bool full) const override {
    return v_.identity_on(full ? Support{Box{""}} : cover);
  }
  std::unique_ptr<PartialAction> compose(const PartialAction& outer, const PartialAction& inner) const override {
    return v_.compose(outer, inner);
  }
  std::unique_ptr<PartialAction> identity_on(const Support& s) const override { return v_.identity_on(s); }
  StabilizerInfo stabilizer(ElementId b) const override { return v_.stabilizer(b); }

  // Image cones in domain order must be a rotation (cyclic) or the identity
  // (linear) of their left-to-right order, and cover a (cyclic) interval.
  bool admissible(const TableMap& t) const {
    std::vector<Word> img;
    for (const auto& r : t.rows()) img.push_back(r.img);
    std::vector<Word> sorted = img;
    std::sort(sorted.begin(), sorted.end());
    auto it = std::find(img.begin(), img.end(), sorted.front());
    std::vector<Word> rotated(it, img.end());
    rotated.insert(rotated.end(), img.begin(), it);
    if (rotated != sorted) return false;
    if (kind_ == Kind::linear && it != img.begin()) return false;
    // Gaps between consecutive cones, cyclically; at most one for cyclic, and
    // for linear the only gap must be the wrap-around.
    int gaps = 0;
    bool wrap_gap = false;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      const Word& a = sorted[i];
      const Word& b = sorted[(i + 1) % sorted.size()];
      bool last = i + 1 == sorted.size();
      bool touching = last ? is_last(a) && is_first(b) : successor(a) == b.substr(0, successor(a).size()) &&
                                                           is_first(b.substr(successor(a).size()));
      if (!touching) {
        ++gaps;
        if (last) wrap_gap = true;
      }
    }
    if (kind_ == Kind::linear) return gaps == 0 || (gaps == 1 && wrap_gap);
    return gaps <= 1;
  }

 private:
  static bool is_first(const Word& w) { return w.find('1') == Word::npos; }
  static bool is_last(const Word& w) { return w.find('0') == Word::npos; }
  // The shortest word whose cone starts where the cone of w ends.
  static Word successor(const Word& w) {
    Word s = w;
    while (!s.empty() && s.back() == '1') s.pop_back();
    if (s.empty()) return "#";
    s.back() = '1';
    return s;
  }

  Kind kind_;
  ThompsonV v_;
};

}  // namespace expanse::fixtures

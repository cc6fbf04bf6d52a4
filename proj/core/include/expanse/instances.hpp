#pragma once

#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "expanse/cantor.hpp"
#include "expanse/expansion.hpp"
#include "expanse/grigorchuk.hpp"

namespace expanse {

// ---------------------------------------------------------------- Thompson's V

class ThompsonV;

class VAction : public PartialAction {
 public:
  VAction(const ThompsonV& set, TableMap map) : set_(set), map_(std::move(map)) {}
  std::optional<ElementId> apply(ElementId b) const override;
  Support domain() const override;
  Support image_of(const Support& s) const override;
  nlohmann::json to_json() const override;
  const TableMap& map() const { return map_; }

 private:
  const ThompsonV& set_;
  TableMap map_;
};

// Elements are the classes [f, X] of partial bijections whose domain is all of X.
class ThompsonV : public ExpansionSet {
 public:
  std::string id() const override { return "v"; }
  Kind kind() const override { return Kind::permutational; }
  int c0() const override { return 2; }
  int c1() const override { return 2; }

  ElementId element(const TableMap& t) const;
  const TableMap& table(ElementId b) const { return store_.get(b).payload; }

  const Support& support(ElementId b) const override { return store_.get(b).support; }
  const std::string& order_key(ElementId b) const override { return store_.get(b).order_key; }
  const ExpansionPoset& expansions(ElementId b) const override;
  std::vector<ElementId> contractions(const Vertex& u) const override;

  nlohmann::json element_json(ElementId b) const override;
  ElementId element_from_json(const nlohmann::json& j) const override;
  std::string element_label(ElementId b) const override;

  ElementId root() const override { return element(TableMap::identity()); }
  ElementId atom(const Box& cell) const override { return element(TableMap::prefix("", cell.at(0))); }
  bool is_atom(ElementId b) const override { return table(b).rows().size() == 1; }

  int orbit_count() const override { return 2; }
  int orbit_class(ElementId b) const override;
  std::unique_ptr<PartialAction> glue(const std::vector<std::pair<ElementId, ElementId>>& pairs) const override;
  std::unique_ptr<PartialAction> random_map(std::mt19937_64& rng, const Support& cover, bool full) const override;
  std::unique_ptr<PartialAction> compose(const PartialAction& outer, const PartialAction& inner) const override;
  std::unique_ptr<PartialAction> identity_on(const Support& s) const override;
  StabilizerInfo stabilizer(ElementId b) const override;

  Vertex random_full_support_vertex(std::mt19937_64& rng, int depth) const override;

  // A full-support map sending b1 to b2, when the two lie in one orbit.
  std::optional<TableMap> same_orbit(ElementId b1, ElementId b2) const;

 private:
  mutable Interner<TableMap> store_;
};

// ---------------------------------------------------------------- Brin-Thompson nV

class BrinNV;

class NVAction : public PartialAction {
 public:
  NVAction(const BrinNV& set, BoxMap map) : set_(set), map_(std::move(map)) {}
  std::optional<ElementId> apply(ElementId b) const override;
  Support domain() const override;
  Support image_of(const Support& s) const override;
  nlohmann::json to_json() const override;
  const BoxMap& map() const { return map_; }

 private:
  const BrinNV& set_;
  BoxMap map_;
};

class BrinNV : public ExpansionSet {
 public:
  explicit BrinNV(int n);

  std::string id() const override { return std::to_string(n_) + "v"; }
  Kind kind() const override { return Kind::permutational; }
  int c0() const override { return 1 << n_; }
  int c1() const override { return 2; }
  int dims() const override { return n_; }

  ElementId element(const BoxMap& m) const;
  const BoxMap& table(ElementId b) const { return store_.get(b).payload; }

  const Support& support(ElementId b) const override { return store_.get(b).support; }
  const std::string& order_key(ElementId b) const override { return store_.get(b).order_key; }
  // Node index is the bitmask of coordinates that are cut.
  const ExpansionPoset& expansions(ElementId b) const override;
  std::vector<ElementId> contractions(const Vertex& u) const override;

  nlohmann::json element_json(ElementId b) const override;
  ElementId element_from_json(const nlohmann::json& j) const override;
  std::string element_label(ElementId b) const override;

  ElementId root() const override { return element(BoxMap::identity(n_)); }
  ElementId atom(const Box& cell) const override { return element(BoxMap::prefix(Box(n_, ""), cell)); }
  bool is_atom(ElementId b) const override { return table(b).rows().size() == 1; }

  int orbit_count() const override { return 2; }
  int orbit_class(ElementId b) const override;
  std::unique_ptr<PartialAction> glue(const std::vector<std::pair<ElementId, ElementId>>& pairs) const override;
  std::unique_ptr<PartialAction> random_map(std::mt19937_64& rng, const Support& cover, bool full) const override;
  std::unique_ptr<PartialAction> compose(const PartialAction& outer, const PartialAction& inner) const override;
  std::unique_ptr<PartialAction> identity_on(const Support& s) const override;
  StabilizerInfo stabilizer(ElementId b) const override;

 private:
  int n_;
  mutable Interner<BoxMap> store_;
};

// ---------------------------------------------------------------- Roever-Nekrashevych

// On the cone dom, x = dom t is sent to img decoration(t).
struct RoverRow {
  Word dom;
  Word img;
  grig::GrigWord decoration;
  auto operator<=>(const RoverRow&) const = default;
};

using RoverTable = std::vector<RoverRow>;

// s1 after s2 on the part of the domain of s2 that s2 sends into the domain of s1.
RoverTable rover_compose(const RoverTable& s1, const RoverTable& s2);
RoverTable rover_inverse(const RoverTable& s);
RoverTable rover_identity_on(const std::vector<Word>& cones);
// Decorations pushed into the nucleus, then sibling rows merged; a normal form of the map.
RoverTable rover_normal_form(RoverTable s, std::size_t depth_budget = 64);
// Precompose with an element of K acting on the whole space.
RoverTable rover_twist(const RoverTable& g, grig::KElement k);
std::optional<Word> rover_apply(const RoverTable& s, const Word& x);

class Rover;

class RoverAction : public PartialAction {
 public:
  RoverAction(const Rover& set, RoverTable map) : set_(set), map_(std::move(map)) {}
  std::optional<ElementId> apply(ElementId b) const override;
  Support domain() const override;
  Support image_of(const Support& s) const override;
  nlohmann::json to_json() const override;
  const RoverTable& map() const { return map_; }

 private:
  const Rover& set_;
  RoverTable map_;
};

class Rover : public ExpansionSet {
 public:
  // Which half carries the a-twist in the two-element twisted vertex.
  enum class Twist { left, right };
  explicit Rover(Twist twist = Twist::left) : twist_(twist) {}

  std::string id() const override { return "rover"; }
  Kind kind() const override { return Kind::permutational; }
  int c0() const override { return 3; }
  int c1() const override { return 2; }
  Twist twist() const { return twist_; }

  // The K-normalized representative of the class of g; g must have domain X.
  ElementId element(const RoverTable& g) const;
  const RoverTable& table(ElementId b) const { return store_.get(b).payload; }
  // True when g and h represent the same element.
  static bool same_class(const RoverTable& g, const RoverTable& h);

  const Support& support(ElementId b) const override { return store_.get(b).support; }
  const std::string& order_key(ElementId b) const override { return store_.get(b).order_key; }
  // Nodes: {b}, untwisted halves, twisted halves, the three-element vertex.
  const ExpansionPoset& expansions(ElementId b) const override;
  std::vector<ElementId> contractions(const Vertex& u) const override;

  nlohmann::json element_json(ElementId b) const override;
  ElementId element_from_json(const nlohmann::json& j) const override;
  std::string element_label(ElementId b) const override;

  ElementId root() const override { return element(rover_identity_on({""})); }
  ElementId atom(const Box& cell) const override { return element({RoverRow{"", cell.at(0), ""}}); }
  bool is_atom(ElementId b) const override;

  int orbit_count() const override { return 2; }
  int orbit_class(ElementId b) const override;
  std::unique_ptr<PartialAction> glue(const std::vector<std::pair<ElementId, ElementId>>& pairs) const override;
  std::unique_ptr<PartialAction> random_map(std::mt19937_64& rng, const Support& cover, bool full) const override;
  std::unique_ptr<PartialAction> compose(const PartialAction& outer, const PartialAction& inner) const override;
  std::unique_ptr<PartialAction> identity_on(const Support& s) const override;
  StabilizerInfo stabilizer(ElementId b) const override;

 private:
  RoverTable restricted(ElementId b, const Word& cone, bool twisted) const;

  Twist twist_;
  mutable Interner<RoverTable> store_;
};

nlohmann::json rover_table_to_json(const RoverTable& t);
// Accepts row objects {"dom","img","decoration"} and plain [dom, img] pairs.
RoverTable rover_table_from_json(const nlohmann::json& j);

// ---------------------------------------------------------------- factory and diagrams

// "v", "2v", "3v" or "rover".
std::unique_ptr<ExpansionSet> make_instance(const std::string& name);

// Domain and range trees with matching leaf numbers.
std::string tree_pair_dot(const TableMap& t);
// Hasse diagram of expansions(b).
std::string poset_dot(const ExpansionSet& set, ElementId b);

// Helpers shared by the instances.
std::vector<Word> random_prefix_code(std::mt19937_64& rng, const Word& under, int leaves, int max_depth);
// Split the shallowest cones of the shorter code until both have the same size.
void equalize_codes(std::vector<Word>& a, std::vector<Word>& b);
std::vector<Word> box_words(const Support& s);
Support word_boxes(const std::vector<Word>& words);

}  // namespace expanse

#pragma once

#include <cstdint>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "expanse/cantor.hpp"
#include "expanse/topology.hpp"

namespace expanse {

using ElementId = std::uint32_t;
// Elements sorted by the least box of their supports.
using Vertex = std::vector<ElementId>;

enum class Kind { linear, cyclic, permutational };
std::string to_string(Kind k);

struct NotAChainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotComparable : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct NotAPartition : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct DifferentGround : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct TooSmall : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct OracleIncomplete : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InfinitePosetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The finite poset of expansions of one element. nodes[0] is {b}.
struct ExpansionPoset {
  std::vector<Vertex> nodes;
  std::vector<std::vector<bool>> leq;
  int find(const Vertex& v) const;
  std::size_t max_height() const;
};

// A partial bijection of the underlying space acting on elements.
class PartialAction {
 public:
  virtual ~PartialAction() = default;
  // Absent when the support of b is not inside the domain.
  virtual std::optional<ElementId> apply(ElementId b) const = 0;
  virtual Support domain() const = 0;
  virtual Support image_of(const Support& s) const = 0;
  virtual nlohmann::json to_json() const = 0;
};

struct StabilizerInfo {
  std::size_t order = 0;
  std::string isomorphism_type;
  bool verified = false;
  nlohmann::json witness;
};

class ExpansionSet {
 public:
  virtual ~ExpansionSet() = default;

  virtual std::string id() const = 0;
  virtual Kind kind() const = 0;
  virtual int c0() const = 0;
  virtual int c1() const = 0;
  virtual int dims() const { return 1; }
  virtual bool contraction_oracle_complete() const { return true; }

  virtual const Support& support(ElementId b) const = 0;
  virtual const std::string& order_key(ElementId b) const = 0;
  virtual const ExpansionPoset& expansions(ElementId b) const = 0;
  // Every b' such that some node of expansions(b') equals u.
  virtual std::vector<ElementId> contractions(const Vertex& u) const = 0;

  virtual nlohmann::json element_json(ElementId b) const = 0;
  virtual ElementId element_from_json(const nlohmann::json& j) const = 0;
  virtual std::string element_label(ElementId b) const = 0;

  // The class of the identity on the whole space, and untwisted elements on one cell.
  virtual ElementId root() const = 0;
  virtual ElementId atom(const Box& cell) const = 0;
  virtual bool is_atom(ElementId b) const = 0;

  virtual int orbit_count() const = 0;
  virtual int orbit_class(ElementId b) const = 0;
  // A full-support map sending each first element to its partner; null if none exists.
  virtual std::unique_ptr<PartialAction> glue(const std::vector<std::pair<ElementId, ElementId>>& pairs) const = 0;
  virtual std::unique_ptr<PartialAction> random_map(std::mt19937_64& rng, const Support& cover, bool full) const = 0;
  virtual std::unique_ptr<PartialAction> compose(const PartialAction& outer, const PartialAction& inner) const = 0;
  virtual std::unique_ptr<PartialAction> identity_on(const Support& s) const = 0;
  virtual StabilizerInfo stabilizer(ElementId b) const = 0;

  virtual Vertex random_full_support_vertex(std::mt19937_64& rng, int depth) const;

  Vertex make_vertex(std::vector<ElementId> elements) const;
  Support vertex_support(const Vertex& v) const;
  nlohmann::json vertex_json(const Vertex& v) const;
  Vertex vertex_from_json(const nlohmann::json& j) const;
  std::string vertex_label(const Vertex& v) const;
};

// Canonical store shared by the concrete instances: one id per canonical key.
template <class Payload>
class Interner {
 public:
  struct Entry {
    Payload payload;
    Support support;
    std::string key;
    std::string order_key;
    std::unique_ptr<ExpansionPoset> poset;
  };

  ElementId intern(std::string key, Payload payload, Support support) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    ElementId id = static_cast<ElementId>(entries_.size());
    std::string least;
    for (const auto& b : support) {
      std::string k = box_key(b);
      if (least.empty() || k < least) least = std::move(k);
    }
    entries_.push_back(Entry{std::move(payload), std::move(support), key, std::move(least), nullptr});
    index_.emplace(std::move(key), id);
    return id;
  }

  std::optional<ElementId> find(const std::string& key) const {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Entry& get(ElementId id) const {
    std::lock_guard<std::mutex> lock(mutex_);
    return entries_.at(id);
  }

  std::mutex& mutex() const { return mutex_; }

 private:
  mutable std::mutex mutex_;
  mutable std::deque<Entry> entries_;
  std::unordered_map<std::string, ElementId> index_;
};

// ---------------------------------------------------------------- vertices and simplices

Vertex restriction(const ExpansionSet& set, ElementId b, const Vertex& v);
Support induced_partition_support(const ExpansionSet& set, const Vertex& v);
std::vector<Support> induced_partition(const ExpansionSet& set, const Vertex& v);
bool refines(const ExpansionSet& set, const Vertex& finer, const Vertex& coarser);
std::vector<Vertex> canonical_order(const ExpansionSet& set, std::vector<Vertex> s);
bool is_simplex(const ExpansionSet& set, const std::vector<Vertex>& s);

struct AxiomReport {
  bool ok = true;
  std::string failure;
};
AxiomReport check_expansion_axioms(const ExpansionSet& set, ElementId b);

// ---------------------------------------------------------------- ascending side

struct AscendingStar {
  Vertex base;
  std::vector<Vertex> vertices;            // vertices[0] == base
  std::vector<std::vector<int>> coords;    // p(w): node index in expansions(b_i)
  std::vector<std::vector<bool>> leq;      // product order
  Complex complex;
};

struct AscendingLink {
  AscendingStar star;
  Complex link;       // the star with the base removed
  Complex join_form;  // the abstract join of the per-element links
};

AscendingStar ascending_star(const ExpansionSet& set, const Vertex& v);
AscendingLink ascending_link(const ExpansionSet& set, const Vertex& v);

using ExpansionSequence = std::vector<Vertex>;
// Budget bounds the number of search steps; BudgetExceeded is distinct from "no".
std::optional<ExpansionSequence> expansion_leq(const ExpansionSet& set, const Vertex& v1, const Vertex& v2,
                                               std::size_t budget = 100000);
bool sequence_valid(const ExpansionSet& set, const ExpansionSequence& seq);
// The per-element pieces r_{b_i}(w_j) of a sequence starting at v, and the reverse merge.
std::vector<ExpansionSequence> split_sequence(const ExpansionSet& set, const ExpansionSequence& seq);
ExpansionSequence merge_sequences(const ExpansionSet& set, const std::vector<ExpansionSequence>& parts);

AscendingLink relative_ascending_link(const ExpansionSet& set, const Vertex& v, const Vertex& top,
                                      std::size_t budget = 100000);

// ---------------------------------------------------------------- descending side

struct Production {
  std::uint64_t mask;  // positions in the top vertex
  ElementId element;
};

struct LowerVertex {
  Vertex vertex;
  std::vector<Production> productions;  // nontrivial ones, sorted by mask
};

struct DescendingLink {
  Vertex top;
  std::vector<LowerVertex> vertices;
  Complex complex;
};

DescendingLink descending_link(const ExpansionSet& set, const Vertex& v);
bool lower_leq(const ExpansionSet& set, const LowerVertex& a, const LowerVertex& b);

struct Partition {
  std::vector<std::vector<int>> blocks;
  bool operator==(const Partition&) const = default;
};

void validate_partition(const Partition& p, int k);
Partition normalize(Partition p);
Partition partition_meet(const Partition& p1, const Partition& p2);
bool lower_in_partition(const LowerVertex& u, const Partition& p);
DescendingLink partitioned_descending_link(const ExpansionSet& set, const DescendingLink& full, const Partition& p);

struct StandardPartition {
  Partition partition;
  std::vector<int> principal;  // 0-based positions
  int initial = 0;             // 0-based initial symbol
};

std::vector<StandardPartition> standard_cover(int k, int c0, int c1, Kind kind);

// ---------------------------------------------------------------- filtration

struct Slice {
  std::vector<Vertex> vertices;
  Complex complex;
  int height_bound = 0;
  int radius = 0;
};

// Vertices of height at most n reachable from the seeds by at most `radius` edges.
Slice filtration_slice(const ExpansionSet& set, const std::vector<Vertex>& seeds, int n, int radius,
                       std::size_t vertex_budget = 200000);

}  // namespace expanse

#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace expanse {

// A finite binary word; the empty string is the root word.
using Word = std::string;

// A product of cones, one prefix per coordinate. One coordinate for X, n for X^n.
using Box = std::vector<Word>;

// A finite union of pairwise-disjoint boxes.
using Support = std::vector<Box>;

bool is_binary_word(const Word& w);
bool is_prefix(const Word& p, const Word& w);
bool comparable(const Word& a, const Word& b);

bool box_contains(const Box& outer, const Box& inner);
bool boxes_disjoint(const Box& a, const Box& b);
bool box_covered(const Box& b, const Support& by);
bool support_subset(const Support& s, const Support& t);
bool supports_disjoint(const Support& s, const Support& t);
// Boxes of `within` not met by `s`, as a disjoint union of boxes.
Support support_complement(const Support& s, const Box& within);
std::string box_key(const Box& b);
std::string support_key(const Support& s);

class OverlapError : public std::invalid_argument {
 public:
  OverlapError(const std::string& what, Box first, Box second)
      : std::invalid_argument(what), first(std::move(first)), second(std::move(second)) {}
  Box first;
  Box second;
};

struct Row {
  Word dom;
  Word img;
  auto operator<=>(const Row&) const = default;
};

// Partial bijection of the Cantor set given by prefix-replacement rows.
// Rows are kept reduced and sorted by domain prefix; the empty table is zero.
class TableMap {
 public:
  TableMap() = default;
  explicit TableMap(std::vector<Row> rows);

  static TableMap prefix(Word dom, Word img);
  static TableMap identity();
  static TableMap identity_on(const std::vector<Word>& cones);

  const std::vector<Row>& rows() const { return rows_; }
  bool is_zero() const { return rows_.empty(); }
  std::optional<Word> apply(const Word& u) const;

  std::vector<Word> domain() const;
  std::vector<Word> image() const;

  bool operator==(const TableMap&) const = default;

 private:
  std::vector<Row> rows_;
};

// s1 after s2, defined where s2 lands in the domain of s1.
TableMap compose(const TableMap& s1, const TableMap& s2);
TableMap inverse(const TableMap& s);
TableMap restrict(const TableMap& s, const std::vector<Word>& cones);
TableMap disjoint_union(const std::vector<TableMap>& parts);
std::vector<Row> reduce(std::vector<Row> rows);
bool equal_extensional(const TableMap& a, const TableMap& b);
std::vector<Word> image_cones(const TableMap& t);
// Dom prefixes form a complete prefix code, i.e. the domain is all of X.
bool dom_partitions_root(const std::vector<Word>& prefixes);

struct BoxRow {
  Box dom;
  Box img;
  auto operator<=>(const BoxRow&) const = default;
};

// The coordinate-wise analogue of TableMap on X^n.
class BoxMap {
 public:
  BoxMap() = default;
  BoxMap(int dims, std::vector<BoxRow> rows);

  static BoxMap prefix(Box dom, Box img);
  static BoxMap identity(int dims);

  int dims() const { return dims_; }
  const std::vector<BoxRow>& rows() const { return rows_; }
  bool is_zero() const { return rows_.empty(); }
  std::optional<Box> apply(const Box& point) const;
  std::vector<Box> domain() const;
  std::vector<Box> image() const;

  bool operator==(const BoxMap&) const = default;

 private:
  int dims_ = 0;
  std::vector<BoxRow> rows_;
};

BoxMap box_compose(const BoxMap& s1, const BoxMap& s2);
BoxMap box_inverse(const BoxMap& s);
BoxMap box_restrict(const BoxMap& s, const std::vector<Box>& boxes);
BoxMap box_union(const std::vector<BoxMap>& parts);
std::vector<BoxRow> box_reduce(int dims, std::vector<BoxRow> rows);
// Unique representative of the function: coarsest uniform refinement, then greedy merges.
BoxMap box_canonical(const BoxMap& s);
bool box_equal(const BoxMap& a, const BoxMap& b);
bool boxes_partition_root(int dims, const std::vector<Box>& boxes);

}  // namespace expanse

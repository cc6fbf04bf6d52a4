#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace expanse {

using Simplex = std::vector<int>;

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// 2'000'000 unless EXPANSE_BUDGET is set.
std::size_t default_simplex_budget();

// A finite abstract simplicial complex, stored face-closed by dimension.
class Complex {
 public:
  Complex();
  explicit Complex(std::vector<std::string> labels, std::size_t budget = default_simplex_budget());

  int add_vertex(std::string label);
  // Adds s and all of its faces; vertices of s must already exist.
  void add_simplex(Simplex s);
  // Adds the faces of s of dimension at most max_dim.
  void add_simplex_skeleton(const Simplex& s, int max_dim);

  int vertex_count() const { return static_cast<int>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  bool empty() const { return labels_.empty(); }
  bool contains(const Simplex& s) const;
  int dimension() const;
  std::size_t simplex_count() const { return count_; }
  const std::set<Simplex>& simplices(int dim) const;
  std::vector<Simplex> maximal_simplices() const;
  long euler_characteristic() const;
  std::size_t budget() const { return budget_; }

  // Full subcomplex on `keep`, re-indexed in the order given.
  Complex induced(const std::vector<int>& keep) const;
  Complex skeleton(int dim) const;

  bool operator==(const Complex& other) const;

 private:
  void insert(Simplex s);

  std::vector<std::string> labels_;
  std::vector<std::set<Simplex>> by_dim_;
  std::size_t budget_;
  std::size_t count_ = 0;
};

struct CollapseResult {
  bool collapsible = false;
  // Elementary collapses (free face, its unique coface) in the order performed.
  std::vector<std::pair<Simplex, Simplex>> steps;
  std::size_t remaining = 0;
};

struct HomologyReport {
  int degree = 0;
  bool empty = true;
  std::vector<long> betti_gf2;
  std::vector<long> betti_q;
  int components = 0;
  std::string collapse = "inconclusive";
  bool fields_agree() const { return betti_gf2 == betti_q; }
  // Nonempty and vanishing reduced homology through degree n over both fields.
  bool homologically_connected(int n) const;
  // Largest n <= degree with homologically_connected(n); -2 when empty.
  int connectivity() const;
};

std::size_t rank_gf2(std::vector<std::vector<int>> columns);
std::size_t rank_rational(const std::vector<std::vector<std::pair<int, long>>>& columns);
// Dense Bareiss elimination; used to cross-check rank_rational.
std::size_t rank_bareiss(std::vector<std::vector<long>> rows);

HomologyReport reduced_homology(const Complex& k, int degree, bool with_collapse = true);
int path_components(const Complex& k);
CollapseResult greedy_collapse(const Complex& k);

Complex join(const Complex& a, const Complex& b);
// Chains of a finite poset given by its order matrix leq[i][j] meaning i <= j.
Complex order_complex(const std::vector<std::string>& labels, const std::vector<std::vector<bool>>& leq);
// Nerve of a cover given by the vertex sets of its members; simplices up to max_dim.
Complex nerve(const std::vector<std::vector<int>>& members, int max_dim);

std::string to_dot(const Complex& k);

}  // namespace expanse

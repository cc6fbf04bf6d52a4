#pragma once

// Independent reference computations used to cross-check the library.

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "expanse/cantor.hpp"
#include "expanse/expansion.hpp"
#include "expanse/topology.hpp"

namespace oracle {

using expanse::Word;

inline std::vector<Word> words_of_length(int n) {
  std::vector<Word> out{""};
  for (int i = 0; i < n; ++i) {
    std::vector<Word> next;
    for (const auto& w : out) {
      next.push_back(w + "0");
      next.push_back(w + "1");
    }
    out = std::move(next);
  }
  return out;
}

// All complete prefix codes under `under` whose words have length at most d.
inline std::vector<std::vector<Word>> prefix_codes(const Word& under, int d) {
  std::vector<std::vector<Word>> out{{under}};
  if (static_cast<int>(under.size()) < d)
    for (const auto& l : prefix_codes(under + "0", d))
      for (const auto& r : prefix_codes(under + "1", d)) {
        auto c = l;
        c.insert(c.end(), r.begin(), r.end());
        out.push_back(std::move(c));
      }
  return out;
}

// Evaluate a table row by row on a point given by a long enough word.
inline std::optional<Word> eval(const std::vector<expanse::Row>& rows, const Word& x) {
  for (const auto& r : rows)
    if (x.compare(0, r.dom.size(), r.dom) == 0 && x.size() >= r.dom.size()) return r.img + x.substr(r.dom.size());
  return std::nullopt;
}

// The Grigorchuk automaton, applied letter by letter from the right.
inline Word grig_act_letter(char g, const Word& u) {
  if (u.empty() || g == '1') return u;
  char first = u[0];
  Word rest = u.substr(1);
  switch (g) {
    case 'a': return Word(1, first == '0' ? '1' : '0') + rest;
    case 'b': return Word(1, first) + grig_act_letter(first == '0' ? 'a' : 'c', rest);
    case 'c': return Word(1, first) + grig_act_letter(first == '0' ? 'a' : 'd', rest);
    case 'd': return Word(1, first) + grig_act_letter(first == '0' ? '1' : 'b', rest);
  }
  return u;
}

inline Word grig_act(const std::string& w, Word u) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) u = grig_act_letter(*it, u);
  return u;
}

// A word of length at most `depth` moved by w, if any.
inline std::optional<Word> grig_moved(const std::string& w, int depth) {
  for (int n = 1; n <= depth; ++n)
    for (const auto& u : words_of_length(n))
      if (grig_act(w, u) != u) return u;
  return std::nullopt;
}

// Rank over Q by exact rational Gaussian elimination on a dense matrix.
inline std::size_t dense_rank_q(std::vector<std::vector<long>> m) {
  using boost::multiprecision::cpp_rational;
  std::vector<std::vector<cpp_rational>> a;
  for (auto& row : m) {
    std::vector<cpp_rational> r;
    for (long x : row) r.emplace_back(x);
    a.push_back(std::move(r));
  }
  std::size_t rank = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols && rank < a.size(); ++c) {
    std::size_t p = rank;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == rank || a[r][c] == 0) continue;
      cpp_rational f = a[r][c] / a[rank][c];
      for (std::size_t j = c; j < cols; ++j) a[r][j] -= f * a[rank][j];
    }
    ++rank;
  }
  return rank;
}

inline std::size_t dense_rank_gf2(std::vector<std::vector<long>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (auto& row : m)
    for (auto& x : row) x = ((x % 2) + 2) % 2;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r)
      if (r != rank && m[r][c])
        for (std::size_t j = c; j < cols; ++j) m[r][j] ^= m[rank][j];
    ++rank;
  }
  return rank;
}

// Reduced Betti numbers through `degree` from dense boundary matrices.
inline std::vector<long> reduced_betti(const expanse::Complex& k, int degree, bool rational) {
  std::vector<std::vector<expanse::Simplex>> faces(degree + 2);
  for (int d = 0; d <= degree + 1 && d <= k.dimension(); ++d)
    faces[d].assign(k.simplices(d).begin(), k.simplices(d).end());
  auto rank_of = [&](int d) -> std::size_t {
    // Boundary from dimension d to d-1; d = 0 is the augmentation.
    if (d > degree + 1 || faces[d].empty()) return 0;
    std::vector<std::vector<long>> m;
    if (d == 0) {
      m.assign(1, std::vector<long>(faces[0].size(), 1));
    } else {
      std::map<expanse::Simplex, std::size_t> index;
      for (std::size_t i = 0; i < faces[d - 1].size(); ++i) index[faces[d - 1][i]] = i;
      m.assign(faces[d - 1].size(), std::vector<long>(faces[d].size(), 0));
      for (std::size_t j = 0; j < faces[d].size(); ++j)
        for (std::size_t i = 0; i < faces[d][j].size(); ++i) {
          expanse::Simplex f = faces[d][j];
          f.erase(f.begin() + i);
          m[index.at(f)][j] = (i % 2 == 0) ? 1 : -1;
        }
    }
    return rational ? dense_rank_q(m) : dense_rank_gf2(m);
  };
  std::vector<long> out;
  for (int d = 0; d <= degree; ++d)
    out.push_back(static_cast<long>(faces[d].size()) - static_cast<long>(rank_of(d)) -
                  static_cast<long>(rank_of(d + 1)));
  return out;
}

// Reachability by single-element expansions, breadth first, up to a height bound.
inline bool bfs_reachable(const expanse::ExpansionSet& set, const expanse::Vertex& from, const expanse::Vertex& to,
                          std::size_t max_height) {
  std::set<expanse::Vertex> seen{from};
  std::deque<expanse::Vertex> queue{from};
  while (!queue.empty()) {
    expanse::Vertex v = queue.front();
    queue.pop_front();
    if (v == to) return true;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto& e = set.expansions(v[i]);
      for (std::size_t n = 1; n < e.nodes.size(); ++n) {
        std::vector<expanse::ElementId> elems;
        for (std::size_t j = 0; j < v.size(); ++j)
          if (j != i) elems.push_back(v[j]);
        elems.insert(elems.end(), e.nodes[n].begin(), e.nodes[n].end());
        if (elems.size() > max_height) continue;
        expanse::Vertex w = set.make_vertex(std::move(elems));
        if (seen.insert(w).second) queue.push_back(w);
      }
    }
  }
  return false;
}

}  // namespace oracle

#include "expanse/topology.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <numeric>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

namespace expanse {

using boost::multiprecision::cpp_int;

std::size_t default_simplex_budget() {
  if (const char* env = std::getenv("EXPANSE_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 2'000'000;
}

Complex::Complex() : budget_(default_simplex_budget()) {}

Complex::Complex(std::vector<std::string> labels, std::size_t budget) : budget_(budget) {
  for (auto& l : labels) add_vertex(std::move(l));
}

int Complex::add_vertex(std::string label) {
  labels_.push_back(std::move(label));
  int v = static_cast<int>(labels_.size()) - 1;
  insert({v});
  return v;
}

void Complex::insert(Simplex s) {
  std::size_t d = s.size() - 1;
  if (by_dim_.size() <= d) by_dim_.resize(d + 1);
  if (by_dim_[d].insert(std::move(s)).second) {
    if (++count_ > budget_)
      throw BudgetExceeded("simplex budget of " + std::to_string(budget_) + " exceeded");
  }
}

void Complex::add_simplex(Simplex s) {
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.empty() || contains(s)) return;
  for (int v : s)
    if (v < 0 || v >= vertex_count()) throw std::out_of_range("simplex names an unknown vertex");
  std::vector<Simplex> stack{s};
  while (!stack.empty()) {
    Simplex cur = std::move(stack.back());
    stack.pop_back();
    if (contains(cur)) continue;
    if (cur.size() > 1) {
      for (std::size_t i = 0; i < cur.size(); ++i) {
        Simplex face = cur;
        face.erase(face.begin() + static_cast<long>(i));
        if (!contains(face)) stack.push_back(std::move(face));
      }
    }
    insert(std::move(cur));
  }
}

void Complex::add_simplex_skeleton(const Simplex& s0, int max_dim) {
  Simplex s = s0;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (static_cast<int>(s.size()) <= max_dim + 1) {
    add_simplex(s);
    return;
  }
  // Every subset of size at most max_dim + 1, enumerated by index combinations.
  const int n = static_cast<int>(s.size());
  for (int size = 1; size <= max_dim + 1; ++size) {
    std::vector<int> idx(size);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      Simplex face;
      for (int i : idx) face.push_back(s[i]);
      if (!contains(face)) insert(std::move(face));
      int pos = size - 1;
      while (pos >= 0 && idx[pos] == n - size + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int j = pos + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
}

bool Complex::contains(const Simplex& s) const {
  if (s.empty()) return false;
  std::size_t d = s.size() - 1;
  return d < by_dim_.size() && by_dim_[d].count(s) > 0;
}

int Complex::dimension() const {
  for (int d = static_cast<int>(by_dim_.size()) - 1; d >= 0; --d)
    if (!by_dim_[d].empty()) return d;
  return -1;
}

const std::set<Simplex>& Complex::simplices(int dim) const {
  static const std::set<Simplex> none;
  if (dim < 0 || dim >= static_cast<int>(by_dim_.size())) return none;
  return by_dim_[dim];
}

std::vector<Simplex> Complex::maximal_simplices() const {
  std::vector<Simplex> out;
  for (int d = 0; d <= dimension(); ++d) {
    for (const auto& s : by_dim_[d]) {
      bool maximal = true;
      if (d + 1 < static_cast<int>(by_dim_.size())) {
        for (int v = 0; v < vertex_count() && maximal; ++v) {
          if (std::binary_search(s.begin(), s.end(), v)) continue;
          Simplex up = s;
          up.insert(std::upper_bound(up.begin(), up.end(), v), v);
          if (by_dim_[d + 1].count(up)) maximal = false;
        }
      }
      if (maximal) out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

long Complex::euler_characteristic() const {
  long chi = 0;
  for (std::size_t d = 0; d < by_dim_.size(); ++d)
    chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(by_dim_[d].size());
  return chi;
}

Complex Complex::induced(const std::vector<int>& keep) const {
  std::map<int, int> remap;
  std::vector<std::string> labels;
  for (int v : keep) {
    remap.emplace(v, static_cast<int>(labels.size()));
    labels.push_back(labels_.at(v));
  }
  Complex out(labels, budget_);
  for (const auto& layer : by_dim_) {
    for (const auto& s : layer) {
      Simplex t;
      bool inside = true;
      for (int v : s) {
        auto it = remap.find(v);
        if (it == remap.end()) {
          inside = false;
          break;
        }
        t.push_back(it->second);
      }
      if (inside && t.size() > 1) {
        std::sort(t.begin(), t.end());
        out.insert(std::move(t));
      }
    }
  }
  return out;
}

Complex Complex::skeleton(int dim) const {
  Complex out(labels_, budget_);
  for (int d = 1; d <= dim && d < static_cast<int>(by_dim_.size()); ++d)
    for (const auto& s : by_dim_[d]) out.insert(s);
  return out;
}

bool Complex::operator==(const Complex& other) const {
  if (labels_ != other.labels_ || count_ != other.count_) return false;
  for (int d = 0; d <= std::max(dimension(), other.dimension()); ++d)
    if (simplices(d) != other.simplices(d)) return false;
  return true;
}

// ---------------------------------------------------------------- ranks

std::size_t rank_gf2(std::vector<std::vector<int>> columns) {
  std::map<int, std::size_t> pivot_of;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    auto& col = columns[c];
    std::sort(col.begin(), col.end());
    while (!col.empty()) {
      auto it = pivot_of.find(col.back());
      if (it == pivot_of.end()) {
        pivot_of.emplace(col.back(), c);
        ++rank;
        break;
      }
      const auto& p = columns[it->second];
      std::vector<int> sum;
      std::set_symmetric_difference(col.begin(), col.end(), p.begin(), p.end(), std::back_inserter(sum));
      col = std::move(sum);
    }
  }
  return rank;
}

namespace {

using BigColumn = std::vector<std::pair<int, cpp_int>>;

// b*col - a*pivot, with entries divided by their common content afterwards.
BigColumn eliminate(const BigColumn& col, const BigColumn& piv) {
  const cpp_int a = col.back().second;
  const cpp_int b = piv.back().second;
  BigColumn out;
  std::size_t i = 0, j = 0;
  while (i < col.size() || j < piv.size()) {
    if (j == piv.size() || (i < col.size() && col[i].first < piv[j].first)) {
      out.emplace_back(col[i].first, b * col[i].second);
      ++i;
    } else if (i == col.size() || piv[j].first < col[i].first) {
      out.emplace_back(piv[j].first, -a * piv[j].second);
      ++j;
    } else {
      cpp_int v = b * col[i].second - a * piv[j].second;
      if (v != 0) out.emplace_back(col[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  cpp_int g = 0;
  for (const auto& [r, v] : out) g = gcd(g, v);
  if (g > 1)
    for (auto& [r, v] : out) v /= g;
  return out;
}

}  // namespace

std::size_t rank_rational(const std::vector<std::vector<std::pair<int, long>>>& columns) {
  std::vector<BigColumn> cols;
  cols.reserve(columns.size());
  for (const auto& c : columns) {
    BigColumn b;
    for (const auto& [r, v] : c)
      if (v != 0) b.emplace_back(r, cpp_int(v));
    std::sort(b.begin(), b.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    cols.push_back(std::move(b));
  }
  std::map<int, std::size_t> pivot_of;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    while (!cols[c].empty()) {
      auto it = pivot_of.find(cols[c].back().first);
      if (it == pivot_of.end()) {
        pivot_of.emplace(cols[c].back().first, c);
        ++rank;
        break;
      }
      cols[c] = eliminate(cols[c], cols[it->second]);
    }
  }
  return rank;
}

std::size_t rank_bareiss(std::vector<std::vector<long>> rows_in) {
  if (rows_in.empty()) return 0;
  const std::size_t m = rows_in.size(), n = rows_in.front().size();
  std::vector<std::vector<cpp_int>> a(m, std::vector<cpp_int>(n));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = rows_in[i][j];
  cpp_int prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < n && rank < m; ++col) {
    std::size_t piv = rank;
    while (piv < m && a[piv][col] == 0) ++piv;
    if (piv == m) continue;
    std::swap(a[piv], a[rank]);
    for (std::size_t i = rank + 1; i < m; ++i) {
      for (std::size_t j = col + 1; j < n; ++j) a[i][j] = (a[rank][col] * a[i][j] - a[i][col] * a[rank][j]) / prev;
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

// ---------------------------------------------------------------- homology

bool HomologyReport::homologically_connected(int n) const {
  if (empty) return false;
  for (int i = 0; i <= n; ++i) {
    if (i > degree) return false;
    if (betti_gf2[i] != 0 || betti_q[i] != 0) return false;
  }
  return true;
}

int HomologyReport::connectivity() const {
  if (empty) return -2;
  int n = -1;
  while (n + 1 <= degree && homologically_connected(n + 1)) ++n;
  return n;
}

int path_components(const Complex& k) {
  std::vector<int> parent(k.vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int comps = k.vertex_count();
  for (const auto& e : k.simplices(1)) {
    int a = find(e[0]), b = find(e[1]);
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps;
}

HomologyReport reduced_homology(const Complex& k, int degree, bool with_collapse) {
  HomologyReport rep;
  rep.degree = degree;
  rep.empty = k.empty();
  rep.components = path_components(k);
  rep.betti_gf2.assign(degree + 1, 0);
  rep.betti_q.assign(degree + 1, 0);
  if (rep.empty) return rep;

  // rank of the boundary map out of dimension d, d = 0 being the augmentation.
  std::vector<std::size_t> r2(degree + 2, 0), rq(degree + 2, 0);
  r2[0] = rq[0] = 1;
  for (int d = 1; d <= degree + 1; ++d) {
    const auto& faces = k.simplices(d - 1);
    std::map<Simplex, int> index;
    int i = 0;
    for (const auto& f : faces) index.emplace(f, i++);
    std::vector<std::vector<int>> c2;
    std::vector<std::vector<std::pair<int, long>>> cq;
    for (const auto& s : k.simplices(d)) {
      std::vector<int> col2;
      std::vector<std::pair<int, long>> colq;
      for (std::size_t j = 0; j < s.size(); ++j) {
        Simplex f = s;
        f.erase(f.begin() + static_cast<long>(j));
        int row = index.at(f);
        col2.push_back(row);
        colq.emplace_back(row, j % 2 == 0 ? 1 : -1);
      }
      c2.push_back(std::move(col2));
      cq.push_back(std::move(colq));
    }
    r2[d] = rank_gf2(std::move(c2));
    rq[d] = rank_rational(cq);
  }
  for (int d = 0; d <= degree; ++d) {
    long n = static_cast<long>(k.simplices(d).size());
    rep.betti_gf2[d] = n - static_cast<long>(r2[d]) - static_cast<long>(r2[d + 1]);
    rep.betti_q[d] = n - static_cast<long>(rq[d]) - static_cast<long>(rq[d + 1]);
  }
  if (with_collapse) rep.collapse = greedy_collapse(k).collapsible ? "collapsible" : "inconclusive";
  return rep;
}

CollapseResult greedy_collapse(const Complex& k) {
  CollapseResult res;
  std::vector<Simplex> all;
  std::map<Simplex, int> id;
  for (int d = 0; d <= k.dimension(); ++d)
    for (const auto& s : k.simplices(d)) {
      id.emplace(s, static_cast<int>(all.size()));
      all.push_back(s);
    }
  const std::size_t n = all.size();
  std::vector<std::vector<int>> faces(n), cofaces(n);
  for (std::size_t t = 0; t < n; ++t) {
    const auto& s = all[t];
    if (s.size() < 2) continue;
    for (std::size_t j = 0; j < s.size(); ++j) {
      Simplex f = s;
      f.erase(f.begin() + static_cast<long>(j));
      int fi = id.at(f);
      faces[t].push_back(fi);
      cofaces[fi].push_back(static_cast<int>(t));
    }
  }
  std::vector<bool> alive(n, true);
  std::vector<int> count(n);
  for (std::size_t i = 0; i < n; ++i) count[i] = static_cast<int>(cofaces[i].size());
  std::deque<int> queue;
  for (int i = static_cast<int>(n) - 1; i >= 0; --i)
    if (count[i] == 1) queue.push_back(i);
  std::size_t remaining = n;
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    if (!alive[s] || count[s] != 1) continue;
    int t = -1;
    for (int c : cofaces[s])
      if (alive[c]) t = c;
    alive[s] = alive[t] = false;
    remaining -= 2;
    res.steps.emplace_back(all[s], all[t]);
    for (int f : faces[t]) {
      if (!alive[f]) continue;
      if (--count[f] == 1) queue.push_back(f);
    }
    for (int f : faces[s]) {
      if (!alive[f]) continue;
      if (--count[f] == 1) queue.push_back(f);
    }
  }
  res.remaining = remaining;
  res.collapsible = remaining == 1;
  return res;
}

// ---------------------------------------------------------------- constructions

Complex join(const Complex& a, const Complex& b) {
  std::vector<std::string> labels = a.labels();
  labels.insert(labels.end(), b.labels().begin(), b.labels().end());
  Complex out(labels, std::max(a.budget(), b.budget()));
  const int shift = a.vertex_count();
  auto ma = a.maximal_simplices();
  auto mb = b.maximal_simplices();
  if (ma.empty()) ma.push_back({});
  if (mb.empty()) mb.push_back({});
  for (const auto& s : ma) {
    for (const auto& t : mb) {
      Simplex u = s;
      for (int v : t) u.push_back(v + shift);
      if (!u.empty()) out.add_simplex(std::move(u));
    }
  }
  return out;
}

Complex order_complex(const std::vector<std::string>& labels, const std::vector<std::vector<bool>>& leq) {
  Complex out(labels);
  const int n = static_cast<int>(labels.size());
  auto less = [&](int i, int j) { return i != j && leq[i][j] && !leq[j][i]; };
  std::vector<std::vector<int>> covers(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!less(i, j)) continue;
      bool direct = true;
      for (int m = 0; m < n && direct; ++m)
        if (less(i, m) && less(m, j)) direct = false;
      if (direct) covers[i].push_back(j);
    }
  // Maximal chains are walks along covering relations from minimal elements.
  std::vector<int> chain;
  auto extend = [&](auto&& self, int top) -> void {
    bool grew = false;
    for (int j : covers[top]) {
      grew = true;
      chain.push_back(j);
      self(self, j);
      chain.pop_back();
    }
    if (!grew) out.add_simplex(chain);
  };
  for (int i = 0; i < n; ++i) {
    bool minimal = true;
    for (int j = 0; j < n; ++j)
      if (j != i && leq[j][i] && !leq[i][j]) minimal = false;
    if (!minimal) continue;
    chain = {i};
    extend(extend, i);
  }
  return out;
}

Complex nerve(const std::vector<std::vector<int>>& members, int max_dim) {
  std::vector<std::string> labels;
  std::map<int, std::vector<int>> containing;
  for (std::size_t i = 0; i < members.size(); ++i) {
    labels.push_back("U" + std::to_string(i));
    for (int x : members[i]) containing[x].push_back(static_cast<int>(i));
  }
  Complex out(labels);
  std::set<std::vector<int>> seen;
  for (auto& [x, idx] : containing) {
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    if (seen.insert(idx).second) out.add_simplex_skeleton(idx, max_dim);
  }
  return out;
}

std::string to_dot(const Complex& k) {
  std::ostringstream os;
  os << "graph complex {\n";
  for (int v = 0; v < k.vertex_count(); ++v) {
    std::string label = k.labels()[v];
    std::string escaped;
    for (char c : label) {
      if (c == '"' || c == '\\') escaped.push_back('\\');
      escaped.push_back(c);
    }
    os << "  " << v << " [label=\"" << escaped << "\"];\n";
  }
  for (const auto& e : k.simplices(1)) os << "  " << e[0] << " -- " << e[1] << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace expanse

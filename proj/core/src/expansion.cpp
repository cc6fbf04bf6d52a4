#include "expanse/expansion.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <queue>
#include <set>

namespace expanse {

std::string to_string(Kind k) {
  switch (k) {
    case Kind::linear: return "linear";
    case Kind::cyclic: return "cyclic";
    default: return "permutational";
  }
}

int ExpansionPoset::find(const Vertex& v) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i] == v) return static_cast<int>(i);
  return -1;
}

std::size_t ExpansionPoset::max_height() const {
  std::size_t h = 0;
  for (const auto& n : nodes) h = std::max(h, n.size());
  return h;
}

// ---------------------------------------------------------------- vertex helpers

Vertex ExpansionSet::make_vertex(std::vector<ElementId> elements) const {
  std::sort(elements.begin(), elements.end(),
            [&](ElementId a, ElementId b) { return order_key(a) < order_key(b) || (order_key(a) == order_key(b) && a < b); });
  for (std::size_t i = 0; i < elements.size(); ++i)
    for (std::size_t j = i + 1; j < elements.size(); ++j)
      if (!supports_disjoint(support(elements[i]), support(elements[j])))
        throw std::invalid_argument("elements " + std::to_string(i) + " and " + std::to_string(j) +
                                    " of the vertex have overlapping supports");
  return elements;
}

Support ExpansionSet::vertex_support(const Vertex& v) const {
  Support out;
  for (ElementId b : v) {
    const auto& s = support(b);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

nlohmann::json ExpansionSet::vertex_json(const Vertex& v) const {
  nlohmann::json elems = nlohmann::json::array();
  for (ElementId b : v) elems.push_back(element_json(b));
  return nlohmann::json{{"elements", elems}};
}

Vertex ExpansionSet::vertex_from_json(const nlohmann::json& j) const {
  if (!j.is_object() || !j.contains("elements") || !j.at("elements").is_array())
    throw std::invalid_argument("vertex JSON must be an object with an \"elements\" array");
  std::vector<ElementId> elems;
  std::size_t i = 0;
  for (const auto& e : j.at("elements")) {
    try {
      elems.push_back(element_from_json(e));
    } catch (const std::exception& ex) {
      throw std::invalid_argument("element " + std::to_string(i) + ": " + ex.what());
    }
    ++i;
  }
  if (elems.empty()) throw std::invalid_argument("a vertex needs at least one element");
  return make_vertex(std::move(elems));
}

std::string ExpansionSet::vertex_label(const Vertex& v) const {
  std::string out = "{";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += element_label(v[i]);
  }
  return out + "}";
}

Vertex restriction(const ExpansionSet& set, ElementId b, const Vertex& v) {
  Vertex out;
  const auto& sb = set.support(b);
  for (ElementId x : v)
    if (support_subset(set.support(x), sb)) out.push_back(x);
  return out;
}

Support induced_partition_support(const ExpansionSet& set, const Vertex& v) { return set.vertex_support(v); }

std::vector<Support> induced_partition(const ExpansionSet& set, const Vertex& v) {
  std::vector<Support> out;
  for (ElementId b : v) out.push_back(set.support(b));
  return out;
}

bool refines(const ExpansionSet& set, const Vertex& finer, const Vertex& coarser) {
  for (ElementId x : finer) {
    bool under = false;
    for (ElementId b : coarser)
      if (support_subset(set.support(x), set.support(b))) {
        under = true;
        break;
      }
    if (!under) return false;
  }
  return support_subset(set.vertex_support(coarser), set.vertex_support(finer));
}

std::vector<Vertex> canonical_order(const ExpansionSet& set, std::vector<Vertex> s) {
  std::sort(s.begin(), s.end(), [](const Vertex& a, const Vertex& b) {
    return a.size() < b.size() || (a.size() == b.size() && a < b);
  });
  s.erase(std::unique(s.begin(), s.end()), s.end());
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i].size() == s[i + 1].size())
      throw NotAChainError("two distinct vertices of height " + std::to_string(s[i].size()));
    if (!refines(set, s[i + 1], s[i])) throw NotAChainError("vertex partitions do not refine one another");
  }
  return s;
}

bool is_simplex(const ExpansionSet& set, const std::vector<Vertex>& s) {
  std::vector<Vertex> order;
  try {
    order = canonical_order(set, s);
  } catch (const NotAChainError&) {
    return false;
  }
  if (order.size() <= 1) return true;
  for (ElementId b : order.front()) {
    const auto& poset = set.expansions(b);
    int prev = 0;
    for (std::size_t j = 1; j < order.size(); ++j) {
      int idx = poset.find(restriction(set, b, order[j]));
      if (idx < 0 || !poset.leq[prev][idx]) return false;
      prev = idx;
    }
  }
  return true;
}

AxiomReport check_expansion_axioms(const ExpansionSet& set, ElementId b) {
  AxiomReport rep;
  auto fail = [&](std::string why) {
    rep.ok = false;
    rep.failure = std::move(why);
    return rep;
  };
  const auto& e = set.expansions(b);
  const std::size_t n = e.nodes.size();
  if (n == 0 || e.nodes[0] != Vertex{b}) return fail("{b} is not the first node");
  const Support sb = set.support(b);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& node = e.nodes[i];
    try {
      if (set.make_vertex(node) != node) return fail("node " + std::to_string(i) + " is not sorted");
    } catch (const std::exception& ex) {
      return fail("node " + std::to_string(i) + ": " + ex.what());
    }
    Support s = set.vertex_support(node);
    if (!support_subset(s, sb) || !support_subset(sb, s))
      return fail("node " + std::to_string(i) + " does not partition supp(b)");
    for (std::size_t j = 0; j < n; ++j)
      if (i != j && e.nodes[j] == node) return fail("repeated node");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!e.leq[0][i]) return fail("{b} is not below node " + std::to_string(i));
    if (!e.leq[i][i]) return fail("order is not reflexive");
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && e.leq[i][j] && e.leq[j][i]) return fail("order is not antisymmetric");
      for (std::size_t m = 0; m < n; ++m)
        if (e.leq[i][j] && e.leq[j][m] && !e.leq[i][m]) return fail("order is not transitive");
      if (i != j && e.leq[i][j] && !(refines(set, e.nodes[j], e.nodes[i]) && e.nodes[j].size() > e.nodes[i].size()))
        return fail("node " + std::to_string(j) + " does not properly refine node " + std::to_string(i));
      bool restricted = true;
      for (ElementId x : e.nodes[i])
        if (set.expansions(x).find(restriction(set, x, e.nodes[j])) < 0) restricted = false;
      if (restricted != static_cast<bool>(e.leq[i][j]))
        return fail("restriction criterion disagrees with the order at nodes " + std::to_string(i) + ", " +
                    std::to_string(j));
    }
  }
  return rep;
}

// ---------------------------------------------------------------- ascending side

AscendingStar ascending_star(const ExpansionSet& set, const Vertex& v) {
  AscendingStar star;
  star.base = v;
  std::vector<const ExpansionPoset*> posets;
  for (ElementId b : v) {
    posets.push_back(&set.expansions(b));
    if (posets.back()->nodes.empty()) throw InfinitePosetError("instance reported no expansions");
  }
  std::vector<int> t(v.size(), 0);
  while (true) {
    std::vector<ElementId> elems;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto& node = posets[i]->nodes[t[i]];
      elems.insert(elems.end(), node.begin(), node.end());
    }
    star.vertices.push_back(set.make_vertex(std::move(elems)));
    star.coords.push_back(t);
    std::size_t i = 0;
    while (i < v.size() && ++t[i] == static_cast<int>(posets[i]->nodes.size())) t[i++] = 0;
    if (i == v.size()) break;
  }
  const std::size_t n = star.vertices.size();
  star.leq.assign(n, std::vector<bool>(n, true));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < n; ++a) {
    std::string l = "(";
    for (std::size_t i = 0; i < v.size(); ++i) l += (i ? "," : "") + std::to_string(star.coords[a][i]);
    labels.push_back(l + ")");
    for (std::size_t c = 0; c < n; ++c)
      for (std::size_t i = 0; i < v.size(); ++i)
        if (!posets[i]->leq[star.coords[a][i]][star.coords[c][i]]) {
          star.leq[a][c] = false;
          break;
        }
  }
  star.complex = order_complex(labels, star.leq);
  return star;
}

namespace {

Complex join_of_links(const ExpansionSet& set, const Vertex& v, const std::vector<std::vector<int>>& kept_nodes) {
  Complex out;
  bool first = true;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& e = set.expansions(v[i]);
    std::vector<std::string> labels;
    std::vector<std::vector<bool>> leq;
    for (int a : kept_nodes[i]) {
      labels.push_back("b" + std::to_string(i + 1) + ":" + std::to_string(a));
      std::vector<bool> row;
      for (int c : kept_nodes[i]) row.push_back(e.leq[a][c]);
      leq.push_back(std::move(row));
    }
    Complex piece = order_complex(labels, leq);
    out = first ? piece : join(out, piece);
    first = false;
  }
  return out;
}

}  // namespace

AscendingLink ascending_link(const ExpansionSet& set, const Vertex& v) {
  AscendingLink out;
  out.star = ascending_star(set, v);
  std::vector<int> keep;
  for (int i = 1; i < static_cast<int>(out.star.vertices.size()); ++i) keep.push_back(i);
  out.link = out.star.complex.induced(keep);
  std::vector<std::vector<int>> kept(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    for (int a = 1; a < static_cast<int>(set.expansions(v[i]).nodes.size()); ++a) kept[i].push_back(a);
  out.join_form = join_of_links(set, v, kept);
  return out;
}

namespace {

class Search {
 public:
  Search(const ExpansionSet& set, std::size_t budget) : set_(set), budget_(budget) {}

  std::optional<ExpansionSequence> reach(ElementId b, const Vertex& target) {
    if (target.size() == 1 && target[0] == b) return ExpansionSequence{{b}};
    if (target.size() <= 1) return std::nullopt;
    auto key = std::make_pair(b, target);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (++steps_ > budget_) throw BudgetExceeded("expansion search budget of " + std::to_string(budget_) + " exceeded");
    std::optional<ExpansionSequence> result;
    const auto& e = set_.expansions(b);
    for (std::size_t idx = 1; idx < e.nodes.size() && !result; ++idx) {
      const Vertex& w = e.nodes[idx];
      if (w.size() > target.size()) continue;
      std::vector<ExpansionSequence> parts;
      std::size_t covered = 0;
      bool ok = true;
      for (ElementId x : w) {
        Vertex tx = restriction(set_, x, target);
        covered += tx.size();
        if (tx.empty()) {
          ok = false;
          break;
        }
        auto sub = reach(x, tx);
        if (!sub) {
          ok = false;
          break;
        }
        parts.push_back(std::move(*sub));
      }
      if (!ok || covered != target.size()) continue;
      ExpansionSequence seq{{b}};
      for (auto& w2 : merge_sequences(set_, parts)) seq.push_back(std::move(w2));
      result = std::move(seq);
    }
    memo_.emplace(std::move(key), result);
    return result;
  }

 private:
  const ExpansionSet& set_;
  std::size_t budget_;
  std::size_t steps_ = 0;
  std::map<std::pair<ElementId, Vertex>, std::optional<ExpansionSequence>> memo_;
};

std::optional<ExpansionSequence> leq_with(Search& search, const ExpansionSet& set, const Vertex& v1, const Vertex& v2) {
  if (v1 == v2) return ExpansionSequence{v1};
  std::vector<ExpansionSequence> parts;
  std::size_t covered = 0;
  for (ElementId b : v1) {
    Vertex t = restriction(set, b, v2);
    if (t.empty()) return std::nullopt;
    covered += t.size();
    auto sub = search.reach(b, t);
    if (!sub) return std::nullopt;
    parts.push_back(std::move(*sub));
  }
  if (covered != v2.size()) return std::nullopt;
  return merge_sequences(set, parts);
}

}  // namespace

ExpansionSequence merge_sequences(const ExpansionSet& set, const std::vector<ExpansionSequence>& parts) {
  std::size_t len = 0;
  for (const auto& p : parts) len = std::max(len, p.size());
  ExpansionSequence out;
  for (std::size_t j = 0; j < len; ++j) {
    std::vector<ElementId> elems;
    for (const auto& p : parts) {
      const auto& w = p[std::min(j, p.size() - 1)];
      elems.insert(elems.end(), w.begin(), w.end());
    }
    Vertex w = set.make_vertex(std::move(elems));
    if (out.empty() || out.back() != w) out.push_back(std::move(w));
  }
  return out;
}

std::vector<ExpansionSequence> split_sequence(const ExpansionSet& set, const ExpansionSequence& seq) {
  std::vector<ExpansionSequence> out;
  if (seq.empty()) return out;
  for (ElementId b : seq.front()) {
    ExpansionSequence piece;
    for (const auto& w : seq) {
      Vertex r = restriction(set, b, w);
      if (piece.empty() || piece.back() != r) piece.push_back(std::move(r));
    }
    out.push_back(std::move(piece));
  }
  return out;
}

bool sequence_valid(const ExpansionSet& set, const ExpansionSequence& seq) {
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if (seq[i + 1].size() <= seq[i].size()) return false;
    if (!is_simplex(set, {seq[i], seq[i + 1]})) return false;
  }
  return true;
}

std::optional<ExpansionSequence> expansion_leq(const ExpansionSet& set, const Vertex& v1, const Vertex& v2,
                                               std::size_t budget) {
  Search search(set, budget);
  auto seq = leq_with(search, set, v1, v2);
  if (seq && !sequence_valid(set, *seq)) throw std::logic_error("expansion search produced an invalid sequence");
  return seq;
}

AscendingLink relative_ascending_link(const ExpansionSet& set, const Vertex& v, const Vertex& top,
                                      std::size_t budget) {
  Search search(set, budget);
  if (!leq_with(search, set, v, top)) throw NotComparable("the first vertex does not expand to the second");
  AscendingStar full = ascending_star(set, v);
  std::vector<int> keep;
  for (int i = 0; i < static_cast<int>(full.vertices.size()); ++i)
    if (leq_with(search, set, full.vertices[i], top)) keep.push_back(i);

  AscendingLink out;
  out.star.base = v;
  for (int i : keep) {
    out.star.vertices.push_back(full.vertices[i]);
    out.star.coords.push_back(full.coords[i]);
  }
  for (int a : keep) {
    std::vector<bool> row;
    for (int c : keep) row.push_back(full.leq[a][c]);
    out.star.leq.push_back(std::move(row));
  }
  out.star.complex = full.complex.induced(keep);
  std::vector<int> link_keep;
  for (int i = 1; i < static_cast<int>(keep.size()); ++i) link_keep.push_back(i);
  out.link = out.star.complex.induced(link_keep);

  std::vector<std::vector<int>> kept(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const auto& e = set.expansions(v[i]);
    Vertex target = restriction(set, v[i], top);
    for (int a = 1; a < static_cast<int>(e.nodes.size()); ++a)
      if (leq_with(search, set, e.nodes[a], target)) kept[i].push_back(a);
  }
  out.join_form = join_of_links(set, v, kept);
  return out;
}

// ---------------------------------------------------------------- descending side

namespace {

std::vector<LowerVertex> lower_vertices(const ExpansionSet& set, const Vertex& v) {
  const int k = static_cast<int>(v.size());
  if (k > 63) throw BudgetExceeded("vertex height above 63 is outside the supported range");
  std::vector<Production> prods;
  const int cmax = std::min(set.c0(), k);
  for (int size = 2; size <= cmax; ++size) {
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      Vertex u;
      std::uint64_t mask = 0;
      for (int i : idx) {
        u.push_back(v[i]);
        mask |= std::uint64_t{1} << i;
      }
      for (ElementId b : set.contractions(u)) prods.push_back({mask, b});
      int pos = size - 1;
      while (pos >= 0 && idx[pos] == k - size + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int j = pos + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  std::sort(prods.begin(), prods.end(), [](const Production& a, const Production& b) {
    return a.mask < b.mask || (a.mask == b.mask && a.element < b.element);
  });

  std::vector<LowerVertex> out;
  std::vector<Production> chosen;
  std::function<void(std::size_t, std::uint64_t)> dfs = [&](std::size_t start, std::uint64_t used) {
    for (std::size_t p = start; p < prods.size(); ++p) {
      if (prods[p].mask & used) continue;
      chosen.push_back(prods[p]);
      LowerVertex lv;
      lv.productions = chosen;
      std::vector<ElementId> elems;
      std::uint64_t all = used | prods[p].mask;
      for (int i = 0; i < k; ++i)
        if (!(all >> i & 1)) elems.push_back(v[i]);
      for (const auto& c : chosen) elems.push_back(c.element);
      lv.vertex = set.make_vertex(std::move(elems));
      std::sort(lv.productions.begin(), lv.productions.end(),
                [](const Production& a, const Production& b) { return a.mask < b.mask; });
      out.push_back(std::move(lv));
      dfs(p + 1, all);
      chosen.pop_back();
    }
  };
  dfs(0, 0);
  std::sort(out.begin(), out.end(), [](const LowerVertex& a, const LowerVertex& b) {
    if (a.vertex.size() != b.vertex.size()) return a.vertex.size() < b.vertex.size();
    return a.vertex < b.vertex;
  });
  return out;
}

std::string production_label(const ExpansionSet& set, const LowerVertex& u) {
  std::string out;
  for (const auto& p : u.productions) {
    if (!out.empty()) out += " ";
    out += "[";
    bool first = true;
    for (int i = 0; i < 64; ++i)
      if (p.mask >> i & 1) {
        out += (first ? "" : " ") + std::to_string(i + 1);
        first = false;
      }
    out += "]" + set.element_label(p.element);
  }
  return out;
}

// Clique complex of a strict order given by upward adjacency lists.
Complex chain_complex(std::vector<std::string> labels, const std::vector<std::vector<int>>& up) {
  Complex out(std::move(labels));
  std::vector<int> chain;
  std::function<void(const std::vector<int>&)> grow = [&](const std::vector<int>& cand) {
    if (cand.empty()) {
      out.add_simplex(chain);
      return;
    }
    for (int j : cand) {
      std::vector<int> next;
      std::set_intersection(cand.begin(), cand.end(), up[j].begin(), up[j].end(), std::back_inserter(next));
      chain.push_back(j);
      grow(next);
      chain.pop_back();
    }
  };
  const int n = static_cast<int>(up.size());
  std::vector<bool> has_lower(n, false);
  for (int i = 0; i < n; ++i)
    for (int j : up[i]) has_lower[j] = true;
  for (int i = 0; i < n; ++i) {
    if (has_lower[i]) continue;
    chain = {i};
    grow(up[i]);
  }
  return out;
}

}  // namespace

bool lower_leq(const ExpansionSet& set, const LowerVertex& a, const LowerVertex& b) {
  std::uint64_t a_used = 0, b_used = 0;
  for (const auto& p : a.productions) a_used |= p.mask;
  for (const auto& p : b.productions) b_used |= p.mask;
  // Untouched elements of a must stay untouched in b.
  if (b_used & ~a_used) return false;
  for (const auto& pa : a.productions) {
    for (const auto& pb : b.productions)
      if ((pb.mask & pa.mask) != 0 && (pb.mask & ~pa.mask) != 0) return false;
    const auto& e = set.expansions(pa.element);
    Vertex r = restriction(set, pa.element, b.vertex);
    if (e.find(r) < 0) return false;
  }
  return a.vertex != b.vertex;
}

DescendingLink descending_link(const ExpansionSet& set, const Vertex& v) {
  if (!set.contraction_oracle_complete())
    throw OracleIncomplete("instance " + set.id() + " declares a partial contraction oracle");
  DescendingLink out;
  out.top = v;
  out.vertices = lower_vertices(set, v);
  const int n = static_cast<int>(out.vertices.size());
  std::vector<std::vector<int>> up(n);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(production_label(set, out.vertices[i]));
  for (int i = 0; i < n; ++i) {
    const auto& a = out.vertices[i];
    for (int j = 0; j < n; ++j) {
      const auto& b = out.vertices[j];
      if (b.vertex.size() <= a.vertex.size()) continue;
      if (lower_leq(set, a, b)) up[i].push_back(j);
    }
  }
  out.complex = chain_complex(std::move(labels), up);
  return out;
}

void validate_partition(const Partition& p, int k) {
  std::vector<int> seen(k, 0);
  for (const auto& block : p.blocks) {
    if (block.empty()) throw NotAPartition("empty block");
    for (int i : block) {
      if (i < 0 || i >= k) throw NotAPartition("block index out of range");
      if (seen[i]++) throw NotAPartition("index " + std::to_string(i) + " appears twice");
    }
  }
  for (int i = 0; i < k; ++i)
    if (!seen[i]) throw NotAPartition("index " + std::to_string(i) + " is in no block");
}

Partition normalize(Partition p) {
  for (auto& b : p.blocks) std::sort(b.begin(), b.end());
  std::sort(p.blocks.begin(), p.blocks.end());
  return p;
}

Partition partition_meet(const Partition& p1, const Partition& p2) {
  std::set<int> g1, g2;
  for (const auto& b : p1.blocks) g1.insert(b.begin(), b.end());
  for (const auto& b : p2.blocks) g2.insert(b.begin(), b.end());
  if (g1 != g2) throw DifferentGround("partitions of different vertices");
  Partition out;
  for (const auto& a : p1.blocks) {
    std::set<int> sa(a.begin(), a.end());
    for (const auto& b : p2.blocks) {
      std::vector<int> both;
      for (int x : b)
        if (sa.count(x)) both.push_back(x);
      if (!both.empty()) out.blocks.push_back(std::move(both));
    }
  }
  return normalize(std::move(out));
}

bool lower_in_partition(const LowerVertex& u, const Partition& p) {
  for (const auto& prod : u.productions) {
    bool inside = false;
    for (const auto& block : p.blocks) {
      std::uint64_t m = 0;
      for (int i : block) m |= std::uint64_t{1} << i;
      if ((prod.mask & ~m) == 0) {
        inside = true;
        break;
      }
    }
    if (!inside) return false;
  }
  return true;
}

DescendingLink partitioned_descending_link(const ExpansionSet& set, const DescendingLink& full, const Partition& p) {
  (void)set;
  validate_partition(p, static_cast<int>(full.top.size()));
  DescendingLink out;
  out.top = full.top;
  std::vector<int> keep;
  for (int i = 0; i < static_cast<int>(full.vertices.size()); ++i)
    if (lower_in_partition(full.vertices[i], p)) {
      keep.push_back(i);
      out.vertices.push_back(full.vertices[i]);
    }
  out.complex = full.complex.induced(keep);
  return out;
}

std::vector<StandardPartition> standard_cover(int k, int c0, int c1, Kind kind) {
  if (k <= c0) throw TooSmall("standard covers need more than C0 = " + std::to_string(c0) + " elements");
  std::vector<StandardPartition> out;
  auto emit = [&](std::vector<int> principal, int initial) {
    StandardPartition sp;
    sp.principal = principal;
    sp.initial = initial;
    std::sort(principal.begin(), principal.end());
    std::vector<int> rest;
    for (int i = 0; i < k; ++i)
      if (!std::binary_search(principal.begin(), principal.end(), i)) rest.push_back(i);
    sp.partition.blocks = {principal, rest};
    out.push_back(std::move(sp));
  };
  if (kind == Kind::permutational) {
    for (int size = 1; size <= c0; ++size) {
      std::vector<int> idx(size);
      for (int i = 0; i < size; ++i) idx[i] = i;
      while (true) {
        emit(idx, idx[0]);
        int pos = size - 1;
        while (pos >= 0 && idx[pos] == k - size + pos) --pos;
        if (pos < 0) break;
        ++idx[pos];
        for (int j = pos + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
      }
    }
    return out;
  }
  for (int i = 0; i < k; ++i) {
    for (int len = 1; len <= c0; ++len) {
      std::vector<int> principal;
      bool wraps = false;
      for (int t = 0; t < len; ++t) {
        if (i + t >= k) wraps = true;
        principal.push_back((i + t) % k);
      }
      if (kind == Kind::linear) {
        if (wraps || i + 1 > c1) continue;
      } else {
        bool has_first = std::find(principal.begin(), principal.end(), 0) != principal.end();
        if (!has_first && i + 1 > c1) continue;
      }
      emit(principal, i);
    }
  }
  return out;
}

// ---------------------------------------------------------------- filtration

Slice filtration_slice(const ExpansionSet& set, const std::vector<Vertex>& seeds, int n, int radius,
                       std::size_t vertex_budget) {
  Slice out;
  out.height_bound = n;
  out.radius = radius;
  std::map<Vertex, int> index;
  std::vector<Vertex> frontier;
  for (const auto& s : seeds) {
    if (static_cast<int>(s.size()) > n) continue;
    if (index.emplace(s, static_cast<int>(out.vertices.size())).second) {
      out.vertices.push_back(s);
      frontier.push_back(s);
    }
  }
  for (int step = 0; step < radius; ++step) {
    std::vector<Vertex> next;
    for (const auto& u : frontier) {
      std::vector<Vertex> nbrs;
      for (const auto& w : ascending_star(set, u).vertices)
        if (w != u && static_cast<int>(w.size()) <= n) nbrs.push_back(w);
      for (auto& lv : lower_vertices(set, u)) nbrs.push_back(std::move(lv.vertex));
      for (auto& w : nbrs) {
        if (index.emplace(w, static_cast<int>(out.vertices.size())).second) {
          out.vertices.push_back(w);
          next.push_back(std::move(w));
          if (out.vertices.size() > vertex_budget)
            throw BudgetExceeded("filtration slice exceeded " + std::to_string(vertex_budget) + " vertices");
        }
      }
    }
    frontier = std::move(next);
  }
  // Sort by height so that the upward adjacency lists are increasing.
  std::vector<int> order(out.vertices.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return out.vertices[a].size() < out.vertices[b].size(); });
  std::vector<Vertex> sorted;
  for (int i : order) sorted.push_back(out.vertices[i]);
  out.vertices = std::move(sorted);

  const int m = static_cast<int>(out.vertices.size());
  std::vector<std::vector<int>> up(m);
  std::vector<std::string> labels;
  for (int i = 0; i < m; ++i) {
    labels.push_back(set.vertex_label(out.vertices[i]));
    for (int j = 0; j < m; ++j)
      if (out.vertices[j].size() > out.vertices[i].size() && is_simplex(set, {out.vertices[i], out.vertices[j]}))
        up[i].push_back(j);
  }
  out.complex = chain_complex(std::move(labels), up);
  if (out.complex.dimension() > n - 1 && m > 0)
    throw std::logic_error("filtration slice has a simplex of dimension above n - 1");
  return out;
}

// ---------------------------------------------------------------- sampling

Vertex ExpansionSet::random_full_support_vertex(std::mt19937_64& rng, int depth) const {
  Vertex v{root()};
  for (int step = 0; step < depth; ++step) {
    std::uniform_int_distribution<std::size_t> pick(0, v.size() - 1);
    std::size_t at = pick(rng);
    const auto& e = expansions(v[at]);
    std::uniform_int_distribution<std::size_t> node(1, e.nodes.size() - 1);
    const Vertex& w = e.nodes[node(rng)];
    std::vector<ElementId> elems;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (i != at) elems.push_back(v[i]);
    elems.insert(elems.end(), w.begin(), w.end());
    v = make_vertex(std::move(elems));
  }
  if (v.size() >= 2 && v.size() <= 8) {
    auto lows = lower_vertices(*this, v);
    if (!lows.empty()) {
      std::uniform_int_distribution<std::size_t> pick(0, lows.size());
      std::size_t at = pick(rng);
      if (at < lows.size()) v = lows[at].vertex;
    }
  }
  return v;
}

}  // namespace expanse

#include "expanse/instances.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace expanse {

std::vector<Word> random_prefix_code(std::mt19937_64& rng, const Word& under, int leaves, int max_depth) {
  std::vector<Word> code{under};
  while (static_cast<int>(code.size()) < leaves) {
    std::vector<std::size_t> open;
    for (std::size_t i = 0; i < code.size(); ++i)
      if (static_cast<int>(code[i].size() - under.size()) < max_depth) open.push_back(i);
    if (open.empty()) break;
    std::size_t at = open[std::uniform_int_distribution<std::size_t>(0, open.size() - 1)(rng)];
    Word w = code[at];
    code[at] = w + "0";
    code.push_back(w + "1");
  }
  std::sort(code.begin(), code.end());
  return code;
}

void equalize_codes(std::vector<Word>& a, std::vector<Word>& b) {
  if (a.empty() || b.empty()) return;
  while (a.size() != b.size()) {
    auto& s = a.size() < b.size() ? a : b;
    auto it = std::min_element(s.begin(), s.end(), [](const Word& x, const Word& y) {
      return x.size() < y.size() || (x.size() == y.size() && x < y);
    });
    Word w = *it;
    *it = w + "0";
    s.push_back(w + "1");
    std::sort(s.begin(), s.end());
  }
}

std::vector<Word> box_words(const Support& s) {
  std::vector<Word> out;
  for (const auto& b : s) {
    if (b.size() != 1) throw std::invalid_argument("expected one-coordinate boxes");
    out.push_back(b[0]);
  }
  return out;
}

Support word_boxes(const std::vector<Word>& words) {
  Support out;
  for (const auto& w : words) out.push_back(Box{w});
  return out;
}

std::unique_ptr<ExpansionSet> make_instance(const std::string& name) {
  if (name == "v") return std::make_unique<ThompsonV>();
  if (name == "rover") return std::make_unique<Rover>();
  if (name == "rover-literal") return std::make_unique<Rover>(Rover::Twist::right);
  if (name.size() >= 2 && name.back() == 'v') {
    int n = 0;
    try {
      n = std::stoi(name.substr(0, name.size() - 1));
    } catch (const std::exception&) {
      n = 0;
    }
    if (n >= 2 && n <= 6) return std::make_unique<BrinNV>(n);
  }
  throw std::invalid_argument("unknown instance '" + name + "' (expected v, 2v, 3v or rover)");
}

namespace {

std::string node_name(char side, const Word& w) { return std::string(1, side) + "_" + (w.empty() ? "e" : w); }

void draw_tree(std::ostringstream& out, char side, const std::vector<std::pair<Word, int>>& leaves) {
  std::set<Word> inner;
  for (const auto& [w, n] : leaves)
    for (std::size_t l = 0; l < w.size(); ++l) inner.insert(w.substr(0, l));
  std::map<Word, int> numbered(leaves.begin(), leaves.end());
  std::set<Word> nodes(inner);
  for (const auto& w : inner) {
    nodes.insert(w + "0");
    nodes.insert(w + "1");
  }
  if (inner.empty())
    for (const auto& [w, n] : leaves) nodes.insert(w);
  for (const auto& w : nodes) {
    out << "    " << node_name(side, w);
    if (inner.count(w)) {
      out << " [shape=point];\n";
    } else if (auto it = numbered.find(w); it != numbered.end()) {
      out << " [label=\"" << it->second << "\"];\n";
    } else {
      out << " [label=\"\", shape=circle, width=0.1];\n";
    }
  }
  for (const auto& w : inner) {
    out << "    " << node_name(side, w) << " -> " << node_name(side, w + "0") << ";\n";
    out << "    " << node_name(side, w) << " -> " << node_name(side, w + "1") << ";\n";
  }
}

}  // namespace

std::string tree_pair_dot(const TableMap& t) {
  std::vector<std::pair<Word, int>> dom, img;
  int n = 1;
  for (const auto& r : t.rows()) {
    dom.emplace_back(r.dom, n);
    img.emplace_back(r.img, n);
    ++n;
  }
  std::ostringstream out;
  out << "digraph tree_pair {\n  node [shape=plaintext];\n";
  out << "  subgraph cluster_domain {\n    label=\"domain\";\n";
  draw_tree(out, 'd', dom);
  out << "  }\n  subgraph cluster_range {\n    label=\"range\";\n";
  draw_tree(out, 'r', img);
  out << "  }\n}\n";
  return out.str();
}

std::string poset_dot(const ExpansionSet& set, ElementId b) {
  const auto& e = set.expansions(b);
  const std::size_t n = e.nodes.size();
  std::ostringstream out;
  out << "digraph expansions {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < n; ++i) {
    std::string label = set.vertex_label(e.nodes[i]);
    std::string escaped;
    for (char c : label) {
      if (c == '"' || c == '\\') escaped += '\\';
      escaped += c;
    }
    out << "  n" << i << " [label=\"" << escaped << "\"];\n";
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !e.leq[i][j]) continue;
      bool cover = true;
      for (std::size_t m = 0; m < n; ++m)
        if (m != i && m != j && e.leq[i][m] && e.leq[m][j]) cover = false;
      if (cover) out << "  n" << i << " -> n" << j << ";\n";
    }
  out << "}\n";
  return out.str();
}

}  // namespace expanse

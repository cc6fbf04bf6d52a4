#include <algorithm>
#include <map>

#include "expanse/instances.hpp"
#include "expanse/io.hpp"

namespace expanse {

using grig::GrigWord;
using grig::KElement;

namespace {

constexpr KElement kK[] = {KElement::one, KElement::b, KElement::c, KElement::d};

GrigWord k_word(KElement k) { return k == KElement::one ? GrigWord() : GrigWord(1, grig::k_letter(k)); }

const RoverAction& as_rover(const PartialAction& a) {
  auto* p = dynamic_cast<const RoverAction*>(&a);
  if (!p) throw std::invalid_argument("map does not belong to the Roever instance");
  return *p;
}

std::vector<Word> doms(const RoverTable& t) {
  std::vector<Word> out;
  for (const auto& r : t) out.push_back(r.dom);
  return out;
}

std::vector<Word> imgs(const RoverTable& t) {
  std::vector<Word> out;
  for (const auto& r : t) out.push_back(r.img);
  return out;
}

// Decoration of the merged parent row, for sibling rows with nucleus decorations.
std::optional<GrigWord> merge_straight(const GrigWord& w0, const GrigWord& w1) {
  if (w0.empty() && w1.empty()) return GrigWord();
  if (w0 == "a" && w1 == "c") return GrigWord("b");
  if (w0 == "a" && w1 == "d") return GrigWord("c");
  if (w0.empty() && w1 == "b") return GrigWord("d");
  return std::nullopt;
}

RoverTable prefix_row(const Word& dom, const Word& img, const GrigWord& dec = {}) {
  return {RoverRow{dom, img, dec}};
}

}  // namespace

std::optional<Word> rover_apply(const RoverTable& s, const Word& x) {
  for (const auto& r : s)
    if (is_prefix(r.dom, x)) return r.img + grig::act(r.decoration, x.substr(r.dom.size()));
  return std::nullopt;
}

RoverTable rover_compose(const RoverTable& s1, const RoverTable& s2) {
  RoverTable out;
  for (const auto& r2 : s2)
    for (const auto& r1 : s1) {
      if (is_prefix(r1.dom, r2.img)) {
        Word t = r2.img.substr(r1.dom.size());
        out.push_back({r2.dom, r1.img + grig::act(r1.decoration, t),
                       grig::reduce(grig::section_along(r1.decoration, t) + r2.decoration)});
      } else if (is_prefix(r2.img, r1.dom)) {
        Word t = r1.dom.substr(r2.img.size());
        Word pre = grig::act(grig::inverse(r2.decoration), t);
        out.push_back({r2.dom + pre, r1.img, grig::reduce(r1.decoration + grig::section_along(r2.decoration, pre))});
      }
    }
  return rover_normal_form(std::move(out));
}

RoverTable rover_inverse(const RoverTable& s) {
  RoverTable out;
  for (const auto& r : s) out.push_back({r.img, r.dom, grig::reduce(grig::inverse(r.decoration))});
  return rover_normal_form(std::move(out));
}

RoverTable rover_identity_on(const std::vector<Word>& cones) {
  RoverTable out;
  for (const auto& c : cones) out.push_back({c, c, ""});
  return rover_normal_form(std::move(out));
}

RoverTable rover_normal_form(RoverTable s, std::size_t depth_budget) {
  for (auto& r : s) {
    if (!is_binary_word(r.dom) || !is_binary_word(r.img)) throw std::invalid_argument("prefix is not a binary word");
    if (!grig::is_grig_word(r.decoration)) throw std::invalid_argument("decoration is not a Grigorchuk word");
    r.decoration = grig::reduce(r.decoration);
  }
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (comparable(s[i].dom, s[j].dom))
        throw OverlapError("domain prefixes overlap", Box{s[i].dom}, Box{s[j].dom});
      if (comparable(s[i].img, s[j].img))
        throw OverlapError("image prefixes overlap", Box{s[i].img}, Box{s[j].img});
    }

  RoverTable leaves;
  std::vector<std::pair<RoverRow, std::size_t>> work;
  for (auto& r : s) work.emplace_back(std::move(r), 0);
  while (!work.empty()) {
    auto [r, depth] = std::move(work.back());
    work.pop_back();
    if (r.decoration.size() <= 1) {
      leaves.push_back(std::move(r));
      continue;
    }
    if (depth >= depth_budget) throw BudgetExceeded("decoration refinement exceeded its depth budget");
    for (char x : {'0', '1'}) {
      auto sec = grig::section_at(r.decoration, x);
      work.push_back({RoverRow{r.dom + x, r.img + sec.image, grig::reduce(sec.section)}, depth + 1});
    }
  }

  std::map<Word, RoverRow> by_dom;
  for (auto& r : leaves) {
    Word d = r.dom;
    by_dom.emplace(std::move(d), std::move(r));
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = by_dom.begin(); it != by_dom.end(); ++it) {
      const Word& d = it->first;
      if (d.empty() || d.back() != '0') continue;
      Word parent = d.substr(0, d.size() - 1);
      auto sib = by_dom.find(parent + "1");
      if (sib == by_dom.end()) continue;
      const RoverRow& r0 = it->second;
      const RoverRow& r1 = sib->second;
      if (r0.img.empty() || r1.img.size() != r0.img.size()) continue;
      Word q = r0.img.substr(0, r0.img.size() - 1);
      if (r1.img.substr(0, r1.img.size() - 1) != q || r0.img.back() == r1.img.back()) continue;
      std::optional<GrigWord> w;
      if (r0.img.back() == '0') {
        w = merge_straight(r0.decoration, r1.decoration);
      } else if (r0.decoration.empty() && r1.decoration.empty()) {
        w = GrigWord("a");
      }
      if (!w) continue;
      RoverRow merged{parent, q, *w};
      by_dom.erase(sib);
      by_dom.erase(it);
      by_dom.emplace(parent, std::move(merged));
      changed = true;
      break;
    }
  }
  RoverTable out;
  for (auto& [d, r] : by_dom) out.push_back(std::move(r));
  return out;
}

RoverTable rover_twist(const RoverTable& g, KElement k) { return rover_compose(g, prefix_row("", "", k_word(k))); }

nlohmann::json rover_table_to_json(const RoverTable& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : t)
    rows.push_back({{"dom", r.dom}, {"img", r.img}, {"decoration", grig::to_string(r.decoration)}});
  return nlohmann::json{{"rows", rows}};
}

RoverTable rover_table_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.at("rows").is_array())
    throw std::invalid_argument("Roever table JSON must be an object with a \"rows\" array");
  RoverTable out;
  std::size_t i = 0;
  for (const auto& r : j.at("rows")) {
    std::string where = "row " + std::to_string(i++);
    RoverRow row;
    try {
      if (r.is_array() && r.size() == 2) {
        row = {r[0].get<std::string>(), r[1].get<std::string>(), ""};
      } else if (r.is_object()) {
        row.dom = r.at("dom").get<std::string>();
        row.img = r.at("img").get<std::string>();
        if (r.contains("decoration")) row.decoration = grig::parse(r.at("decoration").get<std::string>());
      } else {
        throw std::invalid_argument("expected {dom, img, decoration} or [dom, img]");
      }
    } catch (const std::exception& e) {
      throw std::invalid_argument(where + ": " + e.what());
    }
    if (!is_binary_word(row.dom) || !is_binary_word(row.img))
      throw std::invalid_argument(where + ": prefix is not a binary word");
    out.push_back(std::move(row));
  }
  return out;
}

// ---------------------------------------------------------------- actions

std::optional<ElementId> RoverAction::apply(ElementId b) const {
  if (!support_subset(set_.support(b), domain())) return std::nullopt;
  return set_.element(rover_compose(map_, set_.table(b)));
}

Support RoverAction::domain() const { return word_boxes(doms(map_)); }

Support RoverAction::image_of(const Support& s) const {
  Support out;
  for (const auto& w : box_words(s))
    for (const auto& c : imgs(rover_compose(map_, rover_identity_on({w})))) out.push_back(Box{c});
  return out;
}

nlohmann::json RoverAction::to_json() const { return rover_table_to_json(map_); }

// ---------------------------------------------------------------- the instance

ElementId Rover::element(const RoverTable& g) const {
  if (!dom_partitions_root(doms(g)))
    throw std::invalid_argument("a Roever element needs domain rows that partition the whole space");
  RoverTable best;
  std::string best_key;
  for (KElement k : kK) {
    RoverTable t = rover_twist(g, k);
    std::string key = rover_table_to_json(t).dump();
    if (best_key.empty() || key < best_key) {
      best_key = std::move(key);
      best = std::move(t);
    }
  }
  Support supp = word_boxes(imgs(best));
  return store_.intern(std::move(best_key), std::move(best), std::move(supp));
}

bool Rover::same_class(const RoverTable& g, const RoverTable& h) {
  RoverTable target = rover_normal_form(h);
  for (KElement k : kK)
    if (rover_twist(g, k) == target) return true;
  return false;
}

RoverTable Rover::restricted(ElementId b, const Word& cone, bool twisted) const {
  return rover_compose(table(b), prefix_row("", cone, twisted ? "a" : ""));
}

const ExpansionPoset& Rover::expansions(ElementId b) const {
  auto& entry = store_.get(b);
  {
    std::lock_guard<std::mutex> lock(store_.mutex());
    if (entry.poset) return *entry.poset;
  }
  auto half = [&](const Word& cone, bool twisted) { return element(restricted(b, cone, twisted)); };
  ElementId e0 = half("0", false), e1 = half("1", false);
  auto poset = std::make_unique<ExpansionPoset>();
  poset->nodes.push_back(Vertex{b});
  poset->nodes.push_back(make_vertex({e0, e1}));
  if (twist_ == Twist::left) {
    poset->nodes.push_back(make_vertex({half("0", true), e1}));
    poset->nodes.push_back(make_vertex({half("00", false), half("01", false), e1}));
  } else {
    poset->nodes.push_back(make_vertex({e0, half("1", true)}));
    poset->nodes.push_back(make_vertex({e0, half("10", false), half("11", false)}));
  }
  poset->leq = {{true, true, true, true}, {false, true, false, true}, {false, false, true, true},
                {false, false, false, true}};
  std::lock_guard<std::mutex> lock(store_.mutex());
  if (!entry.poset) entry.poset = std::move(poset);
  return *entry.poset;
}

std::vector<ElementId> Rover::contractions(const Vertex& u) const {
  std::vector<ElementId> out;
  auto consider = [&](const std::vector<std::pair<Word, RoverTable>>& slots) {
    RoverTable g;
    for (const auto& [cone, piece] : slots)
      for (const auto& r : rover_compose(piece, prefix_row(cone, ""))) g.push_back(r);
    ElementId c = element(g);
    const auto& e = expansions(c);
    bool valid = false;
    for (std::size_t i = 1; i < e.nodes.size(); ++i)
      if (e.nodes[i] == u) valid = true;
    if (valid && std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  };
  if (u.size() == 2) {
    std::vector<GrigWord> words;
    for (KElement k : kK) {
      words.push_back(k_word(k));
      words.push_back(k_word(k) + "a");
    }
    for (int order = 0; order < 2; ++order) {
      const RoverTable& p = table(u[order]);
      const RoverTable& q = table(u[1 - order]);
      for (const auto& w1 : words)
        for (const auto& w2 : words)
          consider({{"0", rover_compose(p, prefix_row("", "", w1))}, {"1", rover_compose(q, prefix_row("", "", w2))}});
    }
  } else if (u.size() == 3) {
    const std::vector<Word> cones = twist_ == Twist::left ? std::vector<Word>{"00", "01", "1"}
                                                          : std::vector<Word>{"0", "10", "11"};
    std::vector<int> perm{0, 1, 2};
    do {
      for (KElement k1 : kK)
        for (KElement k2 : kK)
          for (KElement k3 : kK)
            consider({{cones[0], rover_twist(table(u[perm[0]]), k1)},
                      {cones[1], rover_twist(table(u[perm[1]]), k2)},
                      {cones[2], rover_twist(table(u[perm[2]]), k3)}});
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

nlohmann::json Rover::element_json(ElementId b) const { return rover_table_to_json(table(b)); }

ElementId Rover::element_from_json(const nlohmann::json& j) const { return element(rover_table_from_json(j)); }

std::string Rover::element_label(ElementId b) const {
  std::string out = "[";
  const auto& t = table(b);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += " ";
    out += (t[i].dom.empty() ? "e" : t[i].dom) + ">" + (t[i].img.empty() ? "e" : t[i].img);
    if (!t[i].decoration.empty()) out += ":" + t[i].decoration;
  }
  return out + "]";
}

bool Rover::is_atom(ElementId b) const {
  const auto& t = table(b);
  return t.size() == 1 && t[0].decoration.empty();
}

int Rover::orbit_class(ElementId b) const { return dom_partitions_root(imgs(table(b))) ? 0 : 1; }

std::unique_ptr<PartialAction> Rover::glue(const std::vector<std::pair<ElementId, ElementId>>& pairs) const {
  RoverTable gamma;
  Support src, dst;
  for (const auto& [from, to] : pairs) {
    if (!supports_disjoint(src, support(from)) || !supports_disjoint(dst, support(to))) return nullptr;
    for (const auto& r : rover_compose(table(to), rover_inverse(table(from)))) gamma.push_back(r);
    src.insert(src.end(), support(from).begin(), support(from).end());
    dst.insert(dst.end(), support(to).begin(), support(to).end());
  }
  std::vector<Word> rest_src = box_words(support_complement(src, Box{""}));
  std::vector<Word> rest_dst = box_words(support_complement(dst, Box{""}));
  if (rest_src.empty() != rest_dst.empty()) return nullptr;
  equalize_codes(rest_src, rest_dst);
  for (std::size_t i = 0; i < rest_src.size(); ++i) gamma.push_back({rest_src[i], rest_dst[i], ""});
  gamma = rover_normal_form(std::move(gamma));
  if (!dom_partitions_root(doms(gamma))) return nullptr;
  return std::make_unique<RoverAction>(*this, std::move(gamma));
}

std::unique_ptr<PartialAction> Rover::random_map(std::mt19937_64& rng, const Support& cover, bool full) const {
  int leaves = std::uniform_int_distribution<int>(1, 4)(rng);
  auto dom = random_prefix_code(rng, "", leaves, 3);
  auto img = random_prefix_code(rng, "", static_cast<int>(dom.size()), 3);
  equalize_codes(dom, img);
  std::shuffle(img.begin(), img.end(), rng);
  static const char letters[] = {'a', 'b', 'c', 'd'};
  RoverTable t;
  for (std::size_t i = 0; i < dom.size(); ++i) {
    GrigWord w;
    int len = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int l = 0; l < len; ++l) w.push_back(letters[std::uniform_int_distribution<int>(0, 3)(rng)]);
    t.push_back({dom[i], img[i], w});
  }
  t = rover_normal_form(std::move(t));
  if (!full) t = rover_compose(t, rover_identity_on(box_words(cover)));
  return std::make_unique<RoverAction>(*this, std::move(t));
}

std::unique_ptr<PartialAction> Rover::compose(const PartialAction& outer, const PartialAction& inner) const {
  return std::make_unique<RoverAction>(*this, rover_compose(as_rover(outer).map(), as_rover(inner).map()));
}

std::unique_ptr<PartialAction> Rover::identity_on(const Support& s) const {
  return std::make_unique<RoverAction>(*this, rover_identity_on(box_words(s)));
}

StabilizerInfo Rover::stabilizer(ElementId b) const {
  StabilizerInfo info;
  info.isomorphism_type = "Klein four group";
  const RoverTable& g = table(b);
  RoverTable g_inv = rover_inverse(g);
  std::vector<RoverTable> members;
  nlohmann::json elems = nlohmann::json::array();
  bool ok = true;
  for (KElement k : kK) {
    RoverTable s = rover_compose(rover_twist(g, k), g_inv);
    if (RoverAction(*this, s).apply(b) != b) ok = false;
    elems.push_back({{"k", std::string(1, grig::k_letter(k))}, {"map", rover_table_to_json(s)}});
    members.push_back(std::move(s));
  }
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = i + 1; j < members.size(); ++j)
      if (members[i] == members[j]) ok = false;
  nlohmann::json products = nlohmann::json::array();
  for (std::size_t i = 0; i < 4; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < 4; ++j) {
      RoverTable prod = rover_compose(members[i], members[j]);
      auto it = std::find(members.begin(), members.end(), prod);
      if (it == members.end()) {
        ok = false;
        row.push_back(-1);
      } else {
        std::size_t idx = static_cast<std::size_t>(it - members.begin());
        if (idx != static_cast<std::size_t>(grig::k_mul(kK[i], kK[j]))) ok = false;
        row.push_back(idx);
      }
    }
    products.push_back(row);
  }
  info.order = members.size();
  info.verified = ok;
  info.witness = nlohmann::json{{"elements", elems}, {"products", products}};
  return info;
}

}  // namespace expanse

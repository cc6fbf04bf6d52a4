#include "expanse/verify.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <set>

#include "expanse/io.hpp"

namespace expanse {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "inconclusive";
  }
}

Verdict verdict_from_string(const std::string& s) {
  if (s == "pass") return Verdict::pass;
  if (s == "fail") return Verdict::fail;
  if (s == "inconclusive") return Verdict::inconclusive;
  throw std::invalid_argument("unknown verdict '" + s + "'");
}

nlohmann::json CheckReport::to_json() const {
  return {{"check", check}, {"instance", instance}, {"params", params},
          {"verdict", to_string(verdict)}, {"witness", witness}, {"ms", ms}};
}

CheckReport CheckReport::from_json(const nlohmann::json& j) {
  CheckReport r;
  r.check = j.at("check").get<std::string>();
  r.instance = j.at("instance").get<std::string>();
  r.params = j.at("params");
  r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  r.witness = j.at("witness");
  r.ms = j.at("ms").get<long long>();
  return r;
}

Verdict combine(const std::vector<CheckReport>& reports) {
  bool inconclusive = false;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::fail) return Verdict::fail;
    if (r.verdict == Verdict::inconclusive) inconclusive = true;
  }
  return inconclusive ? Verdict::inconclusive : Verdict::pass;
}

std::vector<CheckReport> merge_reports(std::vector<CheckReport> reports) {
  std::stable_sort(reports.begin(), reports.end(), [](const CheckReport& a, const CheckReport& b) {
    return std::tie(a.check, a.instance) < std::tie(b.check, b.instance);
  });
  return reports;
}

namespace {

template <class F>
CheckReport timed(std::string check, std::string instance, nlohmann::json params, F&& body) {
  CheckReport r;
  r.check = std::move(check);
  r.instance = std::move(instance);
  r.params = std::move(params);
  auto t0 = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const BudgetExceeded& e) {
    r.verdict = Verdict::inconclusive;
    r.witness["budget_exceeded"] = e.what();
  }
  r.ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

void fail(CheckReport& r, const std::string& why, nlohmann::json counterexample) {
  if (r.verdict == Verdict::fail) return;
  r.verdict = Verdict::fail;
  r.witness["failure"] = why;
  r.witness["counterexample"] = std::move(counterexample);
}

template <class T>
T pick(std::mt19937_64& rng, const std::vector<T>& xs) {
  return xs[std::uniform_int_distribution<std::size_t>(0, xs.size() - 1)(rng)];
}

Vertex replace_element(const ExpansionSet& set, const Vertex& v, std::size_t at, const Vertex& with) {
  std::vector<ElementId> elems;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (i != at) elems.push_back(v[i]);
  elems.insert(elems.end(), with.begin(), with.end());
  return set.make_vertex(std::move(elems));
}

// A vertex obtained from v by `steps` random single-element expansions.
Vertex random_expansion(const ExpansionSet& set, std::mt19937_64& rng, Vertex v, int steps) {
  for (int s = 0; s < steps; ++s) {
    std::size_t at = std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng);
    const auto& e = set.expansions(v[at]);
    std::size_t node = std::uniform_int_distribution<std::size_t>(1, e.nodes.size() - 1)(rng);
    v = replace_element(set, v, at, e.nodes[node]);
  }
  return v;
}

bool same_support(const Support& a, const Support& b) { return support_subset(a, b) && support_subset(b, a); }

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

// ---------------------------------------------------------------- sampling

Vertex random_vertex_of_height(const ExpansionSet& set, std::mt19937_64& rng, int k) {
  if (k < 1) throw std::invalid_argument("height must be positive");
  Vertex v{set.root()};
  while (static_cast<int>(v.size()) < k) {
    const int room = k - static_cast<int>(v.size());
    std::vector<std::pair<std::size_t, std::size_t>> moves;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto& e = set.expansions(v[i]);
      for (std::size_t n = 1; n < e.nodes.size(); ++n)
        if (static_cast<int>(e.nodes[n].size()) - 1 <= room) moves.emplace_back(i, n);
    }
    if (moves.empty()) throw std::logic_error("no expansion fits the requested height");
    auto [at, node] = pick(rng, moves);
    v = replace_element(set, v, at, set.expansions(v[at]).nodes[node]);
  }
  auto gamma = set.random_map(rng, {}, true);
  auto moved = act_on_vertex(set, *gamma, v);
  return moved ? *moved : v;
}

std::vector<int> type_vector(const ExpansionSet& set, const Vertex& v) {
  std::vector<int> out(set.orbit_count(), 0);
  for (ElementId b : v) ++out.at(set.orbit_class(b));
  return out;
}

std::unique_ptr<PartialAction> match_by_type(const ExpansionSet& set, const Vertex& v1, const Vertex& v2) {
  if (type_vector(set, v1) != type_vector(set, v2)) return nullptr;
  std::map<int, std::vector<ElementId>> a, b;
  for (ElementId x : v1) a[set.orbit_class(x)].push_back(x);
  for (ElementId x : v2) b[set.orbit_class(x)].push_back(x);
  std::vector<std::pair<ElementId, ElementId>> pairs;
  for (auto& [cls, xs] : a)
    for (std::size_t i = 0; i < xs.size(); ++i) pairs.emplace_back(xs[i], b[cls][i]);
  return set.glue(pairs);
}

std::optional<Vertex> act_on_vertex(const ExpansionSet& set, const PartialAction& s, const Vertex& v) {
  std::vector<ElementId> out;
  for (ElementId b : v) {
    auto img = s.apply(b);
    if (!img) return std::nullopt;
    out.push_back(*img);
  }
  return set.make_vertex(std::move(out));
}

// ---------------------------------------------------------------- directed set

bool is_full_support(const ExpansionSet& set, const Vertex& v) {
  return support_subset(Support{Box(set.dims(), "")}, set.vertex_support(v));
}

Support atom_cells(const ExpansionSet& set, ElementId b, int max_depth) {
  if (set.is_atom(b)) return set.support(b);
  if (max_depth == 0) throw BudgetExceeded("atom refinement exceeded its depth budget");
  Support out;
  for (ElementId x : set.expansions(b).nodes.back()) {
    Support sub = atom_cells(set, x, max_depth - 1);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

UpperBound common_upper_bound(const ExpansionSet& set, const Vertex& v1, const Vertex& v2, std::size_t budget) {
  if (!is_full_support(set, v1) || !is_full_support(set, v2))
    throw std::invalid_argument("common upper bounds are computed for full-support vertices");
  if (v1 == v2) return {v1, {v1}, {v2}};
  Support c1, c2;
  for (ElementId b : v1) {
    Support s = atom_cells(set, b);
    c1.insert(c1.end(), s.begin(), s.end());
  }
  for (ElementId b : v2) {
    Support s = atom_cells(set, b);
    c2.insert(c2.end(), s.begin(), s.end());
  }
  std::vector<ElementId> atoms;
  for (const auto& a : c1)
    for (const auto& b : c2) {
      if (boxes_disjoint(a, b)) continue;
      Box cell(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) cell[i] = a[i].size() >= b[i].size() ? a[i] : b[i];
      atoms.push_back(set.atom(cell));
    }
  Vertex top = set.make_vertex(std::move(atoms));
  auto s1 = expansion_leq(set, v1, top, budget);
  auto s2 = expansion_leq(set, v2, top, budget);
  if (!s1 || !s2) throw std::logic_error("the common refinement is not above both vertices");
  return {top, *s1, *s2};
}

int descending_threshold(Kind kind, int n, int c0, int c1) {
  switch (kind) {
    case Kind::linear: return (n + 2) * c1 + (n + 1) * c0 - (n + 1);
    case Kind::cyclic: return (n + 2) * c1 + (n + 2) * c0 - (n + 2);
    default: return (2 * n + 2) * c0 + c1;
  }
}

// ---------------------------------------------------------------- template

std::vector<CheckReport> check_template(const ExpansionSet& set, int depth, int samples, std::uint64_t seed) {
  const nlohmann::json params{{"depth", depth}, {"samples", samples}, {"seed", seed}};
  std::mt19937_64 rng(seed);
  std::vector<Vertex> verts;
  for (int i = 0; i < samples; ++i) verts.push_back(set.random_full_support_vertex(rng, depth));
  std::vector<ElementId> elems{set.root()};
  for (const auto& v : verts)
    for (ElementId b : v) elems.push_back(b);
  for (const auto& v : verts)
    for (ElementId b : v)
      for (const auto& node : set.expansions(b).nodes)
        for (ElementId x : node) elems.push_back(x);
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());

  std::vector<CheckReport> out;
  std::vector<std::pair<Vertex, Vertex>> tops;

  out.push_back(timed("template.directed", set.id(), params, [&](CheckReport& r) {
    r.verdict = Verdict::pass;
    int certified = 0;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      const Vertex& a = verts[i];
      const Vertex& b = verts[(i + 1) % verts.size()];
      UpperBound ub = common_upper_bound(set, a, b);
      bool ok = !ub.from_first.empty() && ub.from_first.front() == a && ub.from_first.back() == ub.top &&
                !ub.from_second.empty() && ub.from_second.front() == b && ub.from_second.back() == ub.top &&
                sequence_valid(set, ub.from_first) && sequence_valid(set, ub.from_second);
      if (!ok) {
        fail(r, "upper bound certificate does not replay", {{"v1", set.vertex_json(a)}, {"v2", set.vertex_json(b)}});
        continue;
      }
      ++certified;
      tops.emplace_back(a, ub.top);
      if (certified == 1)
        r.witness["example"] = {{"v1", set.vertex_json(a)}, {"v2", set.vertex_json(b)},
                                {"upper_bound", set.vertex_json(ub.top)},
                                {"steps", {ub.from_first.size() - 1, ub.from_second.size() - 1}}};
    }
    r.witness["certified_pairs"] = certified;
  }));

  out.push_back(timed("template.relative_links", set.id(), params, [&](CheckReport& r) {
    r.verdict = Verdict::pass;
    for (const auto& v : verts) tops.emplace_back(v, random_expansion(set, rng, v, 2));
    std::map<std::string, int> shapes;
    int certified = 0;
    for (const auto& [v, top] : tops) {
      for (ElementId b : v) {
        Vertex above = restriction(set, b, top);
        if (above == Vertex{b}) continue;
        AscendingLink rel = relative_ascending_link(set, {b}, above);
        CollapseResult c = greedy_collapse(rel.link);
        if (!c.collapsible) {
          fail(r, "relative ascending link is not collapse-certified",
               {{"element", set.element_json(b)}, {"above", set.vertex_json(above)}, {"link", complex_to_json(rel.link)}});
          continue;
        }
        ++certified;
        shapes[std::to_string(rel.link.simplices(0).size()) + " vertices, " +
               std::to_string(rel.link.dimension() >= 1 ? rel.link.simplices(1).size() : 0) + " edges"]++;
      }
    }
    r.witness["certified_links"] = certified;
    r.witness["shapes"] = shapes;
    if (certified == 0) fail(r, "no relative ascending link was sampled", nullptr);
  }));

  out.push_back(timed("template.stabilizers", set.id(), params, [&](CheckReport& r) {
    r.verdict = Verdict::pass;
    std::set<std::size_t> orders;
    std::size_t max_nodes = 0;
    for (ElementId b : elems) {
      StabilizerInfo info = set.stabilizer(b);
      orders.insert(info.order);
      if (!info.verified) fail(r, "stabilizer table did not verify", set.element_json(b));
      const auto& e = set.expansions(b);
      max_nodes = std::max(max_nodes, e.nodes.size());
      if (e.nodes.empty()) fail(r, "empty expansion poset", set.element_json(b));
      if (r.witness.find("example") == r.witness.end())
        r.witness["example"] = {{"element", set.element_json(b)}, {"type", info.isomorphism_type}, {"table", info.witness}};
    }
    if (orders.size() != 1) fail(r, "stabilizer orders differ between elements", nlohmann::json(orders));
    r.witness["stabilizer_order"] = orders.empty() ? 0 : *orders.begin();
    r.witness["isomorphism_type"] = set.stabilizer(set.root()).isomorphism_type;
    r.witness["elements_checked"] = elems.size();
    r.witness["max_expansion_poset_size"] = max_nodes;
  }));

  out.push_back(timed("template.orbits", set.id(), params, [&](CheckReport& r) {
    r.verdict = Verdict::pass;
    std::map<int, std::vector<ElementId>> classes;
    for (ElementId b : elems) classes[set.orbit_class(b)].push_back(b);
    int translators = 0;
    for (const auto& [cls, members] : classes) {
      ElementId rep = members.front();
      for (ElementId b : members) {
        auto gamma = set.glue({{rep, b}});
        if (!gamma || gamma->apply(rep) != b) {
          fail(r, "no translator within one orbit class", {{"from", set.element_json(rep)}, {"to", set.element_json(b)}});
          continue;
        }
        ++translators;
        if (b != rep && !r.witness.contains("translator"))
          r.witness["translator"] = {{"from", set.element_json(rep)}, {"to", set.element_json(b)}, {"map", gamma->to_json()}};
      }
      for (const auto& [other, others] : classes)
        if (other != cls && set.glue({{rep, others.front()}}))
          fail(r, "elements of different classes were glued",
               {{"from", set.element_json(rep)}, {"to", set.element_json(others.front())}});
    }
    if (static_cast<int>(classes.size()) != set.orbit_count())
      fail(r, "sample does not meet every declared orbit", static_cast<int>(classes.size()));
    r.witness["orbit_count"] = set.orbit_count();
    nlohmann::json sizes = nlohmann::json::object();
    for (const auto& [cls, members] : classes) sizes[std::to_string(cls)] = members.size();
    r.witness["class_sizes"] = sizes;
    r.witness["translators_verified"] = translators;
  }));

  out.push_back(timed("template.constants", set.id(), params, [&](CheckReport& r) {
    r.verdict = Verdict::pass;
    std::size_t c0 = 0;
    for (ElementId b : elems) c0 = std::max(c0, set.expansions(b).max_height());
    if (static_cast<int>(c0) != set.c0()) fail(r, "largest expansion height differs from C0", static_cast<int>(c0));
    std::size_t pairs = 0, least = SIZE_MAX, most = 0;
    for (const auto& v : verts)
      for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j) {
          Vertex u = set.make_vertex({v[i], v[j]});
          auto cs = set.contractions(u);
          ++pairs;
          least = std::min(least, cs.size());
          most = std::max(most, cs.size());
          if (static_cast<int>(cs.size()) < 1)
            fail(r, "a pair of disjoint elements has no contraction", set.vertex_json(u));
          for (ElementId c : cs) {
            bool found = false;
            for (const auto& node : set.expansions(c).nodes) found = found || node == u;
            if (!found) fail(r, "contraction does not re-expand to the pair", set.element_json(c));
          }
          if (!cs.empty() && !r.witness.contains("example"))
            r.witness["example"] = {{"pair", set.vertex_json(u)}, {"contraction", set.element_json(cs.front())}};
        }
    if (pairs == 0) {
      Vertex v = random_vertex_of_height(set, rng, 2);
      auto cs = set.contractions(v);
      pairs = 1;
      least = most = cs.size();
      if (cs.empty()) fail(r, "a pair of disjoint elements has no contraction", set.vertex_json(v));
    }
    r.witness["c0"] = c0;
    r.witness["c1"] = set.c1();
    r.witness["pairs_checked"] = pairs;
    r.witness["contractions_per_pair"] = {least, most};
  }));
  return out;
}

// ---------------------------------------------------------------- descending links

CheckReport check_descending_bound_at(const ExpansionSet& set, const Vertex& v, int n) {
  const int k = static_cast<int>(v.size());
  return timed("bound", set.id(), {{"k", k}, {"n", n}}, [&](CheckReport& r) {
    DescendingLink dl = descending_link(set, v);
    HomologyReport h = reduced_homology(dl.complex, std::max(n, 0), false);
    const int threshold = descending_threshold(set.kind(), n, set.c0(), set.c1());
    const bool assert_nonempty = k >= set.c1();
    const bool assert_connected = n >= 0 && k >= threshold;
    r.verdict = Verdict::pass;
    if (assert_nonempty && dl.vertices.empty()) fail(r, "descending link is empty", set.vertex_json(v));
    if (assert_connected && !h.homologically_connected(n))
      fail(r, "descending link is not homologically n-connected", set.vertex_json(v));
    r.witness["vertex"] = set.vertex_json(v);
    r.witness["threshold"] = threshold;
    r.witness["asserted_nonempty"] = assert_nonempty;
    r.witness["asserted_connected"] = assert_connected;
    r.witness["link_vertices"] = dl.vertices.size();
    r.witness["link_simplices"] = dl.complex.simplex_count();
    r.witness["link_dimension"] = dl.complex.dimension();
    r.witness["homology"] = homology_to_json(h);
  });
}

CheckReport check_descending_bound(const ExpansionSet& set, int k, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  CheckReport r = check_descending_bound_at(set, random_vertex_of_height(set, rng, k), n);
  r.params["seed"] = seed;
  return r;
}

CheckReport check_cover_and_nerve_at(const ExpansionSet& set, const Vertex& v, int families, std::uint64_t seed) {
  const int k = static_cast<int>(v.size());
  return timed("cover", set.id(), {{"k", k}, {"families", families}, {"seed", seed}}, [&](CheckReport& r) {
    std::mt19937_64 rng(seed);
    r.verdict = Verdict::pass;
    DescendingLink dl = descending_link(set, v);
    auto cover = standard_cover(k, set.c0(), set.c1(), set.kind());
    std::vector<std::vector<int>> members;
    for (const auto& sp : cover) {
      std::vector<int> m;
      for (int i = 0; i < static_cast<int>(dl.vertices.size()); ++i)
        if (lower_in_partition(dl.vertices[i], sp.partition)) m.push_back(i);
      members.push_back(std::move(m));
    }
    for (const auto& s : dl.complex.maximal_simplices()) {
      bool covered = false;
      for (const auto& m : members) {
        if (std::includes(m.begin(), m.end(), s.begin(), s.end())) {
          covered = true;
          break;
        }
      }
      if (!covered) {
        nlohmann::json labels = nlohmann::json::array();
        for (int i : s) labels.push_back(dl.complex.labels()[i]);
        fail(r, "a simplex of the descending link lies in no member of the cover",
             {{"vertex", set.vertex_json(v)}, {"simplex", labels}});
      }
    }

    int checked = 0;
    for (int f = 0; f < families && cover.size() >= 2; ++f) {
      int t = std::uniform_int_distribution<int>(2, std::min<int>(4, static_cast<int>(cover.size())))(rng);
      std::vector<int> idx(cover.size());
      std::iota(idx.begin(), idx.end(), 0);
      std::shuffle(idx.begin(), idx.end(), rng);
      idx.resize(t);
      std::sort(idx.begin(), idx.end());
      Partition meet = cover[idx[0]].partition;
      std::vector<int> common = members[idx[0]];
      for (int s = 1; s < t; ++s) {
        meet = partition_meet(meet, cover[idx[s]].partition);
        std::vector<int> next;
        std::set_intersection(common.begin(), common.end(), members[idx[s]].begin(), members[idx[s]].end(),
                              std::back_inserter(next));
        common = std::move(next);
      }
      DescendingLink meet_link = partitioned_descending_link(set, dl, meet);
      if (!(meet_link.complex == dl.complex.induced(common)))
        fail(r, "intersection of partitioned links differs from the link of the meet",
             {{"vertex", set.vertex_json(v)}, {"family", idx}, {"meet", partition_to_json(meet)}});
      ++checked;
    }
    r.witness["families_checked"] = checked;

    // A contraction straddling the two blocks of {{1,2},{3..k}} is excluded.
    if (k >= 3) {
      Partition p;
      p.blocks = {{0, 1}, {}};
      for (int i = 2; i < k; ++i) p.blocks[1].push_back(i);
      bool found = false;
      for (const auto& u : dl.vertices)
        if (u.productions.size() == 1 && u.productions[0].mask == 0b110) {
          found = true;
          if (lower_in_partition(u, p)) fail(r, "a straddling contraction was kept", set.vertex_json(u.vertex));
        }
      r.witness["straddling_contraction_excluded"] = found;
    }

    int t_max = 0;
    while ((t_max + 1) * set.c0() + set.c1() <= k) ++t_max;
    const int m = static_cast<int>(members.size());
    const int max_dim = std::min(m - 1, std::max(t_max, 1));
    Complex nv = nerve(members, max_dim);
    bool claimed_faces = true;
    for (int t = 1; t <= std::min(t_max, m); ++t)
      if (static_cast<long long>(nv.simplices(t - 1).size()) != binomial(m, t)) claimed_faces = false;
    if (set.kind() == Kind::permutational && !claimed_faces)
      fail(r, "some small family of cover members has empty intersection", set.vertex_json(v));
    const int claimed = t_max - 2;
    HomologyReport h = reduced_homology(nv, std::max(std::min(claimed, max_dim - 1), 0), false);
    if (set.kind() == Kind::permutational && claimed >= -1 && !h.homologically_connected(claimed))
      fail(r, "nerve is less connected than claimed", set.vertex_json(v));
    bool full_simplex = true;
    for (int d = 0; d <= max_dim; ++d)
      if (static_cast<long long>(nv.simplices(d).size()) != binomial(m, d + 1)) full_simplex = false;
    r.witness["vertex"] = set.vertex_json(v);
    r.witness["cover_size"] = m;
    r.witness["link_vertices"] = dl.vertices.size();
    r.witness["nerve"] = {{"faces_checked_up_to_dimension", max_dim},
                          {"full_simplex_up_to_that_dimension", full_simplex},
                          {"all_families_of_size_at_most", t_max},
                          {"claimed_connectivity", claimed},
                          {"homology", homology_to_json(h)}};
  });
}

CheckReport check_cover_and_nerve(const ExpansionSet& set, int k, int families, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return check_cover_and_nerve_at(set, random_vertex_of_height(set, rng, k), families, seed);
}

// ---------------------------------------------------------------- joins

namespace {

Complex random_complex(std::mt19937_64& rng, int max_vertices) {
  int n = std::uniform_int_distribution<int>(1, max_vertices)(rng);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  Complex k(labels);
  int faces = std::uniform_int_distribution<int>(0, 4)(rng);
  for (int f = 0; f < faces; ++f) {
    int size = std::uniform_int_distribution<int>(1, std::min(n, 3))(rng);
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(size);
    std::sort(all.begin(), all.end());
    k.add_simplex(all);
  }
  return k;
}

}  // namespace

CheckReport check_join_lemma(int trials, std::uint64_t seed) {
  return timed("join", "none", {{"trials", trials}, {"seed", seed}}, [&](CheckReport& r) {
    std::mt19937_64 rng(seed);
    r.verdict = Verdict::pass;
    std::map<int, int> bounds;
    for (int t = 0; t < trials; ++t) {
      Complex a = random_complex(rng, 5);
      Complex b = random_complex(rng, 5);
      int na = reduced_homology(a, a.dimension() + 1, false).connectivity();
      int nb = reduced_homology(b, b.dimension() + 1, false).connectivity();
      Complex j = join(a, b);
      int bound = na + nb + 2;
      bounds[bound]++;
      HomologyReport h = reduced_homology(j, std::max(bound, 0), false);
      if (!h.homologically_connected(bound))
        fail(r, "join is less connected than the lemma claims",
             {{"first", complex_to_json(a)}, {"second", complex_to_json(b)}, {"n1", na}, {"n2", nb}});
    }
    r.witness["trials"] = trials;
    nlohmann::json hist = nlohmann::json::object();
    for (const auto& [b, c] : bounds) hist[std::to_string(b)] = c;
    r.witness["bound_histogram"] = hist;
  });
}

// ---------------------------------------------------------------- ascending stars

CheckReport check_ascending_factorizations(const ExpansionSet& set, int samples, int max_height, std::uint64_t seed) {
  return timed("ascending", set.id(), {{"samples", samples}, {"max_height", max_height}, {"seed", seed}},
               [&](CheckReport& r) {
    std::mt19937_64 rng(seed);
    r.verdict = Verdict::pass;
    nlohmann::json rows = nlohmann::json::array();
    for (int s = 0; s < samples; ++s) {
      int h = std::uniform_int_distribution<int>(1, max_height)(rng);
      Vertex v = random_vertex_of_height(set, rng, h);
      AscendingStar star = ascending_star(set, v);
      std::size_t expected = 1;
      for (ElementId b : v) expected *= set.expansions(b).nodes.size();
      if (star.vertices.size() != expected) fail(r, "star size differs from the product size", set.vertex_json(v));
      std::set<Vertex> distinct(star.vertices.begin(), star.vertices.end());
      if (distinct.size() != star.vertices.size()) fail(r, "star vertices repeat", set.vertex_json(v));
      const std::size_t n = star.vertices.size();
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t i = 0; i < v.size(); ++i)
          if (set.expansions(v[i]).find(restriction(set, v[i], star.vertices[a])) != star.coords[a][i])
            fail(r, "restriction does not recover the product coordinates", set.vertex_json(star.vertices[a]));
        for (std::size_t c = 0; c < n; ++c) {
          if (a == c) continue;
          bool edge = star.vertices[a].size() < star.vertices[c].size() &&
                      is_simplex(set, {star.vertices[a], star.vertices[c]});
          if (edge != static_cast<bool>(star.leq[a][c]))
            fail(r, "product order and simplices disagree",
                 {{"lower", set.vertex_json(star.vertices[a])}, {"upper", set.vertex_json(star.vertices[c])}});
        }
      }
      AscendingLink link = ascending_link(set, v);
      int deg = std::max(link.link.dimension(), link.join_form.dimension()) + 1;
      HomologyReport hl = reduced_homology(link.link, deg, true);
      HomologyReport hj = reduced_homology(link.join_form, deg, true);
      if (hl.betti_gf2 != hj.betti_gf2 || hl.betti_q != hj.betti_q || hl.empty != hj.empty)
        fail(r, "ascending link and the join of element links have different homology", set.vertex_json(v));

      Vertex top = random_expansion(set, rng, v, 2);
      AscendingLink rel = relative_ascending_link(set, v, top);
      std::vector<std::vector<bool>> allowed(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) {
        const auto& e = set.expansions(v[i]);
        Vertex target = restriction(set, v[i], top);
        for (const auto& node : e.nodes) allowed[i].push_back(expansion_leq(set, node, target).has_value());
      }
      std::size_t expected_rel = 0;
      for (std::size_t a = 0; a < n; ++a) {
        bool in_product = true;
        for (std::size_t i = 0; i < v.size(); ++i) in_product = in_product && allowed[i][star.coords[a][i]];
        bool below_top = expansion_leq(set, star.vertices[a], top).has_value();
        if (in_product != below_top)
          fail(r, "relative star differs from the product of relative posets", set.vertex_json(star.vertices[a]));
        if (in_product) ++expected_rel;
      }
      if (rel.star.vertices.size() != expected_rel)
        fail(r, "relative star has the wrong size", {{"vertex", set.vertex_json(v)}, {"top", set.vertex_json(top)}});
      int rdeg = std::max(rel.link.dimension(), rel.join_form.dimension()) + 1;
      HomologyReport rl = reduced_homology(rel.link, rdeg, false);
      HomologyReport rj = reduced_homology(rel.join_form, rdeg, false);
      if (rl.betti_gf2 != rj.betti_gf2 || rl.empty != rj.empty)
        fail(r, "relative ascending link and the relative join differ in homology", set.vertex_json(v));
      rows.push_back({{"height", h}, {"star_vertices", n}, {"link_collapse", hl.collapse},
                      {"join_collapse", hj.collapse}, {"relative_star_vertices", rel.star.vertices.size()}});
    }
    r.witness["samples"] = rows;
  });
}

// ---------------------------------------------------------------- the action

CheckReport check_action(const ExpansionSet& set, int samples, std::uint64_t seed) {
  return timed("action", set.id(), {{"samples", samples}, {"seed", seed}}, [&](CheckReport& r) {
    std::mt19937_64 rng(seed);
    r.verdict = Verdict::pass;
    int glued = 0;
    for (int s = 0; s < samples; ++s) {
      Vertex v = set.random_full_support_vertex(rng, 2);
      auto gamma = set.random_map(rng, {}, true);
      auto gamma2 = set.random_map(rng, {}, true);
      auto both = set.compose(*gamma, *gamma2);
      auto id = set.identity_on(set.vertex_support(v));
      auto moved = act_on_vertex(set, *gamma, v);
      if (!moved) {
        fail(r, "a full-support map is undefined on a vertex", {{"vertex", set.vertex_json(v)}, {"map", gamma->to_json()}});
        continue;
      }
      if (moved->size() != v.size() || !is_full_support(set, *moved))
        fail(r, "the action changed the height or the support", set.vertex_json(v));
      for (ElementId b : v) {
        ElementId gb = *gamma->apply(b);
        if (!same_support(set.support(gb), gamma->image_of(set.support(b))))
          fail(r, "supp(s.b) differs from s(supp(b))", {{"element", set.element_json(b)}, {"map", gamma->to_json()}});
        if (id->apply(b) != b) fail(r, "identity moved an element", set.element_json(b));
        auto inner = gamma2->apply(b);
        if (!inner || gamma->apply(*inner) != both->apply(b))
          fail(r, "action is not associative", {{"element", set.element_json(b)}});
        auto partial = set.random_map(rng, set.support(b), false);
        auto pb = partial->apply(b);
        if (!pb || !same_support(set.support(*pb), partial->image_of(set.support(b))))
          fail(r, "partial map with large enough domain misbehaves",
               {{"element", set.element_json(b)}, {"map", partial->to_json()}});
        const auto& e = set.expansions(b);
        const auto& eg = set.expansions(gb);
        std::vector<int> image;
        for (const auto& node : e.nodes) {
          auto mn = act_on_vertex(set, *gamma, node);
          image.push_back(mn ? eg.find(*mn) : -1);
        }
        std::vector<int> sorted = image;
        std::sort(sorted.begin(), sorted.end());
        bool bijective = sorted.size() == eg.nodes.size() && sorted.front() >= 0 &&
                         std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
        for (std::size_t i = 0; bijective && i < image.size(); ++i)
          for (std::size_t j = 0; j < image.size(); ++j)
            if (e.leq[i][j] != eg.leq[image[i]][image[j]]) bijective = false;
        if (!bijective)
          fail(r, "induced map of expansion posets is not an order bijection",
               {{"element", set.element_json(b)}, {"map", gamma->to_json()}});
      }
      Vertex up = random_expansion(set, rng, v, 1);
      auto moved_up = act_on_vertex(set, *gamma, up);
      if (!moved_up || !is_simplex(set, {*moved, *moved_up}))
        fail(r, "an edge was not carried to an edge", {{"lower", set.vertex_json(v)}, {"upper", set.vertex_json(up)}});

      int h = std::uniform_int_distribution<int>(2, 3)(rng);
      Vertex v1 = random_vertex_of_height(set, rng, h);
      Vertex v2 = random_vertex_of_height(set, rng, h);
      if (type_vector(set, v1) == type_vector(set, v2)) {
        auto g = match_by_type(set, v1, v2);
        auto image = g ? act_on_vertex(set, *g, v1) : std::nullopt;
        if (!image || *image != v2)
          fail(r, "vertices with equal type vectors were not matched",
               {{"first", set.vertex_json(v1)}, {"second", set.vertex_json(v2)}});
        else if (++glued == 1)
          r.witness["matched"] = {{"first", set.vertex_json(v1)}, {"second", set.vertex_json(v2)}, {"map", g->to_json()},
                                  {"type_vector", type_vector(set, v1)}};
      }
    }
    r.witness["samples"] = samples;
    r.witness["type_vector_matches"] = glued;
  });
}

CheckReport check_axioms(const ExpansionSet& set, int samples, int depth, std::uint64_t seed) {
  return timed("axioms", set.id(), {{"samples", samples}, {"depth", depth}, {"seed", seed}}, [&](CheckReport& r) {
    std::mt19937_64 rng(seed);
    r.verdict = Verdict::pass;
    std::set<ElementId> seen;
    for (int s = 0; s < samples; ++s) {
      Vertex v = set.random_full_support_vertex(rng, depth);
      for (ElementId b : v) {
        if (!seen.insert(b).second) continue;
        AxiomReport a = check_expansion_axioms(set, b);
        if (!a.ok) fail(r, a.failure, set.element_json(b));
      }
    }
    r.witness["elements_checked"] = seen.size();
  });
}

CheckReport check_filtration(const ExpansionSet& set, int n, int radius, std::uint64_t seed) {
  return timed("filtration", set.id(), {{"n", n}, {"radius", radius}, {"seed", seed}}, [&](CheckReport& r) {
    std::mt19937_64 rng(seed);
    r.verdict = Verdict::pass;
    std::vector<Vertex> seeds{Vertex{set.root()}, random_vertex_of_height(set, rng, std::max(1, n - 1))};
    Slice slice;
    try {
      slice = filtration_slice(set, seeds, n, radius);
    } catch (const std::logic_error& e) {
      fail(r, e.what(), nullptr);
      return;
    }
    if (slice.complex.dimension() > n - 1) fail(r, "slice dimension exceeds n - 1", slice.complex.dimension());
    auto gamma = set.random_map(rng, {}, true);
    for (const auto& v : slice.vertices) {
      auto moved = act_on_vertex(set, *gamma, v);
      if (!moved || static_cast<int>(moved->size()) > n || is_full_support(set, v) != is_full_support(set, *moved))
        fail(r, "a full-support map left the filtration level", set.vertex_json(v));
    }
    r.witness["slice_vertices"] = slice.vertices.size();
    r.witness["slice_dimension"] = slice.complex.dimension();
  });
}

}  // namespace expanse

#include <cstdlib>
#include <future>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "expanse/expansion.hpp"
#include "expanse/instances.hpp"
#include "expanse/io.hpp"
#include "expanse/verify.hpp"

using namespace expanse;

namespace {

enum Exit { ok = 0, failed = 1, usage = 2, inconclusive = 3 };

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

int exit_for(Verdict v) {
  switch (v) {
    case Verdict::pass: return ok;
    case Verdict::fail: return failed;
    default: return inconclusive;
  }
}

struct Options {
  std::string instance = "v";
  std::string vertex_file;
  std::string partition_file;
  std::string input;
  std::string format = "json";
  std::string check_id;
  std::string kind;
  std::vector<std::string> positional;
  bool up = false;
  bool down = false;
  bool all = false;
  bool no_timing = false;
  int depth = -1;
  int k = -1;
  int n = -100;
  int samples = -1;
  int degree = -1;
  std::uint64_t seed = 0;
  std::size_t budget = 0;
};

const std::vector<std::string> kChecks{"action", "ascending", "axioms", "bound", "cover", "filtration", "join", "template"};

std::vector<CheckReport> run_check(const ExpansionSet& set, const std::string& id, const Options& o) {
  const bool v = set.id() == "v";
  auto pick = [](int given, int fallback) { return given >= 0 ? given : fallback; };
  if (id == "template") return check_template(set, pick(o.depth, v ? 3 : 2), pick(o.samples, 20), o.seed);
  if (id == "bound") return {check_descending_bound(set, pick(o.k, 6), o.n == -100 ? 0 : o.n, o.seed)};
  if (id == "cover") return {check_cover_and_nerve(set, pick(o.k, 6), pick(o.samples, 50), o.seed)};
  if (id == "join") return {check_join_lemma(pick(o.samples, 100), o.seed)};
  if (id == "ascending") return {check_ascending_factorizations(set, pick(o.samples, 25), pick(o.depth, v ? 4 : 3), o.seed)};
  if (id == "action") return {check_action(set, pick(o.samples, 20), o.seed)};
  if (id == "axioms") return {check_axioms(set, pick(o.samples, 20), pick(o.depth, 2), o.seed)};
  if (id == "filtration") return {check_filtration(set, o.n == -100 ? 3 : o.n, pick(o.depth, 2), o.seed)};
  throw UsageError("unknown check '" + id + "'");
}

int cmd_check(const Options& o) {
  std::vector<std::string> pos = o.positional;
  std::string instance = o.instance;
  std::string id = o.check_id;
  if (pos.size() == 2) {
    instance = pos[0];
    id = pos[1];
  } else if (pos.size() == 1) {
    if (std::find(kChecks.begin(), kChecks.end(), pos[0]) != kChecks.end())
      id = pos[0];
    else
      instance = pos[0];
  } else if (pos.size() > 2) {
    throw UsageError("check takes at most an instance and a check id");
  }
  auto set = make_instance(instance);
  std::vector<std::string> ids;
  if (o.all) {
    if (!id.empty()) throw UsageError("--all cannot be combined with a check id");
    ids = kChecks;
  } else {
    if (id.empty()) throw UsageError("check needs a check id or --all");
    ids = {id};
  }
  std::vector<std::future<std::vector<CheckReport>>> jobs;
  for (const auto& c : ids) jobs.push_back(std::async(std::launch::async, [&, c] { return run_check(*set, c, o); }));
  std::vector<CheckReport> reports;
  for (auto& j : jobs) {
    auto r = j.get();
    reports.insert(reports.end(), r.begin(), r.end());
  }
  reports = merge_reports(std::move(reports));
  json out = json::array();
  for (auto& r : reports) {
    if (o.no_timing) r.ms = 0;
    out.push_back(r.to_json());
  }
  std::cout << dump(out) << "\n";
  return exit_for(combine(reports));
}

Vertex load_vertex(const ExpansionSet& set, const std::string& path) {
  if (path.empty()) throw UsageError("--vertex is required");
  json j = read_json_file(path);
  try {
    return set.vertex_from_json(j);
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw UsageError(path + ": " + e.what());
  }
}

void emit_complex(const Complex& k, const json& extra, const std::string& format) {
  if (format == "dot") {
    std::cout << to_dot(k);
    return;
  }
  json out = extra;
  out["complex"] = complex_to_json(k);
  std::cout << dump(out) << "\n";
}

int cmd_link(const Options& o) {
  if (o.up == o.down) throw UsageError("link needs exactly one of --up or --down");
  auto set = make_instance(o.instance);
  Vertex v = load_vertex(*set, o.vertex_file);
  if (o.up) {
    AscendingLink link = ascending_link(*set, v);
    HomologyReport h = reduced_homology(link.link, std::max(link.link.dimension(), 0));
    emit_complex(link.link,
                 {{"direction", "up"}, {"vertex", set->vertex_json(v)}, {"homology", homology_to_json(h)},
                  {"join_of_element_links", complex_to_json(link.join_form)}},
                 o.format);
    return ok;
  }
  DescendingLink dl = descending_link(*set, v);
  json extra{{"direction", "down"}, {"vertex", set->vertex_json(v)}};
  if (!o.partition_file.empty()) {
    Partition p = partition_from_json(read_json_file(o.partition_file));
    validate_partition(p, static_cast<int>(v.size()));
    dl = partitioned_descending_link(*set, dl, p);
    extra["partition"] = partition_to_json(p);
  }
  HomologyReport h = reduced_homology(dl.complex, std::max(dl.complex.dimension(), 0));
  extra["homology"] = homology_to_json(h);
  emit_complex(dl.complex, extra, o.format);
  return ok;
}

int cmd_star(const Options& o) {
  auto set = make_instance(o.instance);
  Vertex v = load_vertex(*set, o.vertex_file);
  AscendingStar star = ascending_star(*set, v);
  json coords = json::array();
  for (const auto& c : star.coords) coords.push_back(c);
  emit_complex(star.complex, {{"vertex", set->vertex_json(v)}, {"size", star.vertices.size()}, {"coordinates", coords}},
               o.format);
  return ok;
}

int cmd_orbits(const Options& o) {
  auto set = make_instance(o.instance);
  Vertex v = load_vertex(*set, o.vertex_file);
  json elems = json::array();
  for (ElementId b : v)
    elems.push_back({{"element", set->element_json(b)}, {"class", set->orbit_class(b)}});
  json out{{"instance", set->id()}, {"orbit_count", set->orbit_count()}, {"elements", elems},
           {"type_vector", type_vector(*set, v)}};
  if (!o.input.empty()) {
    Vertex w = load_vertex(*set, o.input);
    auto gamma = match_by_type(*set, v, w);
    out["matching_map"] = gamma ? gamma->to_json() : json(nullptr);
  }
  std::cout << dump(out) << "\n";
  return ok;
}

int cmd_export(const Options& o) {
  if (o.input.empty()) throw UsageError("export needs --input");
  json j = read_json_file(o.input);
  if (o.kind == "tree-pair") {
    std::cout << tree_pair_dot(table_from_json(j));
  } else if (o.kind == "poset") {
    auto set = make_instance(o.instance);
    std::cout << poset_dot(*set, set->element_from_json(j));
  } else if (o.kind == "complex") {
    std::cout << to_dot(complex_from_json(j));
  } else {
    throw UsageError("unknown export kind '" + o.kind + "' (expected tree-pair, poset or complex)");
  }
  return ok;
}

int cmd_homology(const Options& o) {
  if (o.input.empty()) throw UsageError("homology needs --input");
  Complex k = complex_from_json(read_json_file(o.input));
  HomologyReport h = reduced_homology(k, o.degree >= 0 ? o.degree : std::max(k.dimension(), 0));
  std::cout << dump(homology_to_json(h)) << "\n";
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Expansion-set complexes: links, stars and property checks"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--instance", o.instance, "v, 2v, 3v or rover")->check(CLI::IsMember({"v", "2v", "3v", "4v", "5v", "6v", "rover", "rover-literal"}));
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--budget", o.budget, "simplex budget");
    sub->add_option("--format", o.format, "json or dot")->check(CLI::IsMember({"json", "dot"}));
  };

  auto* link = app.add_subcommand("link", "descending or ascending link of a vertex");
  add_common(link);
  link->add_option("--vertex", o.vertex_file, "vertex JSON file")->required();
  link->add_flag("--up", o.up, "ascending link");
  link->add_flag("--down", o.down, "descending link");
  link->add_option("--partition", o.partition_file, "partition JSON file (descending only)");

  auto* star = app.add_subcommand("star", "ascending star with product coordinates");
  add_common(star);
  star->add_option("--vertex", o.vertex_file, "vertex JSON file")->required();

  auto* check = app.add_subcommand("check", "run property checks: check <instance> <id> or check --all");
  add_common(check);
  check->add_option("args", o.positional, "instance and check id");
  check->add_flag("--all", o.all, "every check for the instance");
  check->add_option("--depth", o.depth);
  check->add_option("--k", o.k);
  check->add_option("--n", o.n);
  check->add_option("--samples", o.samples);
  check->add_flag("--no-timing", o.no_timing, "report ms = 0 for byte-stable output");

  auto* orbits = app.add_subcommand("orbits", "orbit classes and type vector of a vertex");
  add_common(orbits);
  orbits->add_option("--vertex", o.vertex_file, "vertex JSON file")->required();
  orbits->add_option("--input", o.input, "second vertex to match by type");

  auto* exp = app.add_subcommand("export", "DOT export: tree-pair, poset or complex");
  add_common(exp);
  exp->add_option("kind", o.kind, "tree-pair, poset or complex")->required();
  exp->add_option("--input", o.input, "input JSON file");

  auto* hom = app.add_subcommand("homology", "reduced homology of a complex JSON file");
  add_common(hom);
  hom->add_option("--input", o.input, "complex JSON file");
  hom->add_option("--degree", o.degree);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  if (o.budget > 0) setenv("EXPANSE_BUDGET", std::to_string(o.budget).c_str(), 1);
  try {
    if (*link) return cmd_link(o);
    if (*star) return cmd_star(o);
    if (*check) return cmd_check(o);
    if (*orbits) return cmd_orbits(o);
    if (*exp) return cmd_export(o);
    if (*hom) return cmd_homology(o);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return inconclusive;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return usage;
  }
  return usage;
}

#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "expanse/instances.hpp"
#include "expanse/io.hpp"
#include "expanse/verify.hpp"

using namespace expanse;

namespace {

std::string fixture(const std::string& name) { return std::string(EXPANSE_FIXTURES) + "/" + name; }

}  // namespace

TEST_CASE("malformed JSON reports a position") {
  try {
    read_json_file(fixture("malformed.json"));
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(e.column > 0);
  }
  CHECK_THROWS_AS(parse_json_text("{\"rows\": [}"), ParseError);
}

TEST_CASE("fixture roundtrips") {
  for (std::string f : {"fig1_g.json", "fig4_g1.json", "fig4_g2.json", "fig4_h.json"}) {
    json j = read_json_file(fixture(f));
    CHECK(table_to_json(table_from_json(j)) == j);
  }
  for (std::string f : {"fig5_f.json", "root_2v.json"}) {
    json j = read_json_file(fixture(f));
    CHECK(boxmap_to_json(boxmap_from_json(j)) == j);
  }
  for (std::string f : {"empty_complex.json", "circle_complex.json"}) {
    json j = read_json_file(fixture(f));
    CHECK(complex_to_json(complex_from_json(j)) == j);
  }
  json p = read_json_file(fixture("partition_k3.json"));
  CHECK(partition_to_json(partition_from_json(p)) == p);
  json r = read_json_file(fixture("report.json"));
  CHECK(CheckReport::from_json(r).to_json() == r);
  ThompsonV v;
  for (std::string f : {"v2_vertex.json", "v3_vertex.json"}) {
    json j = read_json_file(fixture(f));
    CHECK(v.vertex_json(v.vertex_from_json(j)) == j);
  }
}

TEST_CASE("invalid tables are rejected with element indices") {
  ThompsonV v;
  json bad = json::parse(R"({"elements": [{"rows": [["", "0"]]}, {"rows": [["0", "1"]]}]})");
  try {
    v.vertex_from_json(bad);
    FAIL("expected a validation error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("element 1") != std::string::npos);
  }
  CHECK_THROWS(table_from_json(json::parse(R"({"rows": [["0", "2"], ["1", "1"]]})")));
}

TEST_CASE("Roever rows accept objects and pairs") {
  json objects = json::parse(R"({"rows": [{"dom": "", "img": "0", "decoration": "1"}]})");
  json pairs = json::parse(R"({"rows": [["", "0"]]})");
  CHECK(rover_table_from_json(objects) == rover_table_from_json(pairs));
  CHECK(rover_table_from_json(rover_table_to_json(rover_table_from_json(objects))) == rover_table_from_json(objects));
}

TEST_CASE("DOT output is stable") {
  TableMap g = table_from_json(read_json_file(fixture("fig1_g.json")));
  CHECK(tree_pair_dot(g) == tree_pair_dot(g));
  Rover r;
  CHECK(poset_dot(r, r.root()) == poset_dot(r, r.root()));
}

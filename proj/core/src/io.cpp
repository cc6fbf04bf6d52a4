#include "expanse/io.hpp"

#include <fstream>
#include <sstream>

namespace expanse {

json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    std::size_t upto = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
    for (std::size_t i = 0; i < upto; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": malformed JSON (" +
                         e.what() + ")",
                     line, column);
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

std::string dump(const json& j) { return j.dump(2); }

namespace {

Word word_from(const json& j, const std::string& where) {
  if (!j.is_string()) throw std::invalid_argument(where + ": expected a prefix string");
  Word w = j.get<std::string>();
  if (!is_binary_word(w)) throw std::invalid_argument(where + ": \"" + w + "\" is not a binary word");
  return w;
}

}  // namespace

json table_to_json(const TableMap& t) {
  json rows = json::array();
  for (const auto& r : t.rows()) rows.push_back(json::array({r.dom, r.img}));
  return json{{"rows", rows}};
}

TableMap table_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.at("rows").is_array())
    throw std::invalid_argument("table JSON must be an object with a \"rows\" array");
  std::vector<Row> rows;
  std::size_t i = 0;
  for (const auto& r : j.at("rows")) {
    std::string where = "row " + std::to_string(i++);
    if (!r.is_array() || r.size() != 2) throw std::invalid_argument(where + ": expected [dom, img]");
    rows.push_back({word_from(r[0], where), word_from(r[1], where)});
  }
  return TableMap(std::move(rows));
}

json boxmap_to_json(const BoxMap& m) {
  json rows = json::array();
  for (const auto& r : m.rows()) {
    json row = json::array();
    for (std::size_t i = 0; i < r.dom.size(); ++i) row.push_back(json::array({r.dom[i], r.img[i]}));
    rows.push_back(row);
  }
  return json{{"dims", m.dims()}, {"rows", rows}};
}

BoxMap boxmap_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.at("rows").is_array())
    throw std::invalid_argument("box map JSON must be an object with a \"rows\" array");
  int dims = j.contains("dims") ? j.at("dims").get<int>() : 0;
  std::vector<BoxRow> rows;
  std::size_t i = 0;
  for (const auto& r : j.at("rows")) {
    std::string where = "row " + std::to_string(i++);
    if (!r.is_array() || r.empty()) throw std::invalid_argument(where + ": expected an array of [dom, img] pairs");
    if (dims == 0) dims = static_cast<int>(r.size());
    if (static_cast<int>(r.size()) != dims) throw std::invalid_argument(where + ": wrong number of coordinates");
    BoxRow row;
    for (const auto& pair : r) {
      if (!pair.is_array() || pair.size() != 2) throw std::invalid_argument(where + ": expected [dom, img]");
      row.dom.push_back(word_from(pair[0], where));
      row.img.push_back(word_from(pair[1], where));
    }
    rows.push_back(std::move(row));
  }
  if (dims == 0) throw std::invalid_argument("box map needs \"dims\" when it has no rows");
  return BoxMap(dims, std::move(rows));
}

json complex_to_json(const Complex& k) {
  json simplices = json::array();
  for (const auto& s : k.maximal_simplices()) simplices.push_back(s);
  return json{{"vertices", k.labels()}, {"maximal_simplices", simplices}};
}

Complex complex_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("maximal_simplices"))
    throw std::invalid_argument("complex JSON needs \"vertices\" and \"maximal_simplices\"");
  Complex k(j.at("vertices").get<std::vector<std::string>>());
  for (const auto& s : j.at("maximal_simplices")) {
    Simplex simplex = s.get<Simplex>();
    for (int v : simplex)
      if (v < 0 || v >= k.vertex_count()) throw std::invalid_argument("simplex vertex out of range");
    k.add_simplex(simplex);
  }
  return k;
}

json homology_to_json(const HomologyReport& r) {
  return json{{"degree", r.degree},
              {"empty", r.empty},
              {"betti_gf2", r.betti_gf2},
              {"betti_q", r.betti_q},
              {"components", r.components},
              {"connectivity", r.connectivity()},
              {"collapse", r.collapse}};
}

json partition_to_json(const Partition& p) { return json{{"blocks", p.blocks}}; }

Partition partition_from_json(const json& j) {
  if (!j.is_object() || !j.contains("blocks")) throw std::invalid_argument("partition JSON needs \"blocks\"");
  Partition p;
  p.blocks = j.at("blocks").get<std::vector<std::vector<int>>>();
  return p;
}

}  // namespace expanse

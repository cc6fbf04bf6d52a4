#pragma once

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "expanse/cantor.hpp"
#include "expanse/expansion.hpp"
#include "expanse/topology.hpp"

namespace expanse {

using nlohmann::json;

// Malformed JSON text, with the 1-based position of the offending byte.
class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::invalid_argument(what), line(line), column(column) {}
  std::size_t line;
  std::size_t column;
};

json parse_json_text(const std::string& text, const std::string& source = "<input>");
json read_json_file(const std::string& path);
std::string dump(const json& j);

json table_to_json(const TableMap& t);
TableMap table_from_json(const json& j);
// Rows are arrays of n [dom, img] prefix pairs, one per coordinate.
json boxmap_to_json(const BoxMap& m);
BoxMap boxmap_from_json(const json& j);

json complex_to_json(const Complex& k);
Complex complex_from_json(const json& j);
json homology_to_json(const HomologyReport& r);
json partition_to_json(const Partition& p);
Partition partition_from_json(const json& j);

}  // namespace expanse

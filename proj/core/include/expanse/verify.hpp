#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "expanse/expansion.hpp"

namespace expanse {

enum class Verdict { pass, fail, inconclusive };
std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

struct CheckReport {
  std::string check;
  std::string instance;
  nlohmann::json params = nlohmann::json::object();
  Verdict verdict = Verdict::inconclusive;
  nlohmann::json witness = nlohmann::json::object();
  long long ms = 0;

  nlohmann::json to_json() const;
  static CheckReport from_json(const nlohmann::json& j);
  bool operator==(const CheckReport&) const = default;
};

// fail if any report fails, else inconclusive if any is inconclusive, else pass.
Verdict combine(const std::vector<CheckReport>& reports);
// Sorted by check id, then instance.
std::vector<CheckReport> merge_reports(std::vector<CheckReport> reports);

// ---------------------------------------------------------------- sampling

// Splits the root until the height is k, then translates by a random full-support map.
Vertex random_vertex_of_height(const ExpansionSet& set, std::mt19937_64& rng, int k);
// Counts of elements per orbit class.
std::vector<int> type_vector(const ExpansionSet& set, const Vertex& v);
// A full-support map carrying v1 onto v2 when their type vectors agree; null otherwise.
std::unique_ptr<PartialAction> match_by_type(const ExpansionSet& set, const Vertex& v1, const Vertex& v2);
std::optional<Vertex> act_on_vertex(const ExpansionSet& set, const PartialAction& s, const Vertex& v);

// ---------------------------------------------------------------- directed set

struct UpperBound {
  Vertex top;
  ExpansionSequence from_first;   // starts at v1, ends at top
  ExpansionSequence from_second;  // starts at v2, ends at top
};

// The cells of the atoms below b reached by repeatedly taking the largest expansion.
Support atom_cells(const ExpansionSet& set, ElementId b, int max_depth = 48);
UpperBound common_upper_bound(const ExpansionSet& set, const Vertex& v1, const Vertex& v2,
                              std::size_t budget = 100000);
bool is_full_support(const ExpansionSet& set, const Vertex& v);

// ---------------------------------------------------------------- checks

// Smallest height from which the descending link is claimed n-connected.
int descending_threshold(Kind kind, int n, int c0, int c1);

std::vector<CheckReport> check_template(const ExpansionSet& set, int depth, int samples, std::uint64_t seed = 0);
CheckReport check_descending_bound(const ExpansionSet& set, int k, int n, std::uint64_t seed = 0);
CheckReport check_descending_bound_at(const ExpansionSet& set, const Vertex& v, int n);
CheckReport check_cover_and_nerve(const ExpansionSet& set, int k, int families = 50, std::uint64_t seed = 0);
CheckReport check_cover_and_nerve_at(const ExpansionSet& set, const Vertex& v, int families, std::uint64_t seed);
CheckReport check_join_lemma(int trials, std::uint64_t seed = 0);
CheckReport check_ascending_factorizations(const ExpansionSet& set, int samples, int max_height,
                                           std::uint64_t seed = 0);
CheckReport check_action(const ExpansionSet& set, int samples, std::uint64_t seed = 0);
// Expansion-set axioms on the elements of sampled vertices.
CheckReport check_axioms(const ExpansionSet& set, int samples, int depth, std::uint64_t seed = 0);
// Every slice of the height filtration around sampled vertices has dimension at most n - 1.
CheckReport check_filtration(const ExpansionSet& set, int n, int radius, std::uint64_t seed = 0);

}  // namespace expanse

#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "qcmp/buchi.hpp"
#include "qcmp/pushdown.hpp"
#include "qcmp/rational.hpp"
#include "qcmp/weighted.hpp"

namespace qcmp {

// State ids are the state names when every state has a distinct name, and
// the state indices otherwise. Parsing accepts either form.
nlohmann::json to_json(const BuchiAutomaton& a);
BuchiAutomaton buchi_from_json(const nlohmann::json& j);

nlohmann::json to_json(const WeightedAutomaton& w);
// Weights must be integers in [0, mu].
WeightedAutomaton weighted_from_json(const nlohmann::json& j);

// Weighted automaton whose weights may be negative integers or rationals
// ("p/q" strings or JSON numbers with a fractional part).
struct RawWeighted {
  WeightedAutomaton shape;  // weights left at zero
  std::vector<Rational> weights;
};
RawWeighted raw_weighted_from_json(const nlohmann::json& j);
// Brings both automata onto naturals with one common affine map, so that
// comparisons between them are preserved.
std::pair<WeightedAutomaton, WeightedAutomaton> normalize_pair(const RawWeighted& p, const RawWeighted& q);
WeightedAutomaton normalize_one(const RawWeighted& p);

nlohmann::json to_json(const BuchiPDA& p);
BuchiPDA pda_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AggSpec& agg);
AggSpec agg_from_json(const nlohmann::json& j);

// Parse errors become InputError carrying the byte offset.
nlohmann::json parse_json_text(std::string_view text);
nlohmann::json read_json_file(const std::string& path);

}  // namespace qcmp

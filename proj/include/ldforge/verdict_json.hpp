#pragma once

#include <string>
#include <string_view>

#include <json.hpp>

#include "ldforge/word_problem.hpp"

namespace ldforge {

// Verdicts serialize as JSON objects:
//
//   {"kind": "LeftLess",
//    "witness": {"expansion_of_greater": [["R", "LD", "forward"], ...],
//                "prefix_length": 1, "factors": ["y"], "expansion_of_lesser": []},
//    "refutation": {"level": 2, "assignment": [1, 0]},    // optional
//    "visited": 12}
//
// Rewrite steps are (position, rule, direction) triples with positions written
// over {L, R} and "" for the root. Terms are rendered in the term grammar.

nlohmann::json path_to_json(const RewritePath& path);
RewritePath path_from_json(const nlohmann::json& j);

nlohmann::json table_witness_to_json(const TableWitness& w);
TableWitness table_witness_from_json(const nlohmann::json& j);

nlohmann::json verdict_to_json(const QuadrichotomyVerdict& v);
/// Throws nlohmann::json::exception or ParseError on malformed input.
QuadrichotomyVerdict verdict_from_json(const nlohmann::json& j, std::uint32_t arity = 2);

std::string serialize_verdict(const QuadrichotomyVerdict& v);
QuadrichotomyVerdict deserialize_verdict(std::string_view text, std::uint32_t arity = 2);

}  // namespace ldforge

#include <doctest.h>

#include "ldforge/verdict_json.hpp"

using namespace ldforge;

TEST_CASE("verdicts round-trip through json") {
  const std::pair<const char*, const char*> pairs[] = {
      {"x (y y)", "x y (x y)"}, {"x", "x y"}, {"x y", "x"}, {"x", "y"}, {"x x", "x y"}};
  for (auto [us, vs] : pairs) {
    const Term u = parse_term(us), v = parse_term(vs);
    const auto verdict = classify_pair(u, v, Budget{});
    const auto back = deserialize_verdict(serialize_verdict(verdict));
    CHECK(back.kind == verdict.kind);
    CHECK(verify_verdict(u, v, back));
    CHECK(serialize_verdict(back) == serialize_verdict(verdict));
  }
}

TEST_CASE("path triples") {
  const RewritePath p{{parse_position("RL"), Rule::LD, Direction::Backward}};
  const auto j = path_to_json(p);
  CHECK(j.dump() == R"([["RL","LD","backward"]])");
  CHECK(path_from_json(j) == p);
  CHECK_THROWS(path_from_json(nlohmann::json::parse(R"([["", "Nope", "forward"]])")));
  CHECK_THROWS(deserialize_verdict(R"({"kind": "Sideways", "witness": {}})"));
}

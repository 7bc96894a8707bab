#include "ldforge/verdict_json.hpp"

namespace ldforge {

using nlohmann::json;

namespace {

json terms_to_json(const std::vector<Term>& terms) {
  json out = json::array();
  for (const Term& t : terms) out.push_back(render_term(t));
  return out;
}

std::vector<Term> terms_from_json(const json& j, std::uint32_t arity) {
  std::vector<Term> out;
  for (const auto& s : j) out.push_back(parse_term(s.get<std::string>(), arity));
  return out;
}

VerdictKind kind_from_name(std::string_view name) {
  for (auto k : {VerdictKind::Equivalent, VerdictKind::LeftLess, VerdictKind::RightLess,
                 VerdictKind::Clash, VerdictKind::Unknown}) {
    if (verdict_name(k) == name) return k;
  }
  throw std::invalid_argument("unknown verdict kind '" + std::string(name) + "'");
}

}  // namespace

json path_to_json(const RewritePath& path) {
  json out = json::array();
  for (const RewriteStep& s : path) {
    out.push_back(json::array({render_position(s.position), std::string(rule_name(s.rule)),
                               std::string(direction_name(s.direction))}));
  }
  return out;
}

RewritePath path_from_json(const json& j) {
  RewritePath path;
  for (const auto& triple : j) {
    if (!triple.is_array() || triple.size() != 3)
      throw std::invalid_argument("rewrite steps are [position, rule, direction] triples");
    auto rule = parse_rule(triple[1].get<std::string>());
    auto direction = parse_direction(triple[2].get<std::string>());
    if (!rule || !direction) throw std::invalid_argument("bad rule or direction in rewrite step");
    path.push_back(RewriteStep{parse_position(triple[0].get<std::string>()), *rule, *direction});
  }
  return path;
}

json table_witness_to_json(const TableWitness& w) {
  return json{{"level", w.level}, {"assignment", w.assignment}};
}

TableWitness table_witness_from_json(const json& j) {
  return TableWitness{j.at("level").get<unsigned>(),
                      j.at("assignment").get<std::vector<Element>>()};
}

json verdict_to_json(const QuadrichotomyVerdict& v) {
  json out{{"kind", std::string(verdict_name(v.kind))}};
  json witness = json::object();
  if (v.equivalence) {
    witness["from_u"] = path_to_json(v.equivalence->from_u);
    witness["from_v"] = path_to_json(v.equivalence->from_v);
    witness["common"] = render_term(v.equivalence->common);
  }
  if (v.divisor) {
    witness["expansion_of_greater"] = path_to_json(v.divisor->expansion_of_greater);
    witness["prefix_length"] = v.divisor->prefix_length;
    witness["factors"] = terms_to_json(v.divisor->factors);
    witness["expansion_of_lesser"] = path_to_json(v.divisor->expansion_of_lesser);
  }
  if (v.clash) {
    const auto p = v.clash->prefix_term();
    witness["prefix"] = p ? json(render_term(*p)) : json(nullptr);
    witness["prefix_parts"] = terms_to_json(v.clash->prefix);
    witness["x"] = generator_name(v.clash->x);
    witness["y"] = generator_name(v.clash->y);
    witness["expansion_of_u"] = path_to_json(v.clash->expansion_of_u);
    witness["u_prefix_length"] = v.clash->u_prefix_length;
    witness["expansion_of_v"] = path_to_json(v.clash->expansion_of_v);
    witness["v_prefix_length"] = v.clash->v_prefix_length;
  }
  out["witness"] = std::move(witness);
  if (v.refutation) out["refutation"] = table_witness_to_json(*v.refutation);
  out["visited"] = v.visited;
  return out;
}

QuadrichotomyVerdict verdict_from_json(const json& j, std::uint32_t arity) {
  QuadrichotomyVerdict v;
  v.kind = kind_from_name(j.at("kind").get<std::string>());
  const json& w = j.at("witness");
  switch (v.kind) {
    case VerdictKind::Equivalent:
      v.equivalence = ConfluenceWitness{path_from_json(w.at("from_u")),
                                        path_from_json(w.at("from_v")),
                                        parse_term(w.at("common").get<std::string>(), arity)};
      break;
    case VerdictKind::LeftLess:
    case VerdictKind::RightLess:
      v.divisor = LeftDivisorWitness{path_from_json(w.at("expansion_of_greater")),
                                     w.at("prefix_length").get<std::size_t>(),
                                     terms_from_json(w.at("factors"), arity),
                                     path_from_json(w.at("expansion_of_lesser"))};
      break;
    case VerdictKind::Clash: {
      ClashWitness c;
      c.prefix = terms_from_json(w.at("prefix_parts"), arity);
      c.x = leftmost_generator(parse_term(w.at("x").get<std::string>(), arity));
      c.y = leftmost_generator(parse_term(w.at("y").get<std::string>(), arity));
      c.expansion_of_u = path_from_json(w.at("expansion_of_u"));
      c.u_prefix_length = w.at("u_prefix_length").get<std::size_t>();
      c.expansion_of_v = path_from_json(w.at("expansion_of_v"));
      c.v_prefix_length = w.at("v_prefix_length").get<std::size_t>();
      v.clash = std::move(c);
      break;
    }
    case VerdictKind::Unknown:
      break;
  }
  if (j.contains("refutation")) v.refutation = table_witness_from_json(j.at("refutation"));
  v.visited = j.value("visited", std::size_t{0});
  return v;
}

std::string serialize_verdict(const QuadrichotomyVerdict& v) { return verdict_to_json(v).dump(2); }

QuadrichotomyVerdict deserialize_verdict(std::string_view text, std::uint32_t arity) {
  return verdict_from_json(json::parse(text), arity);
}

}  // namespace ldforge

#include "ldforge/rewrite.hpp"

#include <array>
#include <utility>

namespace ldforge {

namespace {

constexpr std::array<std::pair<Rule, std::string_view>, 5> kRuleNames{{
    {Rule::LD, "LD"},
    {Rule::ComposeAssoc, "ComposeAssoc"},
    {Rule::ComposeApply, "ComposeApply"},
    {Rule::ApplyDistrib, "ApplyDistrib"},
    {Rule::Braid, "Braid"},
}};

std::optional<Term> rewrite_forward(const Term& t, Rule rule) {
  switch (rule) {
    case Rule::LD:  // a(bc) -> (ab)(ac)
      if (t.is_apply() && t.right().is_apply()) {
        const Term a = t.left(), b = t.right().left(), c = t.right().right();
        return (a * b) * (a * c);
      }
      return std::nullopt;
    case Rule::ComposeAssoc:  // (a o b) o c -> a o (b o c)
      if (t.is_compose() && t.left().is_compose()) {
        const Term a = t.left().left(), b = t.left().right(), c = t.right();
        return Term::compose(a, Term::compose(b, c));
      }
      return std::nullopt;
    case Rule::ComposeApply:  // (a o b)c -> a(bc)
      if (t.is_apply() && t.left().is_compose()) {
        const Term a = t.left().left(), b = t.left().right(), c = t.right();
        return a * (b * c);
      }
      return std::nullopt;
    case Rule::ApplyDistrib:  // a(b o c) -> ab o ac
      if (t.is_apply() && t.right().is_compose()) {
        const Term a = t.left(), b = t.right().left(), c = t.right().right();
        return Term::compose(a * b, a * c);
      }
      return std::nullopt;
    case Rule::Braid:  // a o b -> ab o a
      if (t.is_compose()) {
        const Term a = t.left(), b = t.right();
        return Term::compose(a * b, a);
      }
      return std::nullopt;
  }
  return std::nullopt;
}

std::optional<Term> rewrite_backward(const Term& t, Rule rule) {
  switch (rule) {
    case Rule::LD:  // (ab)(ac) -> a(bc)
      if (t.is_apply() && t.left().is_apply() && t.right().is_apply() &&
          t.left().left() == t.right().left()) {
        return t.left().left() * (t.left().right() * t.right().right());
      }
      return std::nullopt;
    case Rule::ComposeAssoc:  // a o (b o c) -> (a o b) o c
      if (t.is_compose() && t.right().is_compose()) {
        return Term::compose(Term::compose(t.left(), t.right().left()), t.right().right());
      }
      return std::nullopt;
    case Rule::ComposeApply:  // a(bc) -> (a o b)c
      if (t.is_apply() && t.right().is_apply()) {
        return Term::compose(t.left(), t.right().left()) * t.right().right();
      }
      return std::nullopt;
    case Rule::ApplyDistrib:  // ab o ac -> a(b o c)
      if (t.is_compose() && t.left().is_apply() && t.right().is_apply() &&
          t.left().left() == t.right().left()) {
        return t.left().left() * Term::compose(t.left().right(), t.right().right());
      }
      return std::nullopt;
    case Rule::Braid:  // ab o a -> a o b
      if (t.is_compose() && t.left().is_apply() && t.left().left() == t.right()) {
        return Term::compose(t.right(), t.left().right());
      }
      return std::nullopt;
  }
  return std::nullopt;
}

void collect_sites(const Term& t, Rule rule, Direction direction, Position& here,
                   std::vector<Position>& out) {
  if (rewrite_top(t, rule, direction)) out.push_back(here);
  if (t.is_generator()) return;
  here.path.push_back(Side::Left);
  collect_sites(t.left(), rule, direction, here, out);
  here.path.back() = Side::Right;
  collect_sites(t.right(), rule, direction, here, out);
  here.path.pop_back();
}

std::optional<Term> rewrite_at(const Term& t, const std::vector<Side>& path, std::size_t depth,
                               Rule rule, Direction direction) {
  if (depth == path.size()) return rewrite_top(t, rule, direction);
  if (t.is_generator()) return std::nullopt;
  const bool left = path[depth] == Side::Left;
  auto child = rewrite_at(left ? t.left() : t.right(), path, depth + 1, rule, direction);
  if (!child) return std::nullopt;
  if (t.is_apply()) return left ? Term::apply(*child, t.right()) : Term::apply(t.left(), *child);
  return left ? Term::compose(*child, t.right()) : Term::compose(t.left(), *child);
}

}  // namespace

std::string render_position(const Position& p) {
  std::string out;
  out.reserve(p.path.size());
  for (Side s : p.path) out += s == Side::Left ? 'L' : 'R';
  return out;
}

Position parse_position(std::string_view text) {
  Position p;
  for (char c : text) {
    if (c == 'L')
      p.path.push_back(Side::Left);
    else if (c == 'R')
      p.path.push_back(Side::Right);
    else
      throw RewriteError("position paths use only 'L' and 'R'");
  }
  return p;
}

std::string_view rule_name(Rule r) {
  for (const auto& [rule, name] : kRuleNames)
    if (rule == r) return name;
  return "?";
}

std::string_view direction_name(Direction d) {
  return d == Direction::Forward ? "forward" : "backward";
}

std::optional<Rule> parse_rule(std::string_view name) {
  for (const auto& [rule, n] : kRuleNames)
    if (n == name) return rule;
  return std::nullopt;
}

std::optional<Direction> parse_direction(std::string_view name) {
  if (name == "forward") return Direction::Forward;
  if (name == "backward") return Direction::Backward;
  return std::nullopt;
}

Direction reversed(Direction d) {
  return d == Direction::Forward ? Direction::Backward : Direction::Forward;
}

std::optional<Term> subterm_at(const Term& t, const Position& p) {
  Term cur = t;
  for (Side s : p.path) {
    if (cur.is_generator()) return std::nullopt;
    cur = s == Side::Left ? cur.left() : cur.right();
  }
  return cur;
}

std::optional<Term> rewrite_top(const Term& t, Rule rule, Direction direction) {
  return direction == Direction::Forward ? rewrite_forward(t, rule) : rewrite_backward(t, rule);
}

std::vector<Position> rewrite_sites(const Term& t, Rule rule, Direction direction) {
  std::vector<Position> out;
  Position here;
  collect_sites(t, rule, direction, here, out);
  return out;
}

Term apply_rewrite(const Term& t, const RewriteStep& step) {
  auto result = rewrite_at(t, step.position.path, 0, step.rule, step.direction);
  if (!result) {
    throw RewriteError(std::string(rule_name(step.rule)) + " " +
                       std::string(direction_name(step.direction)) + " does not match at '" +
                       render_position(step.position) + "'");
  }
  return *result;
}

Term replay(const Term& t, const RewritePath& path) {
  Term cur = t;
  for (const RewriteStep& step : path) cur = apply_rewrite(cur, step);
  return cur;
}

}  // namespace ldforge

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ldforge/term.hpp"

namespace ldforge {

enum class Side : std::uint8_t { Left, Right };

/// Path from the root; empty path addresses the root.
struct Position {
  std::vector<Side> path;

  friend bool operator==(const Position&, const Position&) = default;
};

/// Rules of the extended algebra. LD is the only rule admitted on A-terms.
///
///   LD            a(bc)     -> (ab)(ac)
///   ComposeAssoc  (a o b) o c -> a o (b o c)
///   ComposeApply  (a o b)c  -> a(bc)
///   ApplyDistrib  a(b o c)  -> ab o ac
///   Braid         a o b     -> ab o a
enum class Rule : std::uint8_t { LD, ComposeAssoc, ComposeApply, ApplyDistrib, Braid };
enum class Direction : std::uint8_t { Forward, Backward };

struct RewriteStep {
  Position position;
  Rule rule = Rule::LD;
  Direction direction = Direction::Forward;

  friend bool operator==(const RewriteStep&, const RewriteStep&) = default;
};

using RewritePath = std::vector<RewriteStep>;

class RewriteError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// "" for the root, otherwise a string over {L, R}.
std::string render_position(const Position& p);
Position parse_position(std::string_view text);

std::string_view rule_name(Rule r);
std::string_view direction_name(Direction d);
std::optional<Rule> parse_rule(std::string_view name);
std::optional<Direction> parse_direction(std::string_view name);

Direction reversed(Direction d);

/// Subterm at `p`, or nullopt if the path leaves the tree.
std::optional<Term> subterm_at(const Term& t, const Position& p);

/// Result of the rule at the top of `t`, or nullopt if the pattern does not match.
std::optional<Term> rewrite_top(const Term& t, Rule rule, Direction direction);

/// Every position where the rule matches, in pre-order.
std::vector<Position> rewrite_sites(const Term& t, Rule rule, Direction direction);

/// Throws RewriteError if the step's pattern does not match at its position.
Term apply_rewrite(const Term& t, const RewriteStep& step);

/// Applies the steps in order. Throws RewriteError on the first non-matching step.
Term replay(const Term& t, const RewritePath& path);

}  // namespace ldforge

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ldforge/laver_table.hpp"
#include "ldforge/rewrite.hpp"
#include "ldforge/term.hpp"

namespace ldforge {

/// Bounds on forward-expansion searches. A search that trips any bound
/// reports Unknown instead of guessing.
struct Budget {
  std::size_t max_expansion_depth = 4;
  std::size_t max_term_size = 40;
  std::size_t max_visited = 3000;
  /// Highest Laver table level tried by the refutation oracle.
  unsigned max_table_level = 4;
};

/// Assignment of generators to elements of A_level under which two terms
/// evaluate differently. Proves the terms are not LD-equivalent.
struct TableWitness {
  unsigned level = 0;
  std::vector<Element> assignment;

  friend bool operator==(const TableWitness&, const TableWitness&) = default;
};

/// Seed of the assignment sample used above the exhaustive levels.
inline constexpr std::uint64_t kRefutationSeed = 0x1d5eed5eedULL;
/// Levels at or below this are searched exhaustively.
inline constexpr unsigned kExhaustiveRefutationLevel = 3;
inline constexpr std::size_t kRefutationSamples = 512;

/// Least (level, assignment) separating u and v, trying all |A_n|^arity
/// assignments in lexicographic order for n <= 3 and a fixed seeded sample of
/// kRefutationSamples assignments above that.
std::optional<TableWitness> table_refutation(const Term& u, const Term& v, unsigned max_level);

/// True iff the witness really separates u and v.
bool check_table_witness(const Term& u, const Term& v, const TableWitness& w);

// ---------------------------------------------------------------------------
// Forward expansion

struct Frontier {
  std::vector<Term> terms;  ///< breadth-first order, starting with the seed
  bool truncated = false;
};

/// All terms reachable from t by at most `depth` forward LD steps, subject to
/// the budget's size and visit bounds.
Frontier expand_frontier(const Term& t, std::size_t depth, const Budget& budget);

/// Breadth-first forward LD expansion graph with back-pointers, grown one layer
/// at a time. Terms are deduplicated structurally.
class ExpansionTree {
 public:
  explicit ExpansionTree(Term root);

  struct Node {
    Term term;
    std::size_t parent;  ///< index of the parent node; the root points at itself
    RewriteStep step;    ///< step from parent to this node
    std::size_t depth;
  };

  /// Expands the last layer by one forward step. Returns the indices of the
  /// new nodes. Terms larger than max_term_size are dropped and a node
  /// budget caps the total; either sets truncated().
  std::vector<std::size_t> grow(std::size_t max_term_size, std::size_t max_nodes);

  const Node& node(std::size_t i) const { return nodes_[i]; }
  std::size_t size() const { return nodes_.size(); }
  std::size_t depth() const { return depth_; }
  bool truncated() const { return truncated_; }
  /// Whether the last grow() produced nothing new and nothing was dropped.
  bool exhausted() const { return exhausted_; }

  std::optional<std::size_t> find(const Term& t) const;
  /// Forward steps from the root to node i.
  RewritePath path_to(std::size_t i) const;

 private:
  std::vector<Node> nodes_;
  std::unordered_map<Term, std::size_t, TermHash> index_;
  std::size_t layer_begin_ = 0;
  std::size_t depth_ = 0;
  bool truncated_ = false;
  bool exhausted_ = false;
};

// ---------------------------------------------------------------------------
// Decisions

enum class Outcome : std::uint8_t { Confirmed, Refuted, Unknown };

std::string_view outcome_name(Outcome o);

/// Two forward paths meeting at a common expansion.
struct ConfluenceWitness {
  RewritePath from_u;
  RewritePath from_v;
  Term common;
};

struct EquivalenceResult {
  Outcome outcome = Outcome::Unknown;
  std::optional<ConfluenceWitness> confluence;  ///< when Confirmed
  std::optional<TableWitness> refutation;       ///< when Refuted
};

EquivalenceResult decide_equivalence(const Term& u, const Term& v, const Budget& budget);

/// a <_L b: a forward expansion b' of b whose left spine is
/// head f_1 ... f_m, with head f_1 ... f_i equivalent to a for some i < m.
struct LeftDivisorWitness {
  RewritePath expansion_of_greater;  ///< b -> b'
  std::size_t prefix_length = 0;     ///< i
  std::vector<Term> factors;         ///< f_{i+1} ... f_m
  RewritePath expansion_of_lesser;   ///< a -> head f_1 ... f_i
};

enum class RefutationReason : std::uint8_t { Identical, Equivalent };

struct LeftDivisibilityResult {
  Outcome outcome = Outcome::Unknown;
  std::optional<LeftDivisorWitness> witness;     ///< when Confirmed
  std::optional<RefutationReason> refuted_by;     ///< when Refuted
  std::optional<ConfluenceWitness> confluence;    ///< when refuted by equivalence
};

LeftDivisibilityResult decide_left_divisibility(const Term& u, const Term& v,
                                                const Budget& budget);

/// p x <=_L u and p y <=_L v with x != y. The prefix p is the composition
/// p_1 o ... o p_r of `prefix` (empty when r = 0), so that p x is the right
/// chain p_1 (p_2 (... (p_r x))).
struct ClashWitness {
  std::vector<Term> prefix;
  GeneratorId x;
  GeneratorId y;
  RewritePath expansion_of_u;       ///< u -> u'
  std::size_t u_prefix_length = 0;  ///< spine prefix of u' equal to p x
  RewritePath expansion_of_v;
  std::size_t v_prefix_length = 0;

  /// p as a single P-term, or nullopt for the empty prefix.
  std::optional<Term> prefix_term() const;
};

struct ClashResult {
  Outcome outcome = Outcome::Unknown;
  std::optional<ClashWitness> witness;
};

/// Searches matched forward expansions for a variable clash. Never Refuted.
ClashResult find_clash(const Term& u, const Term& v, const Budget& budget);

enum class VerdictKind : std::uint8_t { Equivalent, LeftLess, RightLess, Clash, Unknown };

std::string_view verdict_name(VerdictKind k);

struct QuadrichotomyVerdict {
  VerdictKind kind = VerdictKind::Unknown;
  std::optional<ConfluenceWitness> equivalence;  ///< Equivalent
  /// LeftLess: lesser = u, greater = v. RightLess: lesser = v, greater = u.
  std::optional<LeftDivisorWitness> divisor;
  std::optional<ClashWitness> clash;             ///< Clash
  /// Table evidence gathered along the way; informational.
  std::optional<TableWitness> refutation;
  /// Nodes expanded before the verdict.
  std::size_t visited = 0;
};

/// Searches both forward expansions in lockstep, one layer at a time, and
/// returns the first verdict confirmed in the order Equivalent, LeftLess,
/// RightLess, Clash. Unknown when the budget runs out.
QuadrichotomyVerdict classify_pair(const Term& u, const Term& v, const Budget& budget);

/// Re-executes every path of a verdict and checks its defining conditions.
/// Unknown verdicts check trivially.
bool verify_verdict(const Term& u, const Term& v, const QuadrichotomyVerdict& verdict);

bool verify_confluence(const Term& u, const Term& v, const ConfluenceWitness& w);
bool verify_left_divisor(const Term& lesser, const Term& greater, const LeftDivisorWitness& w);
bool verify_clash(const Term& u, const Term& v, const ClashWitness& w);

// ---------------------------------------------------------------------------
// Reference oracle

enum class OracleAnswer : std::uint8_t { Equivalent, Inequivalent, Unknown };

struct LdClosure {
  std::unordered_set<Term, TermHash> terms;
  /// Some neighbour was pruned by the size bound or the visit cap.
  bool truncated = false;
};

/// Closure of {t} under LD steps in both directions, restricted to terms of
/// at most size_bound leaves and at most max_terms members.
LdClosure ld_closure(const Term& t, std::size_t size_bound, std::size_t max_terms = 1'000'000);

/// Exhaustive bidirectional search from u. Equivalent iff v is reached;
/// Inequivalent only if the closure was complete; Unknown otherwise.
OracleAnswer brute_force_equivalence(const Term& u, const Term& v, std::size_t size_bound);

/// True iff every step of the path is a forward LD step.
bool is_forward_ld_path(const RewritePath& path);

}  // namespace ldforge

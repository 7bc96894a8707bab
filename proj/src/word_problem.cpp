#include "ldforge/word_problem.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <random>

namespace ldforge {

namespace {

// ---------------------------------------------------------------------------
// Successor enumeration

void forward_successors(const Term& t, Position& here,
                        std::vector<std::pair<Position, Term>>& out) {
  if (auto top = rewrite_top(t, Rule::LD, Direction::Forward)) out.emplace_back(here, *top);
  if (t.is_generator()) return;
  const std::size_t mark = out.size();
  here.path.push_back(Side::Left);
  forward_successors(t.left(), here, out);
  for (std::size_t i = mark; i < out.size(); ++i)
    out[i].second = Term::apply(out[i].second, t.right());
  const std::size_t mid = out.size();
  here.path.back() = Side::Right;
  forward_successors(t.right(), here, out);
  for (std::size_t i = mid; i < out.size(); ++i)
    out[i].second = Term::apply(t.left(), out[i].second);
  here.path.pop_back();
}

// Terms one LD step away in either direction; positions are not tracked.
void ld_neighbours(const Term& t, std::vector<Term>& out) {
  if (auto f = rewrite_top(t, Rule::LD, Direction::Forward)) out.push_back(*f);
  if (auto b = rewrite_top(t, Rule::LD, Direction::Backward)) out.push_back(*b);
  if (!t.is_apply()) return;
  const std::size_t mark = out.size();
  ld_neighbours(t.left(), out);
  for (std::size_t i = mark; i < out.size(); ++i) out[i] = Term::apply(out[i], t.right());
  const std::size_t mid = out.size();
  ld_neighbours(t.right(), out);
  for (std::size_t i = mid; i < out.size(); ++i) out[i] = Term::apply(t.left(), out[i]);
}

// Left-chain descendants of t: entry i is the spine prefix head f_1 ... f_i.
std::vector<Term> spine_prefixes(const Term& t) {
  std::vector<Term> chain;
  Term cur = t;
  chain.push_back(cur);
  while (cur.is_apply()) {
    cur = cur.left();
    chain.push_back(cur);
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

// Decomposes q as p_1 (p_2 (... (p_r x))). Requires an A-term.
std::pair<std::vector<Term>, GeneratorId> right_chain(const Term& q) {
  std::vector<Term> parts;
  Term cur = q;
  while (cur.is_apply()) {
    parts.push_back(cur.left());
    cur = cur.right();
  }
  return {std::move(parts), cur.generator_id()};
}

struct PrefixKey {
  std::vector<Term> parts;
  std::size_t hash = 0;

  explicit PrefixKey(std::vector<Term> p) : parts(std::move(p)) {
    hash = parts.size();
    for (const Term& t : parts) hash = hash * 1000003ULL ^ t.hash();
  }
  friend bool operator==(const PrefixKey& a, const PrefixKey& b) { return a.parts == b.parts; }
};

struct PrefixKeyHash {
  std::size_t operator()(const PrefixKey& k) const noexcept { return k.hash; }
};

// ---------------------------------------------------------------------------
// Lockstep search over the forward expansions of u and v

enum : unsigned {
  kWantEquivalent = 1,
  kWantLeftLess = 2,
  kWantRightLess = 4,
  kWantClash = 8,
  kWantAll = 15,
};

class PairSearch {
 public:
  PairSearch(const Term& u, const Term& v, unsigned wanted)
      : trees_{ExpansionTree(u), ExpansionTree(v)}, wanted_(wanted) {}

  // Runs until some wanted relation is found or the budget trips.
  void run(const Budget& budget) {
    ingest(0, 0);
    ingest(1, 0);
    while (!found_any()) {
      const bool depth_left = trees_[0].depth() < budget.max_expansion_depth ||
                              trees_[1].depth() < budget.max_expansion_depth;
      if (!depth_left || visited() >= budget.max_visited) return;
      bool grew = false;
      for (int side = 0; side < 2; ++side) {
        ExpansionTree& tree = trees_[side];
        if (tree.depth() >= budget.max_expansion_depth || tree.exhausted()) continue;
        const std::size_t room =
            budget.max_visited > visited() ? budget.max_visited - visited() : 0;
        for (std::size_t idx : tree.grow(budget.max_term_size, tree.size() + room)) {
          ingest(side, idx);
          grew = true;
        }
      }
      if (!grew) return;
    }
  }

  std::size_t visited() const { return trees_[0].size() + trees_[1].size(); }
  const ExpansionTree& tree(int side) const { return trees_[side]; }

  bool found_any() const {
    return equivalent_.has_value() || left_less_.has_value() || right_less_.has_value() ||
           clash_.has_value();
  }

  std::optional<ConfluenceWitness> equivalence() const {
    if (!equivalent_) return std::nullopt;
    const auto [iu, iv] = *equivalent_;
    return ConfluenceWitness{trees_[0].path_to(iu), trees_[1].path_to(iv),
                             trees_[0].node(iu).term};
  }

  // side_greater = 1 gives u <_L v, side_greater = 0 gives v <_L u.
  std::optional<LeftDivisorWitness> divisor(int side_greater) const {
    const auto& hit = side_greater == 1 ? left_less_ : right_less_;
    if (!hit) return std::nullopt;
    const auto& greater = trees_[side_greater];
    const auto& lesser = trees_[1 - side_greater];
    LeftDivisorWitness w;
    w.expansion_of_greater = greater.path_to(hit->greater_node);
    w.prefix_length = hit->prefix_length;
    const Spine spine = left_spine(greater.node(hit->greater_node).term);
    w.factors.assign(spine.factors.begin() + static_cast<std::ptrdiff_t>(hit->prefix_length),
                     spine.factors.end());
    w.expansion_of_lesser = lesser.path_to(hit->lesser_node);
    return w;
  }

  std::optional<ClashWitness> clash() const {
    if (!clash_) return std::nullopt;
    const auto& c = *clash_;
    ClashWitness w;
    w.prefix = c.prefix;
    w.x = c.x;
    w.y = c.y;
    w.expansion_of_u = trees_[0].path_to(c.u_node);
    w.u_prefix_length = c.u_prefix;
    w.expansion_of_v = trees_[1].path_to(c.v_node);
    w.v_prefix_length = c.v_prefix;
    return w;
  }

 private:
  struct PrefixHit {
    std::size_t node;
    std::size_t prefix_length;
  };
  struct DivisorHit {
    std::size_t greater_node;
    std::size_t prefix_length;
    std::size_t lesser_node;
  };
  struct ClashHit {
    std::vector<Term> prefix;
    GeneratorId x, y;
    std::size_t u_node, u_prefix, v_node, v_prefix;
  };
  // Per prefix key: the first occurrence of each closing generator.
  using SignatureMap =
      std::unordered_map<PrefixKey, std::vector<std::pair<GeneratorId, PrefixHit>>, PrefixKeyHash>;

  void ingest(int side, std::size_t idx) {
    const int other = 1 - side;
    const Term& t = trees_[side].node(idx).term;

    if ((wanted_ & kWantEquivalent) && !equivalent_) {
      if (auto j = trees_[other].find(t)) {
        equivalent_ = side == 0 ? std::pair{idx, *j} : std::pair{*j, idx};
      }
    }

    const std::vector<Term> prefixes = spine_prefixes(t);
    const std::size_t m = prefixes.size() - 1;

    const bool want_div = (wanted_ & (kWantLeftLess | kWantRightLess)) != 0;
    if (want_div) {
      // t as a whole against proper prefixes of the other side.
      auto& as_lesser = side == 0 ? left_less_ : right_less_;
      if (!as_lesser && (wanted_ & (side == 0 ? kWantLeftLess : kWantRightLess))) {
        auto it = proper_prefixes_[other].find(t);
        if (it != proper_prefixes_[other].end())
          as_lesser = DivisorHit{it->second.node, it->second.prefix_length, idx};
      }
      // Proper prefixes of t against the other side as a whole.
      auto& as_greater = side == 1 ? left_less_ : right_less_;
      for (std::size_t i = 0; i < m; ++i) {
        proper_prefixes_[side].try_emplace(prefixes[i], PrefixHit{idx, i});
        if (!as_greater && (wanted_ & (side == 1 ? kWantLeftLess : kWantRightLess))) {
          if (auto j = trees_[other].find(prefixes[i])) as_greater = DivisorHit{idx, i, *j};
        }
      }
    }

    if ((wanted_ & kWantClash) && !clash_) {
      for (std::size_t i = 0; i <= m && !clash_; ++i) {
        auto [parts, g] = right_chain(prefixes[i]);
        PrefixKey key(std::move(parts));
        auto other_it = signatures_[other].find(key);
        if (other_it != signatures_[other].end()) {
          for (const auto& [h, hit] : other_it->second) {
            if (h == g) continue;
            ClashHit c{key.parts, g, h, idx, i, hit.node, hit.prefix_length};
            if (side == 1) {
              c = ClashHit{key.parts, h, g, hit.node, hit.prefix_length, idx, i};
            }
            clash_ = std::move(c);
            break;
          }
        }
        auto& mine = signatures_[side][key];
        const bool seen = std::any_of(mine.begin(), mine.end(),
                                      [&](const auto& e) { return e.first == g; });
        if (!seen) mine.emplace_back(g, PrefixHit{idx, i});
      }
    }
  }

  std::array<ExpansionTree, 2> trees_;
  unsigned wanted_;
  std::array<std::unordered_map<Term, PrefixHit, TermHash>, 2> proper_prefixes_;
  std::array<SignatureMap, 2> signatures_;
  std::optional<std::pair<std::size_t, std::size_t>> equivalent_;
  std::optional<DivisorHit> left_less_;   // u <_L v
  std::optional<DivisorHit> right_less_;  // v <_L u
  std::optional<ClashHit> clash_;
};

bool evaluations_differ(const LaverTable& table, const Term& u, const Term& v,
                        std::span<const Element> assignment) {
  return eval_term(table, u, assignment) != eval_term(table, v, assignment);
}

}  // namespace

// ---------------------------------------------------------------------------
// Table refutation

std::optional<TableWitness> table_refutation(const Term& u, const Term& v, unsigned max_level) {
  const std::uint32_t arity = std::max(u.arity(), v.arity());
  for (unsigned level = 1; level <= max_level; ++level) {
    const LaverTable& table = shared_table(level);
    const Element n = table.size();
    std::vector<Element> assignment(arity, 0);

    double combos = 1.0;
    for (std::uint32_t g = 0; g < arity; ++g) combos *= n;
    const bool exhaustive = level <= kExhaustiveRefutationLevel ||
                            combos <= static_cast<double>(kRefutationSamples);
    if (exhaustive && combos <= 1e7) {
      while (true) {
        if (evaluations_differ(table, u, v, assignment)) return TableWitness{level, assignment};
        // Odometer with the last generator fastest: lexicographic order.
        std::size_t g = arity;
        while (g > 0 && ++assignment[g - 1] == n) assignment[--g] = 0;
        if (g == 0) break;
      }
    } else {
      std::mt19937_64 rng(kRefutationSeed ^ level);
      std::uniform_int_distribution<Element> pick(0, n - 1);
      for (std::size_t s = 0; s < kRefutationSamples; ++s) {
        for (auto& a : assignment) a = pick(rng);
        if (evaluations_differ(table, u, v, assignment)) return TableWitness{level, assignment};
      }
    }
  }
  return std::nullopt;
}

bool check_table_witness(const Term& u, const Term& v, const TableWitness& w) {
  if (w.level == 0 || w.level > 16) return false;
  if (w.assignment.size() < std::max(u.arity(), v.arity())) return false;
  const LaverTable& table = shared_table(w.level);
  for (Element a : w.assignment)
    if (a >= table.size()) return false;
  return evaluations_differ(table, u, v, w.assignment);
}

// ---------------------------------------------------------------------------
// Expansion

ExpansionTree::ExpansionTree(Term root) {
  nodes_.push_back(Node{root, 0, RewriteStep{}, 0});
  index_.emplace(std::move(root), 0);
}

std::vector<std::size_t> ExpansionTree::grow(std::size_t max_term_size, std::size_t max_nodes) {
  std::vector<std::size_t> added;
  const std::size_t layer_end = nodes_.size();
  bool dropped = false;
  std::vector<std::pair<Position, Term>> successors;
  for (std::size_t i = layer_begin_; i < layer_end; ++i) {
    successors.clear();
    Position here;
    forward_successors(nodes_[i].term, here, successors);
    for (auto& [pos, next] : successors) {
      if (next.size() > max_term_size) {
        dropped = true;
        continue;
      }
      if (index_.contains(next)) continue;
      if (nodes_.size() >= max_nodes) {
        dropped = true;
        continue;
      }
      index_.emplace(next, nodes_.size());
      added.push_back(nodes_.size());
      nodes_.push_back(
          Node{std::move(next), i, RewriteStep{std::move(pos), Rule::LD, Direction::Forward},
               depth_ + 1});
    }
  }
  layer_begin_ = layer_end;
  ++depth_;
  truncated_ = truncated_ || dropped;
  exhausted_ = added.empty() && !dropped;
  return added;
}

std::optional<std::size_t> ExpansionTree::find(const Term& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

RewritePath ExpansionTree::path_to(std::size_t i) const {
  RewritePath path;
  while (i != 0) {
    path.push_back(nodes_[i].step);
    i = nodes_[i].parent;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

Frontier expand_frontier(const Term& t, std::size_t depth, const Budget& budget) {
  ExpansionTree tree(t);
  while (tree.depth() < depth && !tree.exhausted()) tree.grow(budget.max_term_size, budget.max_visited);
  Frontier out;
  out.truncated = tree.truncated();
  out.terms.reserve(tree.size());
  for (std::size_t i = 0; i < tree.size(); ++i) out.terms.push_back(tree.node(i).term);
  return out;
}

// ---------------------------------------------------------------------------
// Decisions

std::string_view outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Confirmed: return "Confirmed";
    case Outcome::Refuted: return "Refuted";
    case Outcome::Unknown: return "Unknown";
  }
  return "?";
}

std::string_view verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::Equivalent: return "Equivalent";
    case VerdictKind::LeftLess: return "LeftLess";
    case VerdictKind::RightLess: return "RightLess";
    case VerdictKind::Clash: return "Clash";
    case VerdictKind::Unknown: return "Unknown";
  }
  return "?";
}

EquivalenceResult decide_equivalence(const Term& u, const Term& v, const Budget& budget) {
  EquivalenceResult result;
  if (u == v) {
    result.outcome = Outcome::Confirmed;
    result.confluence = ConfluenceWitness{{}, {}, u};
    return result;
  }
  if (auto w = table_refutation(u, v, budget.max_table_level)) {
    result.outcome = Outcome::Refuted;
    result.refutation = std::move(w);
    return result;
  }
  PairSearch search(u, v, kWantEquivalent);
  search.run(budget);
  if (auto c = search.equivalence()) {
    result.outcome = Outcome::Confirmed;
    result.confluence = std::move(c);
  }
  return result;
}

LeftDivisibilityResult decide_left_divisibility(const Term& u, const Term& v,
                                                const Budget& budget) {
  LeftDivisibilityResult result;
  if (u == v) {
    result.outcome = Outcome::Refuted;
    result.refuted_by = RefutationReason::Identical;
    return result;
  }
  PairSearch search(u, v, kWantEquivalent | kWantLeftLess);
  search.run(budget);
  // <_L is irreflexive on LD-classes, so an equivalence rules it out.
  if (auto c = search.equivalence()) {
    result.outcome = Outcome::Refuted;
    result.refuted_by = RefutationReason::Equivalent;
    result.confluence = std::move(c);
  } else if (auto w = search.divisor(1)) {
    result.outcome = Outcome::Confirmed;
    result.witness = std::move(w);
  }
  return result;
}

std::optional<Term> ClashWitness::prefix_term() const {
  if (prefix.empty()) return std::nullopt;
  Term p = prefix.front();
  for (std::size_t i = 1; i < prefix.size(); ++i) p = Term::compose(p, prefix[i]);
  return p;
}

ClashResult find_clash(const Term& u, const Term& v, const Budget& budget) {
  ClashResult result;
  PairSearch search(u, v, kWantClash);
  search.run(budget);
  if (auto w = search.clash()) {
    result.outcome = Outcome::Confirmed;
    result.witness = std::move(w);
  }
  return result;
}

QuadrichotomyVerdict classify_pair(const Term& u, const Term& v, const Budget& budget) {
  QuadrichotomyVerdict verdict;
  PairSearch search(u, v, kWantAll);
  search.run(budget);
  verdict.visited = search.visited();
  if (auto c = search.equivalence()) {
    verdict.kind = VerdictKind::Equivalent;
    verdict.equivalence = std::move(c);
  } else if (auto d = search.divisor(1)) {
    verdict.kind = VerdictKind::LeftLess;
    verdict.divisor = std::move(d);
  } else if (auto e = search.divisor(0)) {
    verdict.kind = VerdictKind::RightLess;
    verdict.divisor = std::move(e);
  } else if (auto w = search.clash()) {
    verdict.kind = VerdictKind::Clash;
    verdict.clash = std::move(w);
  } else {
    verdict.refutation = table_refutation(u, v, budget.max_table_level);
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// Verification

bool is_forward_ld_path(const RewritePath& path) {
  return std::all_of(path.begin(), path.end(), [](const RewriteStep& s) {
    return s.rule == Rule::LD && s.direction == Direction::Forward;
  });
}

namespace {

std::optional<Term> replay_forward(const Term& t, const RewritePath& path) {
  if (!is_forward_ld_path(path)) return std::nullopt;
  try {
    return replay(t, path);
  } catch (const RewriteError&) {
    return std::nullopt;
  }
}

}  // namespace

bool verify_confluence(const Term& u, const Term& v, const ConfluenceWitness& w) {
  auto eu = replay_forward(u, w.from_u);
  auto ev = replay_forward(v, w.from_v);
  return eu && ev && *eu == *ev && *eu == w.common;
}

bool verify_left_divisor(const Term& lesser, const Term& greater, const LeftDivisorWitness& w) {
  auto expanded = replay_forward(greater, w.expansion_of_greater);
  auto lesser_expanded = replay_forward(lesser, w.expansion_of_lesser);
  if (!expanded || !lesser_expanded) return false;
  const Spine spine = left_spine(*expanded);
  if (w.prefix_length >= spine.factors.size()) return false;
  const std::span<const Term> all(spine.factors);
  if (refold(spine.head, all.first(w.prefix_length)) != *lesser_expanded) return false;
  const auto rest = all.subspan(w.prefix_length);
  return std::equal(rest.begin(), rest.end(), w.factors.begin(), w.factors.end());
}

bool verify_clash(const Term& u, const Term& v, const ClashWitness& w) {
  if (w.x == w.y) return false;
  auto check_side = [&](const Term& t, const RewritePath& path, std::size_t prefix_length,
                        GeneratorId g) {
    auto expanded = replay_forward(t, path);
    if (!expanded) return false;
    const Spine spine = left_spine(*expanded);
    if (prefix_length > spine.factors.size()) return false;
    Term q = Term::generator(g);
    for (auto it = w.prefix.rbegin(); it != w.prefix.rend(); ++it) q = Term::apply(*it, q);
    return refold(spine.head, std::span<const Term>(spine.factors).first(prefix_length)) == q;
  };
  return check_side(u, w.expansion_of_u, w.u_prefix_length, w.x) &&
         check_side(v, w.expansion_of_v, w.v_prefix_length, w.y);
}

bool verify_verdict(const Term& u, const Term& v, const QuadrichotomyVerdict& verdict) {
  switch (verdict.kind) {
    case VerdictKind::Equivalent:
      return verdict.equivalence && verify_confluence(u, v, *verdict.equivalence);
    case VerdictKind::LeftLess:
      return verdict.divisor && verify_left_divisor(u, v, *verdict.divisor);
    case VerdictKind::RightLess:
      return verdict.divisor && verify_left_divisor(v, u, *verdict.divisor);
    case VerdictKind::Clash:
      return verdict.clash && verify_clash(u, v, *verdict.clash);
    case VerdictKind::Unknown:
      return !verdict.refutation || check_table_witness(u, v, *verdict.refutation);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Oracle

LdClosure ld_closure(const Term& t, std::size_t size_bound, std::size_t max_terms) {
  LdClosure closure;
  std::deque<Term> queue{t};
  closure.terms.insert(t);
  std::vector<Term> next;
  while (!queue.empty()) {
    Term cur = std::move(queue.front());
    queue.pop_front();
    next.clear();
    ld_neighbours(cur, next);
    for (Term& n : next) {
      if (n.size() > size_bound) {
        closure.truncated = true;
        continue;
      }
      if (closure.terms.contains(n)) continue;
      if (closure.terms.size() >= max_terms) {
        closure.truncated = true;
        continue;
      }
      closure.terms.insert(n);
      queue.push_back(std::move(n));
    }
  }
  return closure;
}

OracleAnswer brute_force_equivalence(const Term& u, const Term& v, std::size_t size_bound) {
  if (u == v) return OracleAnswer::Equivalent;
  const LdClosure closure = ld_closure(u, size_bound);
  if (closure.terms.contains(v)) return OracleAnswer::Equivalent;
  return closure.truncated ? OracleAnswer::Unknown : OracleAnswer::Inequivalent;
}

}  // namespace ldforge

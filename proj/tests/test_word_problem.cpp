#include <doctest.h>

#include <random>

#include "ldforge/word_problem.hpp"

using namespace ldforge;

namespace {

Term random_a_term(std::mt19937_64& rng, std::size_t size) {
  if (size == 1) return gen(static_cast<std::uint32_t>(rng() % 2));
  const std::size_t left = 1 + rng() % (size - 1);
  return random_a_term(rng, left) * random_a_term(rng, size - left);
}

Term t(const char* s) { return parse_term(s); }

}  // namespace

TEST_CASE("table refutation finds the least level") {
  const auto w = table_refutation(t("x"), t("x x"), 4);
  REQUIRE(w);
  CHECK(w->level == 1);
  CHECK(w->assignment == std::vector<Element>{1});
  CHECK(check_table_witness(t("x"), t("x x"), *w));
  const auto xy = table_refutation(t("x"), t("y"), 4);
  REQUIRE(xy);
  CHECK(xy->level == 1);
  CHECK(xy->assignment == std::vector<Element>{0, 1});
  CHECK_FALSE(table_refutation(t("x (y y)"), t("x y (x y)"), 4));
  TableWitness bogus{2, {0, 0}};
  CHECK_FALSE(check_table_witness(t("x"), t("y"), bogus));
}

TEST_CASE("expansion frontier") {
  const Frontier f = expand_frontier(t("x (y y)"), 1, Budget{});
  REQUIRE(f.terms.size() == 2);
  CHECK(f.terms[0] == t("x (y y)"));
  CHECK(f.terms[1] == t("x y (x y)"));
  CHECK_FALSE(f.truncated);
  CHECK(expand_frontier(t("x y"), 3, Budget{}).terms.size() == 1);
}

TEST_CASE("expansion tree paths replay") {
  ExpansionTree tree(t("x (x (x y))"));
  for (int i = 0; i < 3; ++i) tree.grow(40, 1000);
  for (std::size_t i = 0; i < tree.size(); ++i) {
    const RewritePath p = tree.path_to(i);
    CHECK(p.size() == tree.node(i).depth);
    CHECK(is_forward_ld_path(p));
    CHECK(replay(tree.node(0).term, p) == tree.node(i).term);
  }
}

TEST_CASE("classify examples") {
  const Budget b;
  const auto eq = classify_pair(t("x (y y)"), t("(x y) (x y)"), b);
  CHECK(eq.kind == VerdictKind::Equivalent);
  CHECK(verify_verdict(t("x (y y)"), t("(x y) (x y)"), eq));

  const auto less = classify_pair(t("x"), t("x y"), b);
  CHECK(less.kind == VerdictKind::LeftLess);
  CHECK(verify_verdict(t("x"), t("x y"), less));

  const auto more = classify_pair(t("x y"), t("x"), b);
  CHECK(more.kind == VerdictKind::RightLess);
  CHECK(verify_verdict(t("x y"), t("x"), more));

  const auto clash = classify_pair(t("x"), t("y"), b);
  CHECK(clash.kind == VerdictKind::Clash);
  CHECK(verify_verdict(t("x"), t("y"), clash));
  REQUIRE(clash.clash);
  CHECK_FALSE(clash.clash->prefix_term());

  const auto deep = classify_pair(t("x x"), t("x y"), b);
  CHECK(deep.kind == VerdictKind::Clash);
  CHECK(verify_verdict(t("x x"), t("x y"), deep));
}

TEST_CASE("left divisibility needs expansion") {
  // x <_L x(yy) only after expanding to (xy)(xy)
  const auto r = decide_left_divisibility(t("x y"), t("x (y y)"), Budget{});
  REQUIRE(r.outcome == Outcome::Confirmed);
  CHECK_FALSE(r.witness->expansion_of_greater.empty());
  CHECK(verify_left_divisor(t("x y"), t("x (y y)"), *r.witness));
}

TEST_CASE("irreflexivity") {
  const auto same = decide_left_divisibility(t("x y x"), t("x y x"), Budget{});
  CHECK(same.outcome == Outcome::Refuted);
  CHECK(same.refuted_by == RefutationReason::Identical);
  const auto eq = decide_left_divisibility(t("x (y y)"), t("x y (x y)"), Budget{});
  CHECK(eq.outcome == Outcome::Refuted);
  CHECK(eq.refuted_by == RefutationReason::Equivalent);
}

TEST_CASE("tampered witnesses fail verification") {
  const Term u = t("x (y y)"), v = t("(x y) (x y)");
  auto verdict = classify_pair(u, v, Budget{});
  REQUIRE(verdict.equivalence);
  verdict.equivalence->common = t("x");
  CHECK_FALSE(verify_verdict(u, v, verdict));

  auto less = classify_pair(t("x"), t("x y"), Budget{});
  REQUIRE(less.divisor);
  less.divisor->factors = {t("x")};
  CHECK_FALSE(verify_verdict(t("x"), t("x y"), less));
}

TEST_CASE("budget exhaustion is Unknown") {
  const Budget tiny{1, 6, 4, 0};
  const auto v = classify_pair(t("x (x (x (x y)))"), t("x x (x x) (x (x y))"), tiny);
  if (v.kind != VerdictKind::Unknown) CHECK(verify_verdict(t("x (x (x (x y)))"), t("x x (x x) (x (x y))"), v));
  // two forward steps apart
  const auto e = decide_equivalence(t("x (x (x y))"), t("x x (x x (x y))"), tiny);
  CHECK(e.outcome == Outcome::Unknown);
  CHECK(decide_equivalence(t("x (x (x y))"), t("x x (x x (x y))"), Budget{}).outcome ==
        Outcome::Confirmed);
}

TEST_CASE("closure oracle") {
  CHECK(brute_force_equivalence(t("x (y y)"), t("x y (x y)"), 6) == OracleAnswer::Equivalent);
  CHECK(brute_force_equivalence(t("x y"), t("y x"), 5) == OracleAnswer::Inequivalent);
  const auto closure = ld_closure(t("x (y y)"), 4);
  CHECK(closure.terms.count(t("x y (x y)")) == 1);
}

TEST_CASE("random pairs agree with the oracle and re-check") {
  std::mt19937_64 rng(99);
  const Budget b;
  for (int i = 0; i < 150; ++i) {
    const Term u = random_a_term(rng, 1 + rng() % 5);
    const Term v = random_a_term(rng, 1 + rng() % 5);
    const auto verdict = classify_pair(u, v, b);
    CHECK(verify_verdict(u, v, verdict));
    const auto oracle = brute_force_equivalence(u, v, 8);
    if (oracle == OracleAnswer::Equivalent) CHECK(verdict.kind != VerdictKind::Clash);
    if (oracle == OracleAnswer::Equivalent) CHECK(verdict.kind != VerdictKind::LeftLess);
    if (oracle == OracleAnswer::Inequivalent) CHECK(verdict.kind != VerdictKind::Equivalent);
  }
}

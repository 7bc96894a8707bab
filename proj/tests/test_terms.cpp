#include <doctest.h>

#include <random>
#include <unordered_set>

#include "ldforge/term.hpp"

using namespace ldforge;

namespace {

Term random_term(std::mt19937_64& rng, std::size_t size, std::uint32_t arity, bool compose) {
  if (size == 1) return gen(static_cast<std::uint32_t>(rng() % arity));
  const std::size_t left = 1 + rng() % (size - 1);
  Term l = random_term(rng, left, arity, compose);
  Term r = random_term(rng, size - left, arity, compose);
  if (compose && rng() % 3 == 0) return Term::compose(l, r);
  return l * r;
}

}  // namespace

TEST_CASE("parse and render basic terms") {
  CHECK(render_term(parse_term("x")) == "x");
  CHECK(parse_term("x y g2", 3) == (gen(0) * gen(1)) * gen(2));
  CHECK(parse_term("x (y y)") == gen(0) * (gen(1) * gen(1)));
  CHECK(render_term(parse_term("(x y)(x y)")) == "x y (x y)");
  CHECK(render_term(parse_term("((x y) x)")) == "x y x");
  CHECK(parse_term("  x   y ") == gen(0) * gen(1));
  CHECK(parse_term("g2 x", 3) == gen(2) * gen(0));
}

TEST_CASE("composition syntax") {
  const Term c = Term::compose(gen(0), gen(1));
  CHECK(parse_term("(x o y)") == c);
  CHECK(parse_term("x o y") == c);
  CHECK(render_term(c) == "x o y");
  CHECK(render_term(gen(0) * c) == "x (x o y)");
  CHECK(render_term(c * gen(0)) == "(x o y) x");
  CHECK_FALSE(c.is_a_term());
  CHECK(parse_term("x (x o y)") == gen(0) * c);
}

TEST_CASE("parse errors carry offsets") {
  CHECK_THROWS_AS(parse_term(""), ParseError);
  CHECK_THROWS_AS(parse_term("x )"), ParseError);
  CHECK_THROWS_AS(parse_term("(x y"), ParseError);
  CHECK_THROWS_AS(parse_term("x o y o x"), ParseError);
  CHECK_THROWS_AS(parse_term("g2", 2), ParseError);
  try {
    parse_term("x q");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 2);
  }
}

TEST_CASE("size, arity and hashing") {
  const Term t = parse_term("x (y x) y");
  CHECK(t.size() == 4);
  CHECK(t.arity() == 2);
  CHECK(t.is_a_term());
  CHECK(parse_term("x x").arity() == 1);
  CHECK(t.hash() == parse_term("x (y x) y").hash());
  CHECK(t != parse_term("x (y x) x"));
}

TEST_CASE("left spine and refold") {
  const Term t = parse_term("x (y y) x y");
  const Spine s = left_spine(t);
  CHECK(s.head == gen(0));
  REQUIRE(s.factors.size() == 3);
  CHECK(s.factors[0] == parse_term("y y"));
  CHECK(refold(s.head, s.factors) == t);
  CHECK(refold(s.head, std::span(s.factors).first(1)) == parse_term("x (y y)"));
  CHECK(leftmost_generator(parse_term("y x x")).index == 1);
}

TEST_CASE("a-term enumeration counts are Catalan times 2^n") {
  // C(n-1) * 2^n for n leaves over two generators
  const std::size_t expected[] = {0, 2, 4, 16, 80, 448};
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto terms = enumerate_a_terms(n, 2);
    CHECK(terms.size() == expected[n]);
    std::unordered_set<Term, TermHash> distinct(terms.begin(), terms.end());
    CHECK(distinct.size() == terms.size());
    for (const Term& t : terms) CHECK(t.size() == n);
  }
}

TEST_CASE("render then parse round-trips on random terms") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 500; ++i) {
    const Term t = random_term(rng, 1 + rng() % 12, 3, i % 2 == 1);
    CHECK(parse_term(render_term(t), 3) == t);
  }
}
